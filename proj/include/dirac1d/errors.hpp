#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dirac1d {

/// Base class for every error this library raises on purpose.
class error : public std::runtime_error {
public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad user input: out-of-domain parameters, malformed potential
/// descriptions, unusable energies. Maps to CLI exit code 2.
class input_error : public error {
public:
  explicit input_error(const std::string& msg) : error(msg) {}
};

/// Energy sits exactly on a kinematic threshold |E - V| = m where the
/// scattering formulas are singular.
class threshold_error : public input_error {
public:
  explicit threshold_error(const std::string& msg) : input_error(msg) {}
};

/// The incident-side asymptotic region has no propagating channel.
class no_channel_error : public input_error {
public:
  explicit no_channel_error(const std::string& msg) : input_error(msg) {}
};

/// Normalization factor would divide by zero (threshold mode).
class normalization_error : public input_error {
public:
  explicit normalization_error(const std::string& msg) : input_error(msg) {}
};

/// A segment list failed validation; carries the offending segment index.
class validation_error : public input_error {
public:
  validation_error(const std::string& msg, std::size_t index)
      : input_error(msg), segment_index(index) {}
  std::size_t segment_index;
};

/// Parameters outside the operation's physical domain.
class domain_error : public input_error {
public:
  explicit domain_error(const std::string& msg) : input_error(msg) {}
};

/// Numerical failure (ill-conditioned cascade, unresolved event ordering).
/// Maps to CLI exit code 3. Carries a diagnostic value when available.
class numeric_error : public error {
public:
  explicit numeric_error(const std::string& msg, double diag = 0.0)
      : error(msg), diagnostic(diag) {}
  double diagnostic;
};

}  // namespace dirac1d
