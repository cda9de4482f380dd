#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ringchain {

/// Rejected input: a precondition of a public operation does not hold.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The raw secular determinant cannot be formed without overflow; callers
/// must fall back to the closed forms.
class OverflowGuard : public std::range_error {
 public:
  using std::range_error::range_error;
};

/// An analytically guaranteed crossing could not be bracketed. Carries the
/// scanned profile (abscissa, value) so the failure can be inspected.
class SolverError : public std::runtime_error {
 public:
  struct Sample {
    double x;
    double value;
  };

  SolverError(const std::string& what, std::vector<Sample> profile = {})
      : std::runtime_error(what), profile_(std::move(profile)) {}

  const std::vector<Sample>& profile() const noexcept { return profile_; }

 private:
  std::vector<Sample> profile_;
};

/// A numerical witness of an auxiliary inequality missed its tolerance.
class WitnessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ringchain
