#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rgd {

// Bad arguments, dimension mismatches, unsupported matrix structure.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A random draw was numerically unusable (rank loss, empty null-space component).
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The dense singular-value routine refuses inputs above its size limit.
class SizeGuardError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A projection denominator vanished while its numerator did not.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CGLS ran out of iterations before meeting its tolerance.
class SubsolverError : public std::runtime_error {
 public:
  SubsolverError(const std::string& what, std::size_t iterations, double relative_residual)
      : std::runtime_error(what), iterations_(iterations), relative_residual_(relative_residual) {}

  std::size_t iterations() const noexcept { return iterations_; }
  double relative_residual() const noexcept { return relative_residual_; }

 private:
  std::size_t iterations_;
  double relative_residual_;
};

}  // namespace rgd
