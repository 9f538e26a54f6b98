#ifndef KARCHER_CONE_ERRORS_HPP
#define KARCHER_CONE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace karcher_cone {

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSquare : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotPositiveDefinite : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SingularCongruence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidMeasure : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EigenFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by operations that need a converged Karcher mean to continue.
class NotConverged : public std::runtime_error {
 public:
  NotConverged(const std::string& what, double residual, int iterations)
      : std::runtime_error(what), residual_(residual), iterations_(iterations) {}

  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  double residual_;
  int iterations_;
};

}  // namespace karcher_cone

#endif  // KARCHER_CONE_ERRORS_HPP
