#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nsv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical grid cannot represent the requested fields without aliasing.
class GridTooSmall : public Error {
 public:
  GridTooSmall(std::size_t grid, std::size_t required)
      : Error("grid size " + std::to_string(grid) + " is below the required " +
              std::to_string(required)),
        grid_size(grid),
        required_size(required) {}
  std::size_t grid_size;
  std::size_t required_size;
};

/// Coefficients handed to a SpectralVelocity violate k . u_k = 0.
class NotSolenoidal : public Error {
 public:
  explicit NotSolenoidal(double defect)
      : Error("field is not divergence-free (max |k.u_k| = " + std::to_string(defect) + ")"),
        max_defect(defect) {}
  double max_defect;
};

/// Picard iteration for the implicit Euler step did not reach the tolerance.
class NonlinearSolveFailed : public Error {
 public:
  NonlinearSolveFailed(int iters, double res, int step_index = -1, std::string context = {})
      : Error(describe(iters, res, step_index, context)),
        iterations(iters),
        residual(res),
        step(step_index) {}
  int iterations;
  double residual;
  int step;

 private:
  static std::string describe(int iters, double res, int step_index, const std::string& ctx) {
    std::string s = "Picard iteration failed after " + std::to_string(iters) +
                    " iterations (residual " + std::to_string(res) + ")";
    if (step_index >= 0) s += " at step m=" + std::to_string(step_index);
    if (!ctx.empty()) s += " [" + ctx + "]";
    return s + "; reduce the time step (increase M)";
  }
};

/// A sweep schedule does not satisfy the coupling n * alpha_n^3 -> 0 monotonically.
class ScheduleViolation : public Error {
 public:
  using Error::Error;
};

/// Grid quadrature of a fractional L^p norm did not settle under grid doubling.
class QuadratureUnresolved : public Error {
 public:
  QuadratureUnresolved(double coarse, double fine, double tol)
      : Error("L^p quadrature unresolved: " + std::to_string(coarse) + " vs " +
              std::to_string(fine) + " (tolerance " + std::to_string(tol) + ")"),
        coarse_value(coarse),
        fine_value(fine),
        tolerance(tol) {}
  double coarse_value;
  double fine_value;
  double tolerance;
};

/// Test function takes negative values on the verification grid.
class PhiNotNonnegative : public Error {
 public:
  explicit PhiNotNonnegative(double min_value)
      : Error("test function is negative somewhere (min " + std::to_string(min_value) + ")"),
        minimum(min_value) {}
  double minimum;
};

/// Malformed snapshot, config or test-function spec.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace nsv
