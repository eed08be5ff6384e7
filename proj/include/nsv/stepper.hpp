#pragma once

// Fully discrete scheme: implicit Euler in time, Fourier-Galerkin in space,
// viscosity 1, no forcing.  For each 0 < |k| <= n one step solves
//
//   (1 + a^2|k|^2 + kappa|k|^2) u_k = (1 + a^2|k|^2) prev_k - kappa [P_n((u.grad)u)]_k
//
// by diagonally preconditioned Picard iteration started from prev.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "nsv/nonlinearity.hpp"
#include "nsv/pressure.hpp"

namespace nsv {

struct SchemeParams {
  int n = 4;
  int M = 8;
  double T = 0.5;
  double alpha = 0.5;
  double picard_tol = 1e-12;
  int picard_max_iter = 200;

  double kappa() const { return T / M; }
  TruncationBall ball() const { return {n}; }

  void validate() const {
    if (n < 1) throw std::invalid_argument("n must be positive");
    if (M < 1) throw std::invalid_argument("M must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be nonnegative");
    if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be positive");
    if (picard_max_iter < 1) throw std::invalid_argument("picard_max_iter must be positive");
  }
};

struct StepResult {
  SpectralVelocity state;
  int iterations = 0;
  double residual = 0.0;
};

namespace detail {

struct StepOperator {
  double alpha_sq;
  double kappa;
  double mass(const WaveVector& k) const { return 1.0 + alpha_sq * double(k.norm_sq()); }
  double diagonal(const WaveVector& k) const { return mass(k) + kappa * double(k.norm_sq()); }
};

/// ||D^{-1} (D u - B prev + kappa P_n N(u))|| / ||prev|| in canonical l^2,
/// given N = P_n N(u) already evaluated.
inline double preconditioned_residual(const SpectralVelocity& prev, const SpectralVelocity& u,
                                      const SpectralVelocity& nonlinear, const StepOperator& op) {
  double num = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& k = u.mode(i);
    const double d = op.diagonal(k);
    const double b = op.mass(k);
    for (int c = 0; c < 3; ++c) {
      num += std::norm((d * u[i][c] - b * prev[i][c] + op.kappa * nonlinear[i][c]) / d);
    }
  }
  if (num == 0.0) return 0.0;
  const double scale = coefficient_l2(prev.field());
  return std::sqrt(num) / (scale > 0.0 ? scale : 1.0);
}

}  // namespace detail

/// Scaled residual of the discrete equations for a candidate pair (prev, next).
inline double scheme_residual(const SpectralVelocity& prev, const SpectralVelocity& next,
                              const SchemeParams& params) {
  const detail::StepOperator op{params.alpha * params.alpha, params.kappa()};
  return detail::preconditioned_residual(prev, next, galerkin_convective(next), op);
}

/// One implicit Euler step from prev.  Throws NonlinearSolveFailed when the
/// Picard residual is still above picard_tol after picard_max_iter updates.
inline StepResult euler_step(const SpectralVelocity& prev, const SchemeParams& params) {
  if (prev.n() != params.n) throw std::invalid_argument("previous state is not in V_n");
  const detail::StepOperator op{params.alpha * params.alpha, params.kappa()};

  StepResult out{prev, 0, 0.0};
  for (;;) {
    const SpectralVelocity nonlinear = galerkin_convective(out.state);
    out.residual = detail::preconditioned_residual(prev, out.state, nonlinear, op);
    if (out.residual <= params.picard_tol) return out;
    if (out.iterations >= params.picard_max_iter || !std::isfinite(out.residual)) {
      throw NonlinearSolveFailed(out.iterations, out.residual);
    }
    SpectralVector next(params.n);
    for (std::size_t i = 0; i < next.size(); ++i) {
      const auto& k = next.mode(i);
      const double d = op.diagonal(k);
      const double b = op.mass(k);
      for (int c = 0; c < 3; ++c) next[i][c] = (b * prev[i][c] - op.kappa * nonlinear[i][c]) / d;
    }
    out.state = SpectralVelocity::assume_solenoidal(std::move(next));
    ++out.iterations;
  }
}

/// Norms of the datum before the Galerkin projection.
struct DatumRecord {
  double raw_l2_sq = 0.0;
  double raw_h1_sq = 0.0;
  double projection_gap = 0.0;  // ||(I - P_n) u0||_2
};

struct DiscreteTrajectory {
  SchemeParams params;
  std::vector<SpectralVelocity> states;    // m = 0..M
  std::vector<SpectralScalar> pressures;   // m = 1..M, stored at index m - 1
  std::vector<int> picard_iters;           // m = 1..M, index m - 1
  std::vector<double> picard_residuals;    // m = 1..M, index m - 1
  DatumRecord datum;

  double kappa() const { return params.kappa(); }
  double time(int m) const { return m * params.kappa(); }
  const SpectralScalar& pressure(int m) const { return pressures.at(static_cast<std::size_t>(m - 1)); }
};

inline DatumRecord record_datum(const SpectralVelocity& u0, int n) {
  DatumRecord r;
  r.raw_l2_sq = l2_norm_sq(u0);
  r.raw_h1_sq = h1_seminorm_sq(u0);
  const int big = std::max(u0.n(), n);
  const auto projected = u0.resized(n).resized(big);
  r.projection_gap = std::sqrt(l2_norm_sq(u0.resized(big).field() - projected.field()));
  return r;
}

/// Recomputes the per-step pressures of a trajectory whose states are set.
inline void attach_pressures(DiscreteTrajectory& traj) {
  traj.pressures.clear();
  for (std::size_t m = 1; m < traj.states.size(); ++m) traj.pressures.push_back(solve_pressure(traj.states[m]));
}

/// Integrates M steps from P_n u0.
inline DiscreteTrajectory run(const SpectralVelocity& u0, const SchemeParams& params) {
  params.validate();
  DiscreteTrajectory traj;
  traj.params = params;
  traj.datum = record_datum(u0, params.n);
  traj.states.reserve(static_cast<std::size_t>(params.M) + 1);
  traj.states.push_back(galerkin_truncate(u0.field(), params.ball()));
  for (int m = 1; m <= params.M; ++m) {
    StepResult step;
    try {
      step = euler_step(traj.states.back(), params);
    } catch (const NonlinearSolveFailed& e) {
      throw NonlinearSolveFailed(e.iterations, e.residual, m);
    }
    traj.picard_iters.push_back(step.iterations);
    traj.picard_residuals.push_back(step.residual);
    traj.states.push_back(std::move(step.state));
  }
  attach_pressures(traj);
  return traj;
}

}  // namespace nsv
