#pragma once

// Time reconstructions of a discrete trajectory:
//   u(t) = u^m,  p(t) = p^m                        on [t_{m-1}, t_m)
//   v(t) = u^{m-1} + (t - t_{m-1})/kappa (u^m - u^{m-1})  on [t_{m-1}, t_m)
// with u(T) = v(T) = u^M and p(T) = p^M.

#include <algorithm>
#include <cmath>

#include "nsv/stepper.hpp"

namespace nsv {

class Interpolants {
 public:
  explicit Interpolants(const DiscreteTrajectory& traj) : traj_(&traj) {}

  const DiscreteTrajectory& trajectory() const { return *traj_; }

  /// Index m with t in [t_{m-1}, t_m), clamped to 1..M.
  int interval(double t) const {
    const int M = traj_->params.M;
    const int m = static_cast<int>(std::floor(t / traj_->kappa())) + 1;
    return std::clamp(m, 1, M);
  }

  const SpectralVelocity& u(double t) const { return traj_->states[static_cast<std::size_t>(interval(t))]; }

  const SpectralScalar& p(double t) const { return traj_->pressure(interval(t)); }

  SpectralVelocity v(double t) const {
    if (t >= traj_->params.T) return traj_->states.back();
    const int m = interval(t);
    const double s = std::clamp((t - traj_->time(m - 1)) / traj_->kappa(), 0.0, 1.0);
    const auto& prev = traj_->states[static_cast<std::size_t>(m - 1)];
    const auto& next = traj_->states[static_cast<std::size_t>(m)];
    return (1.0 - s) * prev + s * next;
  }

  /// d v / d t on the open interval containing t.
  SpectralVelocity dv_dt(double t) const {
    const int m = interval(t);
    return (1.0 / traj_->kappa()) *
           (traj_->states[static_cast<std::size_t>(m)] - traj_->states[static_cast<std::size_t>(m - 1)]);
  }

 private:
  const DiscreteTrajectory* traj_;
};

}  // namespace nsv
