#pragma once

// Level sweeps under the coupling n alpha_n^3 -> 0 and cross-level
// Cauchy metrics.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "nsv/diagnostics.hpp"
#include "nsv/parallel.hpp"

namespace nsv {

struct Level {
  int n = 4;
  int M = 4;
  double alpha = 0.5;

  double coupling() const { return n * alpha * alpha * alpha; }
};

/// alpha_n = n^{-p}.  With p = 1/3 + 1/12 one gets n alpha_n^3 = n^{-1/4}.
inline constexpr double kDefaultAlphaExponent = 1.0 / 3.0 + 1.0 / 12.0;

inline void validate_schedule(const std::vector<Level>& levels) {
  if (levels.empty()) throw ScheduleViolation("schedule has no levels");
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    if (l.n < 1 || l.M < 1) throw ScheduleViolation("level " + std::to_string(i) + ": n and M must be positive");
    if (!(l.alpha > 0.0 && l.alpha < 1.0)) {
      throw ScheduleViolation("level " + std::to_string(i) + ": alpha must lie in (0, 1)");
    }
    if (i == 0) continue;
    const auto& p = levels[i - 1];
    if (l.n <= p.n) throw ScheduleViolation("n must increase strictly across levels");
    if (l.alpha >= p.alpha) throw ScheduleViolation("alpha must decrease strictly across levels");
    if (l.M < p.M) throw ScheduleViolation("M must not decrease across levels");
    if (l.coupling() >= p.coupling()) {
      throw ScheduleViolation("n alpha^3 must decrease strictly across levels (level " + std::to_string(i) + ")");
    }
  }
}

inline std::vector<Level> default_schedule(const std::vector<int>& n_list, double alpha_exponent = kDefaultAlphaExponent,
                                           int steps_per_n = 1) {
  std::vector<Level> levels;
  for (int n : n_list) levels.push_back({n, steps_per_n * n, std::pow(double(n), -alpha_exponent)});
  validate_schedule(levels);
  return levels;
}

struct SweepPlan {
  std::vector<Level> levels;
  DatumSpec datum;
  double T = 0.5;
  std::vector<TestFunction> phis;
  std::string output_dir;
  double picard_tol = 1e-12;
  int picard_max_iter = 200;
  int gauss_order = 6;

  SchemeParams params(const Level& l) const { return {l.n, l.M, T, l.alpha, picard_tol, picard_max_iter}; }

  void validate() const {
    validate_schedule(levels);
    for (const auto& l : levels) params(l).validate();
    for (const auto& phi : phis) phi.validate(T);
  }
};

struct LevelResult {
  Level level;
  DiscreteTrajectory trajectory;
  DiagnosticsReport report;
};

/// L^2((0,T) x T^3) distances between consecutive levels.
struct CauchyMetric {
  int coarse_n = 0;
  int fine_n = 0;
  double u = 0.0;  // piecewise-constant interpolants
  double v = 0.0;  // piecewise-linear interpolants
};

namespace detail {

inline std::vector<double> merged_net(const DiscreteTrajectory& a, const DiscreteTrajectory& b) {
  std::vector<double> t;
  for (int m = 0; m <= a.params.M; ++m) t.push_back(a.time(m));
  for (int m = 0; m <= b.params.M; ++m) t.push_back(b.time(m));
  std::sort(t.begin(), t.end());
  const double eps = 1e-14 * std::max(a.params.T, b.params.T);
  t.erase(std::unique(t.begin(), t.end(), [eps](double x, double y) { return std::abs(x - y) <= eps; }), t.end());
  return t;
}

}  // namespace detail

/// Both interpolants are zero-extended into the larger ball.  On each cell
/// of the merged time net u is constant (midpoint sample) and v is linear,
/// so a two-point Gauss rule is exact.
inline CauchyMetric cauchy_metric(const DiscreteTrajectory& a, const DiscreteTrajectory& b) {
  const int big = std::max(a.params.n, b.params.n);
  const Interpolants ia(a), ib(b);
  const auto& rule = gauss_legendre(2);
  const auto net = detail::merged_net(a, b);
  double su = 0.0, sv = 0.0;
  for (std::size_t i = 1; i < net.size(); ++i) {
    const double lo = net[i - 1], hi = net[i];
    const double mid = 0.5 * (lo + hi);
    su += (hi - lo) * l2_norm_sq(ia.u(mid).resized(big) - ib.u(mid).resized(big));
    sv += rule.integrate(lo, hi, [&](double t) { return l2_norm_sq(ia.v(t).resized(big) - ib.v(t).resized(big)); });
  }
  return {a.params.n, b.params.n, std::sqrt(su), std::sqrt(sv)};
}

struct SweepReport {
  SweepPlan plan;
  std::vector<LevelResult> levels;
  std::vector<CauchyMetric> cauchy;  // cauchy[i] compares levels i and i + 1

  std::string summary_table() const;
};

/// The datum is generated once on the largest ball; each level starts from
/// its Galerkin projection.  Levels run in parallel.
inline SweepReport run_sweep(const SweepPlan& plan) {
  plan.validate();
  SweepReport rep;
  rep.plan = plan;
  int n_max = 0;
  for (const auto& l : plan.levels) n_max = std::max(n_max, l.n);
  const SpectralVelocity u0 = generate_datum(plan.datum, {n_max});

  rep.levels.resize(plan.levels.size());
  parallel_for(plan.levels.size(), [&](std::size_t i) {
    const Level& l = plan.levels[i];
    auto& out = rep.levels[i];
    out.level = l;
    try {
      out.trajectory = run(u0, plan.params(l));
    } catch (const NonlinearSolveFailed& e) {
      throw NonlinearSolveFailed(e.iterations, e.residual, e.step,
                                 "level n=" + std::to_string(l.n) + " M=" + std::to_string(l.M));
    }
    out.report = build_report(out.trajectory, {plan.phis, plan.gauss_order, true});
    out.report.datum = plan.datum;
  });
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    rep.cauchy.push_back(cauchy_metric(rep.levels[i - 1].trajectory, rep.levels[i].trajectory));
  }
  return rep;
}

inline std::string SweepReport::summary_table() const {
  std::string out;
  char buf[512];
  std::snprintf(buf, sizeof buf, "%4s %4s %12s %12s %12s %12s %12s %12s %12s %12s %12s %12s %12s\n", "n", "M", "alpha",
                "n*alpha^3", "energy_res", "tdw", "twodw", "p_sum", "sup_energy", "|u-v|", "bound^1/2", "cauchy_u",
                "cauchy_v");
  out += buf;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const auto& l = levels[i];
    const auto& r = l.report;
    const double bound = std::sqrt(plan.T / (3.0 * l.level.M) * r.energy.rhs);
    const double cu = i + 1 < levels.size() ? cauchy[i].u : NAN;
    const double cv = i + 1 < levels.size() ? cauchy[i].v : NAN;
    std::snprintf(buf, sizeof buf,
                  "%4d %4d %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e %12.6e\n",
                  l.level.n, l.level.M, l.level.alpha, l.level.coupling(), r.energy.max_residual.value,
                  r.weighted.tdw, r.weighted.twodw, r.pressure ? r.pressure->pressure_sum : NAN, r.energy.sup_energy,
                  r.u_minus_v, bound, cu, cv);
    out += buf;
  }
  for (std::size_t j = 0; j < plan.phis.size(); ++j) {
    std::snprintf(buf, sizeof buf, "phi[%zu] %s\n", j, plan.phis[j].describe().c_str());
    out += buf;
    std::snprintf(buf, sizeof buf, "%4s %12s %12s %12s %12s\n", "n", "lhs", "residual", "lei_gap", "I5");
    out += buf;
    for (const auto& l : levels) {
      const auto& t = l.report.lei.at(j);
      std::snprintf(buf, sizeof buf, "%4d %12.6e %12.6e %12.6e %12.6e\n", l.level.n, t.lhs, t.residual, t.lei_gap,
                    t.I5);
      out += buf;
    }
  }
  return out;
}

}  // namespace nsv
