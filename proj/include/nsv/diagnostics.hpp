#pragma once

// Ledger of the discrete identities and a-priori quantities of a trajectory:
// energy equality, weighted higher-derivative sums, pressure L^{5/3} sums
// with the Gagliardo-Nirenberg chain, interpolant identities, and the
// term-by-term local energy balance.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nsv/datum.hpp"
#include "nsv/interpolants.hpp"
#include "nsv/quadrature.hpp"
#include "nsv/test_function.hpp"

namespace nsv {

/// A residual together with the tolerance it is judged against.
struct Checked {
  double value = 0.0;
  double tolerance = 0.0;
  bool pass() const { return value <= tolerance; }
};

inline double relative_gap(double a, double b, double scale) {
  const double diff = std::abs(a - b);
  if (diff == 0.0) return 0.0;
  return diff / std::max(scale, 1e-300);
}

// --------------------------------------------------------------------------
// Discrete energy equality

struct EnergyStep {
  int m = 0;
  double l2_sq = 0.0;                     // ||u^m||^2
  double increment_sum = 0.0;             // sum_{i<=m} ||u^i - u^{i-1}||^2
  double dissipation = 0.0;               // 2 kappa sum_{i<=m} ||grad u^i||^2
  double alpha_grad_sq = 0.0;             // alpha^2 ||grad u^m||^2
  double alpha_grad_increment_sum = 0.0;  // alpha^2 sum_{i<=m} ||grad(u^i - u^{i-1})||^2
  double lhs = 0.0;
  double residual = 0.0;                  // |lhs - rhs| / rhs
};

struct EnergyLedger {
  double rhs = 0.0;             // ||P_n u0||^2 + alpha^2 ||grad P_n u0||^2
  double rhs_raw = 0.0;         // ||u0||^2 + alpha^2 ||grad u0||^2
  double projection_gap = 0.0;  // ||(I - P_n) u0||
  std::vector<EnergyStep> steps;
  Checked max_residual;
  double sup_energy = 0.0;  // max_{m >= 0} ||u^m||^2 + alpha^2 ||grad u^m||^2
  double sup_l2_sq = 0.0;   // max_m ||u^m||^2 = sup_t ||u(t)||^2 = sup_t ||v(t)||^2
};

inline EnergyLedger energy_ledger(const DiscreteTrajectory& traj, double tolerance = 0.0) {
  const auto& prm = traj.params;
  const double a2 = prm.alpha * prm.alpha;
  EnergyLedger led;
  const auto& u0 = traj.states.front();
  led.rhs = l2_norm_sq(u0) + a2 * h1_seminorm_sq(u0);
  led.rhs_raw = traj.datum.raw_l2_sq + a2 * traj.datum.raw_h1_sq;
  led.projection_gap = traj.datum.projection_gap;
  led.max_residual.tolerance = tolerance > 0.0 ? tolerance : 100.0 * prm.picard_tol;
  led.sup_energy = led.rhs;
  led.sup_l2_sq = l2_norm_sq(u0);

  double inc = 0.0, diss = 0.0, ginc = 0.0;
  for (std::size_t m = 1; m < traj.states.size(); ++m) {
    const auto& u = traj.states[m];
    const auto du = u.field() - traj.states[m - 1].field();
    inc += l2_norm_sq(du);
    ginc += h1_seminorm_sq(du);
    const double g2 = h1_seminorm_sq(u);
    diss += g2;
    EnergyStep s;
    s.m = static_cast<int>(m);
    s.l2_sq = l2_norm_sq(u);
    s.increment_sum = inc;
    s.dissipation = 2.0 * prm.kappa() * diss;
    s.alpha_grad_sq = a2 * g2;
    s.alpha_grad_increment_sum = a2 * ginc;
    s.lhs = s.l2_sq + s.increment_sum + s.dissipation + s.alpha_grad_sq + s.alpha_grad_increment_sum;
    s.residual = led.rhs > 0.0 ? std::abs(s.lhs - led.rhs) / led.rhs : std::abs(s.lhs);
    led.max_residual.value = std::max(led.max_residual.value, s.residual);
    led.sup_energy = std::max(led.sup_energy, s.l2_sq + s.alpha_grad_sq);
    led.sup_l2_sq = std::max(led.sup_l2_sq, s.l2_sq);
    led.steps.push_back(s);
  }
  return led;
}

// --------------------------------------------------------------------------
// Weighted higher-derivative sums

struct WeightedEstimates {
  double tdw = 0.0;       // alpha^3 kappa sum ||d_t u^m||^2
  double tdw_grad = 0.0;  // alpha^5 kappa sum ||d_t grad u^m||^2
  double twodw = 0.0;     // alpha^6 kappa sum ||Delta u^m||^2
};

inline WeightedEstimates weighted_estimates(const DiscreteTrajectory& traj) {
  const double a = traj.params.alpha;
  const double k = traj.kappa();
  WeightedEstimates w;
  for (std::size_t m = 1; m < traj.states.size(); ++m) {
    const auto dt = (1.0 / k) * (traj.states[m].field() - traj.states[m - 1].field());
    w.tdw += l2_norm_sq(dt);
    w.tdw_grad += h1_seminorm_sq(dt);
    w.twodw += h2_seminorm_sq(traj.states[m]);
  }
  w.tdw *= std::pow(a, 3) * k;
  w.tdw_grad *= std::pow(a, 5) * k;
  w.twodw *= std::pow(a, 6) * k;
  return w;
}

// --------------------------------------------------------------------------
// Pressure ledger

struct PressureStep {
  int m = 0;
  double u_l103 = 0.0;          // ||u^m||_{10/3}
  double gn_rhs = 0.0;          // ||u^m||_2^{2/5} ||grad u^m||_2^{3/5}
  double p_l53 = 0.0;           // ||p^m||_{5/3}
  double elliptic_ratio = 0.0;  // ||p^m||_{5/3} / ||u^m||_{10/3}^2
};

struct PressureLedger {
  std::vector<PressureStep> steps;
  double pressure_sum = 0.0;  // kappa sum ||p^m||_{5/3}^{5/3}
  Checked gn;                 // max_m (lhs / rhs - 1), judged against 1e-9
  double max_elliptic_ratio = 0.0;
};

inline constexpr double kGagliardoNirenbergSlack = 1e-9;

inline PressureLedger pressure_ledger(const DiscreteTrajectory& traj,
                                      double velocity_tol = kVelocityLpTolerance,
                                      double pressure_tol = kPressureLpTolerance) {
  PressureLedger led;
  led.gn.tolerance = kGagliardoNirenbergSlack;
  led.gn.value = -1.0;
  for (int m = 1; m <= traj.params.M; ++m) {
    const auto& u = traj.states[static_cast<std::size_t>(m)];
    PressureStep s;
    s.m = m;
    s.u_l103 = lp_norm(u.field(), 10.0 / 3.0, velocity_tol).value;
    s.gn_rhs = std::pow(l2_norm_sq(u), 0.2) * std::pow(h1_seminorm_sq(u), 0.3);
    s.p_l53 = lp_norm(traj.pressure(m), 5.0 / 3.0, pressure_tol).value;
    if (s.u_l103 > 0.0) s.elliptic_ratio = s.p_l53 / (s.u_l103 * s.u_l103);
    if (s.gn_rhs > 0.0) led.gn.value = std::max(led.gn.value, s.u_l103 / s.gn_rhs - 1.0);
    led.pressure_sum += traj.kappa() * std::pow(s.p_l53, 5.0 / 3.0);
    led.max_elliptic_ratio = std::max(led.max_elliptic_ratio, s.elliptic_ratio);
    led.steps.push_back(s);
  }
  return led;
}

// --------------------------------------------------------------------------
// Interpolant identities
//   ||v - u||^2_{L^2 L^2}           = kappa/3 sum ||u^m - u^{m-1}||^2
//   ||grad(v - u)||^2_{L^2 L^2}     = kappa/3 sum ||grad(u^m - u^{m-1})||^2

inline constexpr double kInterpolantTolerance = 1e-13;

struct InterpolantIdentities {
  double lhs1 = 0.0, rhs1 = 0.0;
  double lhs2 = 0.0, rhs2 = 0.0;
  Checked rel1, rel2;
};

inline InterpolantIdentities interpolant_identities(const DiscreteTrajectory& traj) {
  const Interpolants in(traj);
  const auto& rule = gauss_legendre(3);
  const double k = traj.kappa();
  InterpolantIdentities id;
  for (int m = 1; m <= traj.params.M; ++m) {
    // Left sides from the interpolant evaluators; the integrand is quadratic in t.
    const double lo = traj.time(m - 1), hi = traj.time(m);
    const auto& um = in.u(0.5 * (lo + hi));
    id.lhs1 += rule.integrate(lo, hi, [&](double t) { return l2_norm_sq(in.v(t).field() - um.field()); });
    id.lhs2 += rule.integrate(lo, hi, [&](double t) { return h1_seminorm_sq(in.v(t).field() - um.field()); });
    const auto du = traj.states[static_cast<std::size_t>(m)].field() - traj.states[static_cast<std::size_t>(m - 1)].field();
    id.rhs1 += k / 3.0 * l2_norm_sq(du);
    id.rhs2 += k / 3.0 * h1_seminorm_sq(du);
  }
  id.rel1 = {relative_gap(id.lhs1, id.rhs1, std::abs(id.rhs1)), kInterpolantTolerance};
  id.rel2 = {relative_gap(id.lhs2, id.rhs2, std::abs(id.rhs2)), kInterpolantTolerance};
  return id;
}

// --------------------------------------------------------------------------
// Local energy balance, tested with u phi.  With the discrete interpolants
//   int int |grad u|^2 phi = I1 + I2 + I3 + I4 + I5
// holds up to the solver residual, where
//   I1 = -int (d_t v, u phi)              I2 = alpha^2 int (d_t Delta v, u phi)
//   I3 =  int (|u|^2/2, Delta phi)        I4 = int ((|u|^2/2 + p) u, grad phi)
//   I5 =  int (Q_n((u.grad)u), u phi).
//
// The time integrations by parts that rewrite I1 and the first half of I2
// pick up jump contributions at every node, because v - u jumps from 0 to
// u^{m-1} - u^m across t_{m-1}; the spatial one in I2 leaves a flux term
// with grad phi.  Both the bare rewritten forms and the complete identities
// are reported.

inline constexpr double kLeiIdentityTolerance = 1e-10;

struct LeiTerms {
  std::string phi;
  int gauss_order = 6;
  double lhs = 0.0;
  double I1 = 0.0, I2 = 0.0, I3 = 0.0, I4 = 0.0, I5 = 0.0;
  double residual = 0.0;  // I1 + ... + I5 - lhs
  /// int (|u|^2/2, d_t phi + Delta phi) + ((|u|^2/2 + p) u, grad phi) - lhs;
  /// nonnegative for suitable solutions in the limit.
  double lei_gap = 0.0;

  double i1_rewritten = 0.0;  // int (|v|^2/2 - |v - u|^2/2, d_t phi)
  double i1_jump = 0.0;       // sum_m (|u^m - u^{m-1}|^2 / 2, phi(t_{m-1}))
  double i21 = 0.0;           // alpha^2 int (d_t Delta v, (u - v) phi)
  double i21_rewritten = 0.0; // -alpha^2 int (|grad(v - u)|^2 / 2, d_t phi)
  double i21_jump = 0.0;      // alpha^2 sum_m (|grad(u^m - u^{m-1})|^2 / 2, phi(t_{m-1}))
  double i21_flux = 0.0;      // alpha^2 int sum_ij (d_j d_t v_i, (v - u)_i d_j phi)

  Checked i1_bare;   // I1 vs i1_rewritten
  Checked i1_full;   // I1 vs i1_rewritten - i1_jump
  Checked i21_bare;  // i21 vs i21_rewritten
  Checked i21_full;  // i21 vs i21_rewritten - i21_jump + i21_flux
};

namespace detail {

inline double dot3(const GridField<3>& a, const GridField<3>& b, std::size_t p) {
  return a[0][p] * b[0][p] + a[1][p] * b[1][p] + a[2][p] * b[2][p];
}

/// Integrates f over [lo, hi], splitting at the window edges so that each
/// piece sees a polynomial theta.
template <class F>
double windowed_integral(const GaussRule& rule, double lo, double hi, const TimeWindow& w, F&& f) {
  std::array<double, 4> cuts{lo, std::clamp(w.a, lo, hi), std::clamp(w.b, lo, hi), hi};
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (cuts[i + 1] > cuts[i]) s += rule.integrate(cuts[i], cuts[i + 1], f);
  }
  return s;
}

}  // namespace detail

inline std::size_t lei_grid(int n, const TestFunction& phi) {
  return std::max({full_product_grid(n), 3 * static_cast<std::size_t>(n) + phi.space.degree() + 2,
                   min_transform_grid(phi.space.degree())});
}

inline LeiTerms lei_residual(const DiscreteTrajectory& traj, const TestFunction& phi, int gauss_order = 6) {
  phi.validate(traj.params.T);
  const auto& rule = gauss_legendre(gauss_order);
  const int n = traj.params.n;
  const double kappa = traj.kappa();
  const double a2 = traj.params.alpha * traj.params.alpha;
  const std::size_t N = lei_grid(n, phi);
  const std::size_t P = N * N * N;
  const double dV = kTorusVolume / static_cast<double>(P);
  const TimeWindow& win = phi.time;

  const RealGrid psi = phi.space.sample(N);
  const GridField<3> dpsi = to_grid(phi.space.gradient(), N);
  const RealGrid lap_psi = to_grid_scalar(phi.space.laplacian(), N);

  LeiTerms out;
  out.phi = phi.describe();
  out.gauss_order = gauss_order;

  auto sample = [&](const SpectralVelocity& u) {
    detail::VelocitySamples s = detail::sample_velocity(u.field(), N);
    return s;
  };
  detail::VelocitySamples prev = sample(traj.states.front());

  for (int m = 1; m <= traj.params.M; ++m) {
    const auto& um = traj.states[static_cast<std::size_t>(m)];
    const detail::VelocitySamples cur = sample(um);
    const RealGrid p = to_grid_scalar(traj.pressure(m), N);
    const GridField<3> qn = to_grid(galerkin_nonlinearity(um).remainder, N);
    const auto dt_u = (1.0 / kappa) * (um - traj.states[static_cast<std::size_t>(m - 1)]);
    const GridField<3> lap_dt = to_grid(dt_u.field().map([](const WaveVector& k, const auto& v) {
      const double w = -static_cast<double>(k.norm_sq());
      return SpectralVector::value_type{w * v[0], w * v[1], w * v[2]};
    }),
                                        N);

    // Time-independent spatial integrals on this interval.
    double A = 0, B1 = 0, B2 = 0, B3 = 0, B4 = 0, B5 = 0, E = 0, Jd = 0, Jg = 0;
    for (std::size_t q = 0; q < P; ++q) {
      double grad_sq = 0.0, dgrad_sq = 0.0;
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < 3; ++i) {
          grad_sq += cur.du[j][i][q] * cur.du[j][i][q];
          const double dg = cur.du[j][i][q] - prev.du[j][i][q];
          dgrad_sq += dg * dg;
        }
      const double usq = detail::dot3(cur.u, cur.u, q);
      double dtu_u = 0.0, d_sq = 0.0;
      for (int i = 0; i < 3; ++i) {
        const double d = cur.u[i][q] - prev.u[i][q];
        dtu_u += d / kappa * cur.u[i][q];
        d_sq += d * d;
      }
      const double u_dpsi = detail::dot3(cur.u, dpsi, q);
      A += grad_sq * psi[q];
      B1 += dtu_u * psi[q];
      B2 += detail::dot3(lap_dt, cur.u, q) * psi[q];
      B3 += 0.5 * usq * lap_psi[q];
      B4 += (0.5 * usq + p[q]) * u_dpsi;
      B5 += detail::dot3(qn, cur.u, q) * psi[q];
      E += 0.5 * usq * psi[q];
      Jd += 0.5 * d_sq * psi[q];
      Jg += 0.5 * dgrad_sq * psi[q];
    }
    A *= dV, B1 *= dV, B2 *= dV, B3 *= dV, B4 *= dV, B5 *= dV, E *= dV, Jd *= dV, Jg *= dV;

    const double lo = traj.time(m - 1), hi = traj.time(m);
    const double theta_int = detail::windowed_integral(rule, lo, hi, win, [&](double t) { return win.value(t); });
    const double dtheta_int =
        detail::windowed_integral(rule, lo, hi, win, [&](double t) { return win.derivative(t); });
    out.lhs += theta_int * A;
    out.I1 += -theta_int * B1;
    out.I2 += a2 * theta_int * B2;
    out.I3 += theta_int * B3;
    out.I4 += theta_int * B4;
    out.I5 += theta_int * B5;
    out.lei_gap += dtheta_int * E + theta_int * (B3 + B4) - theta_int * A;
    out.i1_jump += win.value(lo) * Jd;
    out.i21_jump += a2 * win.value(lo) * Jg;

    // Time-dependent integrands evaluated on v(t) at each quadrature node.
    auto at_node = [&](double t) {
      const double s = (t - lo) / kappa;
      std::array<double, 4> acc{};  // |v|^2/2 - |w|^2/2, grad-w term, direct i21, flux
      for (std::size_t q = 0; q < P; ++q) {
        double v_sq = 0, w_sq = 0, lapdt_negw = 0, flux = 0, gw_sq = 0;
        for (int i = 0; i < 3; ++i) {
          const double v = (1.0 - s) * prev.u[i][q] + s * cur.u[i][q];
          const double w = v - cur.u[i][q];
          v_sq += v * v;
          w_sq += w * w;
          lapdt_negw += -lap_dt[i][q] * w;
          for (int j = 0; j < 3; ++j) {
            const double dj_dtv = (cur.du[j][i][q] - prev.du[j][i][q]) / kappa;
            const double dj_w = (1.0 - s) * (prev.du[j][i][q] - cur.du[j][i][q]);
            gw_sq += dj_w * dj_w;
            flux += dj_dtv * w * dpsi[j][q];
          }
        }
        acc[0] += 0.5 * (v_sq - w_sq) * psi[q];
        acc[1] += 0.5 * gw_sq * psi[q];
        acc[2] += lapdt_negw * psi[q];
        acc[3] += flux;
      }
      for (double& x : acc) x *= dV;
      return acc;
    };
    auto component = [&](int c, bool derivative) {
      return detail::windowed_integral(rule, lo, hi, win, [&](double t) {
        const double w = derivative ? win.derivative(t) : win.value(t);
        return w == 0.0 ? 0.0 : w * at_node(t)[c];
      });
    };
    out.i1_rewritten += component(0, true);
    out.i21_rewritten += -a2 * component(1, true);
    out.i21 += a2 * component(2, false);
    out.i21_flux += a2 * component(3, false);

    prev = cur;
  }

  out.residual = out.I1 + out.I2 + out.I3 + out.I4 + out.I5 - out.lhs;
  const double s1 = std::max({std::abs(out.I1), std::abs(out.i1_rewritten), std::abs(out.i1_jump)});
  out.i1_bare = {relative_gap(out.I1, out.i1_rewritten, s1), kLeiIdentityTolerance};
  out.i1_full = {relative_gap(out.I1, out.i1_rewritten - out.i1_jump, s1), kLeiIdentityTolerance};
  const double s21 = std::max({std::abs(out.i21), std::abs(out.i21_rewritten), std::abs(out.i21_jump),
                               std::abs(out.i21_flux)});
  out.i21_bare = {relative_gap(out.i21, out.i21_rewritten, s21), kLeiIdentityTolerance};
  out.i21_full = {relative_gap(out.i21, out.i21_rewritten - out.i21_jump + out.i21_flux, s21),
                  kLeiIdentityTolerance};
  return out;
}

// --------------------------------------------------------------------------
// Full report

struct ReportOptions {
  std::vector<TestFunction> phis;
  int gauss_order = 6;
  bool with_pressure = true;
};

struct DiagnosticsReport {
  SchemeParams params;
  std::optional<DatumSpec> datum;
  EnergyLedger energy;
  WeightedEstimates weighted;
  std::optional<PressureLedger> pressure;
  InterpolantIdentities interpolants;
  std::vector<LeiTerms> lei;
  std::vector<int> picard_iters;
  std::vector<double> picard_residuals;
  double u_minus_v = 0.0;        // ||u - v||_{L^2(0,T;L^2)}
  Checked u_minus_v_bound;       // ||u - v||^2 against (T / 3M)(||u0||^2 + alpha^2 ||grad u0||^2)
};

inline DiagnosticsReport build_report(const DiscreteTrajectory& traj, const ReportOptions& opts = {}) {
  DiagnosticsReport r;
  r.params = traj.params;
  r.energy = energy_ledger(traj);
  r.weighted = weighted_estimates(traj);
  if (opts.with_pressure) r.pressure = pressure_ledger(traj);
  r.interpolants = interpolant_identities(traj);
  for (const auto& phi : opts.phis) r.lei.push_back(lei_residual(traj, phi, opts.gauss_order));
  r.picard_iters = traj.picard_iters;
  r.picard_residuals = traj.picard_residuals;
  r.u_minus_v = std::sqrt(r.interpolants.lhs1);
  const double bound = traj.params.T / (3.0 * traj.params.M) * r.energy.rhs;
  // Judged as the relative excess over the bound.
  r.u_minus_v_bound = {bound > 0.0 ? std::max(0.0, r.interpolants.lhs1 / bound - 1.0) : r.interpolants.lhs1,
                       1e-12};
  return r;
}

}  // namespace nsv
