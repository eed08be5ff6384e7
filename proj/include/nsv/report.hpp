#pragma once

// JSON ("nsv-report/1") and CSV output for diagnostics and sweeps.
//
// Level report object:
//   schema, params{n,M,T,alpha,kappa,picard_tol,picard_max_iter}, datum?,
//   energy{rhs,rhs_raw,projection_gap,max_residual,tolerance,pass,sup_energy,sup_l2_sq},
//   weighted{tdw,tdw_grad,twodw}, pressure?{pressure_sum,gn_excess,gn_pass,max_elliptic_ratio},
//   interpolants{lhs1,rhs1,rel1,lhs2,rhs2,rel2,pass}, u_minus_v{l2l2,bound_sq,pass},
//   lei[{phi,gauss_order,lhs,I1..I5,residual,lei_gap,i1_*,i21_*}], steps[...]
// Sweep report: schema, kind "sweep", levels[...], cauchy[{coarse_n,fine_n,u,v}],
//   summary (text table), note on subsequences.

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "nsv/sweep.hpp"

namespace nsv {

inline constexpr const char* kReportSchema = "nsv-report/1";

inline nlohmann::json checked_json(const Checked& c) {
  return {{"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass()}};
}

inline nlohmann::json to_json(const LeiTerms& t) {
  return {{"phi", t.phi},
          {"gauss_order", t.gauss_order},
          {"lhs", t.lhs},
          {"I1", t.I1},
          {"I2", t.I2},
          {"I3", t.I3},
          {"I4", t.I4},
          {"I5", t.I5},
          {"residual", t.residual},
          {"lei_gap", t.lei_gap},
          {"i1_rewritten", t.i1_rewritten},
          {"i1_jump", t.i1_jump},
          {"i21", t.i21},
          {"i21_rewritten", t.i21_rewritten},
          {"i21_jump", t.i21_jump},
          {"i21_flux", t.i21_flux},
          {"i1_bare", checked_json(t.i1_bare)},
          {"i1_full", checked_json(t.i1_full)},
          {"i21_bare", checked_json(t.i21_bare)},
          {"i21_full", checked_json(t.i21_full)}};
}

inline nlohmann::json to_json(const DiagnosticsReport& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  const auto& p = r.params;
  j["params"] = {{"n", p.n},         {"M", p.M},
                 {"T", p.T},         {"alpha", p.alpha},
                 {"kappa", p.kappa()}, {"picard_tol", p.picard_tol},
                 {"picard_max_iter", p.picard_max_iter}};
  if (r.datum) {
    j["datum"] = {{"kind", to_string(r.datum->kind)},
                  {"decay", r.datum->decay},
                  {"seed", r.datum->seed},
                  {"amplitude", r.datum->amplitude}};
  }
  const auto& e = r.energy;
  j["energy"] = {{"rhs", e.rhs},
                 {"rhs_raw", e.rhs_raw},
                 {"projection_gap", e.projection_gap},
                 {"max_residual", checked_json(e.max_residual)},
                 {"sup_energy", e.sup_energy},
                 {"sup_l2_sq", e.sup_l2_sq}};
  j["weighted"] = {{"tdw", r.weighted.tdw}, {"tdw_grad", r.weighted.tdw_grad}, {"twodw", r.weighted.twodw}};
  if (r.pressure) {
    j["pressure"] = {{"pressure_sum", r.pressure->pressure_sum},
                     {"gn_excess", checked_json(r.pressure->gn)},
                     {"max_elliptic_ratio", r.pressure->max_elliptic_ratio}};
  }
  const auto& in = r.interpolants;
  j["interpolants"] = {{"lhs1", in.lhs1}, {"rhs1", in.rhs1}, {"rel1", checked_json(in.rel1)},
                       {"lhs2", in.lhs2}, {"rhs2", in.rhs2}, {"rel2", checked_json(in.rel2)}};
  j["u_minus_v"] = {{"l2l2", r.u_minus_v}, {"bound_excess", checked_json(r.u_minus_v_bound)}};
  j["lei"] = nlohmann::json::array();
  for (const auto& t : r.lei) j["lei"].push_back(to_json(t));

  j["steps"] = nlohmann::json::array();
  for (std::size_t i = 0; i < e.steps.size(); ++i) {
    const auto& s = e.steps[i];
    nlohmann::json row = {{"m", s.m},
                          {"l2_sq", s.l2_sq},
                          {"alpha_grad_sq", s.alpha_grad_sq},
                          {"energy_residual", s.residual},
                          {"picard_iters", i < r.picard_iters.size() ? r.picard_iters[i] : -1},
                          {"picard_residual", i < r.picard_residuals.size() ? r.picard_residuals[i] : 0.0}};
    if (r.pressure && i < r.pressure->steps.size()) {
      const auto& ps = r.pressure->steps[i];
      row["u_l103"] = ps.u_l103;
      row["gn_rhs"] = ps.gn_rhs;
      row["p_l53"] = ps.p_l53;
    }
    j["steps"].push_back(row);
  }
  return j;
}

/// One row per step.
inline void write_csv(std::ostream& os, const DiagnosticsReport& r) {
  os << "m,t,l2_sq,alpha_grad_sq,increment_sum,dissipation,alpha_grad_increment_sum,energy_lhs,energy_residual,"
        "picard_iters,picard_residual,u_l103,gn_rhs,p_l53,elliptic_ratio\n";
  os.precision(17);
  for (std::size_t i = 0; i < r.energy.steps.size(); ++i) {
    const auto& s = r.energy.steps[i];
    os << s.m << ',' << s.m * r.params.kappa() << ',' << s.l2_sq << ',' << s.alpha_grad_sq << ',' << s.increment_sum
       << ',' << s.dissipation << ',' << s.alpha_grad_increment_sum << ',' << s.lhs << ',' << s.residual << ','
       << (i < r.picard_iters.size() ? r.picard_iters[i] : -1) << ','
       << (i < r.picard_residuals.size() ? r.picard_residuals[i] : 0.0);
    if (r.pressure && i < r.pressure->steps.size()) {
      const auto& ps = r.pressure->steps[i];
      os << ',' << ps.u_l103 << ',' << ps.gn_rhs << ',' << ps.p_l53 << ',' << ps.elliptic_ratio;
    } else {
      os << ",,,,";
    }
    os << '\n';
  }
}

inline nlohmann::json to_json(const SweepReport& s) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["kind"] = "sweep";
  j["T"] = s.plan.T;
  j["levels"] = nlohmann::json::array();
  for (const auto& l : s.levels) {
    auto lj = to_json(l.report);
    lj["coupling"] = l.level.coupling();
    j["levels"].push_back(std::move(lj));
  }
  j["cauchy"] = nlohmann::json::array();
  for (const auto& c : s.cauchy) j["cauchy"].push_back({{"coarse_n", c.coarse_n}, {"fine_n", c.fine_n}, {"u", c.u}, {"v", c.v}});
  j["summary"] = s.summary_table();
  j["note"] = "Cauchy metrics follow the full level sequence; subsequence behaviour is not resolved.";
  return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw FormatError("cannot write " + path.string());
  os << text;
}

/// stem.json and stem.csv inside dir.
inline void write_report_files(const std::filesystem::path& dir, const std::string& stem, const DiagnosticsReport& r) {
  std::filesystem::create_directories(dir);
  write_text(dir / (stem + ".json"), to_json(r).dump(2) + "\n");
  std::ofstream csv(dir / (stem + ".csv"));
  if (!csv) throw FormatError("cannot write " + (dir / (stem + ".csv")).string());
  write_csv(csv, r);
}

/// sweep.json, summary.txt and one CSV per level.
inline void write_sweep_files(const std::filesystem::path& dir, const SweepReport& s) {
  std::filesystem::create_directories(dir);
  write_text(dir / "sweep.json", to_json(s).dump(2) + "\n");
  write_text(dir / "summary.txt", s.summary_table());
  for (const auto& l : s.levels) {
    std::ofstream csv(dir / ("level_n" + std::to_string(l.level.n) + ".csv"));
    if (!csv) throw FormatError("cannot write level CSV in " + dir.string());
    write_csv(csv, l.report);
  }
}

}  // namespace nsv
