// nsv: run / sweep / check / oracle front end.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "nsv/nsv.hpp"

namespace fs = std::filesystem;
using namespace nsv;

namespace {

const std::set<std::string> kSchemeKeys = {"n", "M", "T", "alpha", "picard_tol", "picard_max_iter"};
const std::set<std::string> kCommonKeys = {"T",     "picard_tol",  "picard_max_iter", "datum",   "decay", "seed",
                                           "amplitude", "phi", "gauss_order", "output", "snapshot", "pressure"};

std::set<std::string> merged(std::set<std::string> a, const std::set<std::string>& b) {
  a.insert(b.begin(), b.end());
  return a;
}

DatumSpec datum_from(const Config& cfg) {
  DatumSpec d;
  d.kind = parse_datum_kind(cfg.get("datum", "taylor_green"));
  d.decay = cfg.get_double("decay", d.decay);
  d.seed = static_cast<std::uint64_t>(cfg.get_int("seed", static_cast<long long>(d.seed)));
  d.amplitude = cfg.get_double("amplitude", d.amplitude);
  return d;
}

std::vector<TestFunction> phis_from(const Config& cfg, double T) {
  std::vector<TestFunction> out;
  for (const auto& s : cfg.get_all("phi")) out.push_back(s == "standard" ? TestFunction::standard(T) : TestFunction::parse(s));
  if (!cfg.has("phi")) out.push_back(TestFunction::standard(T));
  return out;
}

std::vector<int> int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw FormatError("bad integer list '" + text + "'");
    }
  }
  return out;
}

int cmd_run(const std::string& config_path, const std::string& output_override) {
  const Config cfg = Config::load(config_path);
  cfg.require_known(merged(kSchemeKeys, kCommonKeys));
  SchemeParams p;
  p.n = static_cast<int>(cfg.get_int("n", p.n));
  p.M = static_cast<int>(cfg.get_int("M", p.M));
  p.T = cfg.get_double("T", p.T);
  p.alpha = cfg.get_double("alpha", p.alpha);
  p.picard_tol = cfg.get_double("picard_tol", p.picard_tol);
  p.picard_max_iter = static_cast<int>(cfg.get_int("picard_max_iter", p.picard_max_iter));
  p.validate();
  const DatumSpec datum = datum_from(cfg);
  ReportOptions opts;
  opts.phis = phis_from(cfg, p.T);
  opts.gauss_order = static_cast<int>(cfg.get_int("gauss_order", 6));
  opts.with_pressure = cfg.get_bool("pressure", true);

  const auto traj = run(generate_datum(datum, p.ball()), p);
  auto report = build_report(traj, opts);
  report.datum = datum;

  const fs::path dir = output_override.empty() ? fs::path(cfg.get("output", "nsv-out")) : fs::path(output_override);
  write_report_files(dir, "report", report);
  if (cfg.get_bool("snapshot", true)) write_trajectory((dir / "trajectory.nsv").string(), traj);

  std::printf("n=%d M=%d alpha=%.6g T=%.6g  energy residual %.3e  |u-v| %.6e\n", p.n, p.M, p.alpha, p.T,
              report.energy.max_residual.value, report.u_minus_v);
  for (const auto& t : report.lei) std::printf("lei  lhs %.6e  residual %.3e  gap %.6e\n", t.lhs, t.residual, t.lei_gap);
  std::printf("wrote %s\n", dir.string().c_str());
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& output_override) {
  const Config cfg = Config::load(config_path);
  cfg.require_known(merged(kCommonKeys, {"level", "n_list", "alpha_exponent", "steps_per_n"}));
  SweepPlan plan;
  plan.T = cfg.get_double("T", plan.T);
  plan.picard_tol = cfg.get_double("picard_tol", plan.picard_tol);
  plan.picard_max_iter = static_cast<int>(cfg.get_int("picard_max_iter", plan.picard_max_iter));
  plan.gauss_order = static_cast<int>(cfg.get_int("gauss_order", plan.gauss_order));
  plan.datum = datum_from(cfg);
  plan.phis = phis_from(cfg, plan.T);
  if (cfg.has("level")) {
    if (cfg.has("n_list")) throw FormatError("give either level lines or n_list, not both");
    for (const auto& s : cfg.get_all("level")) {
      std::string t = s;
      std::replace(t.begin(), t.end(), ',', ' ');
      std::istringstream is(t);
      Level l;
      if (!(is >> l.n >> l.M >> l.alpha) || !(is >> std::ws).eof()) throw FormatError("level needs n,M,alpha: '" + s + "'");
      plan.levels.push_back(l);
    }
  } else {
    plan.levels = default_schedule(int_list(cfg.get("n_list", "4,6,8")),
                                   cfg.get_double("alpha_exponent", kDefaultAlphaExponent),
                                   static_cast<int>(cfg.get_int("steps_per_n", 1)));
  }
  plan.output_dir = output_override.empty() ? cfg.get("output", "nsv-sweep") : output_override;

  const auto rep = run_sweep(plan);
  write_sweep_files(plan.output_dir, rep);
  std::cout << rep.summary_table();
  std::printf("wrote %s\n", plan.output_dir.c_str());
  return 0;
}

int cmd_check(const std::string& traj_path, const std::string& phi_spec, int gauss_order, const std::string& out) {
  const auto traj = read_trajectory(traj_path);
  ReportOptions opts;
  opts.phis = {phi_spec == "standard" ? TestFunction::standard(traj.params.T) : TestFunction::parse(phi_spec)};
  opts.gauss_order = gauss_order;
  const auto report = build_report(traj, opts);
  if (!out.empty()) {
    write_report_files(out, "check", report);
    std::printf("wrote %s\n", out.c_str());
  } else {
    std::cout << to_json(report).dump(2) << '\n';
  }
  return 0;
}

struct OracleResult {
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

OracleResult oracle_convective(int n, int seeds) {
  OracleResult r{0.0, 1e-12, "padded transform vs direct convolution"};
  for (int s = 1; s <= seeds; ++s) {
    const auto u = oracle::random_field(n, static_cast<std::uint64_t>(s));
    r.deviation = std::max(r.deviation, oracle::relative_deviation(convective(u), oracle::convective(u.field())));
  }
  return r;
}

OracleResult oracle_pressure(int n, int seeds) {
  OracleResult r{0.0, 1e-12, "solve_pressure vs direct convolution and division"};
  for (int s = 1; s <= seeds; ++s) {
    const auto u = oracle::random_field(n, static_cast<std::uint64_t>(s));
    r.deviation = std::max(r.deviation, oracle::relative_deviation(solve_pressure(u), oracle::pressure(u.field())));
  }
  return r;
}

OracleResult oracle_taylor_green() {
  const auto u = generate_datum({}, {2});
  OracleResult r{0.0, 1e-12, "Taylor-Green: Leray part of the convective term and pressure"};
  const auto full = convective(u);
  r.deviation = std::max(r.deviation, max_coefficient(leray_project(full).field()));
  r.deviation = std::max(r.deviation, oracle::relative_deviation(solve_pressure(u), oracle::taylor_green_pressure()));
  r.deviation = std::max(r.deviation, oracle::relative_deviation(solve_pressure(u), oracle::pressure(u.field())));
  return r;
}

OracleResult oracle_shear(int M, double alpha) {
  SchemeParams p;
  p.n = 2;
  p.M = M;
  p.alpha = alpha;
  const auto traj = run(generate_datum({DatumSpec::Kind::shear}, p.ball()), p);
  const double q = oracle::linear_decay_factor(1.0, alpha, p.kappa());
  OracleResult r{0.0, 1e-12, "shear mode vs closed-form geometric decay"};
  const Complex u0 = traj.states[0].at({0, 1, 0})[0];
  for (int m = 0; m <= M; ++m) {
    const Complex expect = u0 * std::pow(q, m);
    const Complex got = traj.states[static_cast<std::size_t>(m)].at({0, 1, 0})[0];
    r.deviation = std::max(r.deviation, std::abs(got - expect) / std::abs(expect));
  }
  return r;
}

OracleResult oracle_lp_pressure() {
  SchemeParams p;
  p.n = 2;
  const auto traj = run(generate_datum({}, p.ball()), p);
  const auto& pr = traj.pressure(1);
  const auto fast = lp_norm(pr, 5.0 / 3.0, kPressureLpTolerance);
  const double slow = oracle::lp_norm(pr, 5.0 / 3.0, 2 * fast.grid);
  std::ostringstream os;
  os.precision(12);
  os << "||p||_5/3 at step 1: quadrature " << fast.value << " vs direct evaluation on " << 2 * fast.grid
     << "^3 points " << slow;
  return {std::abs(fast.value - slow) / slow, kPressureLpTolerance, os.str()};
}

OracleResult oracle_parseval(int n) {
  const auto u = oracle::random_field(n, 11);
  const auto g = to_grid(u.field(), min_transform_grid(n));
  double s = 0.0;
  for (const auto& c : g)
    for (double v : c.values) s += v * v;
  s *= kTorusVolume / static_cast<double>(g[0].size());
  const double ref = l2_norm_sq(u);
  return {std::abs(s - ref) / ref, 1e-12, "grid energy vs coefficient energy"};
}

int cmd_oracle(const std::string& op, int n, int seeds, int M, double alpha) {
  OracleResult r;
  if (op == "convective") {
    r = oracle_convective(n, seeds);
  } else if (op == "pressure") {
    r = oracle_pressure(n, seeds);
  } else if (op == "taylor_green") {
    r = oracle_taylor_green();
  } else if (op == "shear_decay") {
    r = oracle_shear(M, alpha);
  } else if (op == "lp_pressure") {
    r = oracle_lp_pressure();
  } else if (op == "parseval") {
    r = oracle_parseval(n);
  } else {
    throw FormatError("unknown oracle op '" + op + "'");
  }
  const bool pass = r.deviation <= r.tolerance;
  nlohmann::json j = {{"op", op}, {"deviation", r.deviation}, {"tolerance", r.tolerance}, {"pass", pass}, {"detail", r.detail}};
  std::cout << j.dump() << '\n';
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Navier-Stokes-Voigt Euler/Fourier-Galerkin solver and diagnostics"};
  app.require_subcommand(1);

  std::string config, output;
  auto* run_cmd = app.add_subcommand("run", "integrate one level and write report, CSV and snapshot");
  run_cmd->add_option("--config", config, "key = value config file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--output", output, "output directory (overrides the config)");

  auto* sweep_cmd = app.add_subcommand("sweep", "run a level sweep and tabulate Cauchy metrics");
  sweep_cmd->add_option("--config", config, "key = value config file")->required()->check(CLI::ExistingFile);
  sweep_cmd->add_option("--output", output, "output directory (overrides the config)");

  std::string traj, phi = "standard";
  int gauss_order = 6;
  auto* check_cmd = app.add_subcommand("check", "diagnostics on a stored trajectory");
  check_cmd->add_option("--traj", traj, "trajectory snapshot file")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--phi", phi, "test function, e.g. 'mean=1;cos=1,0,0:0.5;window=0.1,0.4' or 'standard'");
  check_cmd->add_option("--gauss-order", gauss_order, "Gauss points per time interval");
  check_cmd->add_option("--output", output, "write check.json/check.csv here instead of printing JSON");

  std::string op;
  int n = 4, seeds = 20, M = 20;
  double alpha = 0.5;
  auto* oracle_cmd = app.add_subcommand("oracle", "compare a fast path against its brute-force oracle");
  oracle_cmd->add_option("--op", op, "convective | pressure | taylor_green | shear_decay | lp_pressure | parseval")
      ->required();
  oracle_cmd->add_option("--n", n, "truncation radius");
  oracle_cmd->add_option("--seeds", seeds, "number of random fields");
  oracle_cmd->add_option("--M", M, "time steps (shear_decay)");
  oracle_cmd->add_option("--alpha", alpha, "Voigt parameter (shear_decay)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(config, output);
    if (*sweep_cmd) return cmd_sweep(config, output);
    if (*check_cmd) return cmd_check(traj, phi, gauss_order, output);
    if (*oracle_cmd) return cmd_oracle(op, n, seeds, M, alpha);
  } catch (const nsv::Error& e) {
    std::cerr << "nsv: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "nsv: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
