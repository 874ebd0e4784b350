#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ukepler/io.hpp"
#include "ukepler/verify.hpp"
#include "ukepler/version.hpp"

using namespace ukepler;
using nlohmann::json;

namespace {

std::vector<double> parse_mu_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      throw_usage("cannot parse mu value '" + tok + "'");
    }
  }
  if (out.empty()) throw_usage("empty mu list");
  return out;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::usage:
    case Errc::parse:
      return 2;
    case Errc::integration:
    case Errc::singularity:
      return 3;
    default:
      return 1;
  }
}

struct VerifyArgs {
  std::string algebra = "hn";
  int n = 2;
  std::string mu = "0";
  std::string suite = "all";
  int trials = 200;
  uint64_t seed = 42;
  double tol = -1.0;  // <0: per-suite defaults
  std::string out;
};

json config_json(const VerifyArgs& a) {
  return {{"command", "verify"}, {"algebra", a.algebra}, {"n", a.n},       {"mu", a.mu},
          {"suite", a.suite},    {"trials", a.trials},   {"seed", a.seed}, {"tol", a.tol},
          {"out", a.out}};
}

int run_verify(const VerifyArgs& a) {
  if (a.algebra != "hn" && a.algebra != "gamma3") throw_usage("--algebra must be hn or gamma3");
  if (a.n < 2) throw_usage("--n must be at least 2");
  const AlgebraTag tag = a.algebra == "hn" ? AlgebraTag::Hn : AlgebraTag::Gamma3;
  const auto mu_list = parse_mu_list(a.mu);
  if (tag == AlgebraTag::Gamma3)
    for (double m : mu_list)
      if (m != 0.0) throw_usage("the spin factor only supports mu = 0");

  const bool all = a.suite == "all";
  std::vector<SuiteReport> reports;
  auto tol_or = [&](double dflt) { return a.tol > 0.0 ? a.tol : dflt; };

  if ((all || a.suite == "matrix") && tag == AlgebraTag::Hn)
    reports.push_back(suite_matrix_identities({a.n}, a.trials, a.seed, tol_or(1e-12)));
  if (all || a.suite == "jordan")
    reports.push_back(suite_jordan_axioms(tag == AlgebraTag::Hn ? std::vector<int>{a.n}
                                                                : std::vector<int>{},
                                          a.trials, a.seed, tol_or(1e-12)));
  if (all || a.suite == "lemma")
    reports.push_back(suite_bracket_lemma(tag, a.n, mu_list, a.trials, a.seed, tol_or(1e-9)));
  if (all || a.suite == "realization")
    reports.push_back(suite_realization(tag, a.n, mu_list, a.trials, a.seed, tol_or(1e-8)));
  if ((all || a.suite == "quadratic") && tag == AlgebraTag::Hn)
    reports.push_back(suite_quadratic({a.n}, mu_list, a.trials, a.seed, tol_or(1e-10)));
  const bool mu_has_zero =
      std::any_of(mu_list.begin(), mu_list.end(), [](double m) { return m == 0.0; });
  if ((all && tag == AlgebraTag::Hn && a.n == 2 && mu_has_zero) || a.suite == "kepler") {
    FlowConfig flow;
    flow.dt = 1e-3;
    reports.push_back(
        suite_kepler_crosscheck(std::min(a.trials, 50), a.seed, flow, tol_or(1e-10), 1e-6));
  }
  if (reports.empty())
    throw_usage("no suite selected (unknown --suite value or unsupported combination)");

  bool pass = true;
  for (const auto& r : reports) {
    pass = pass && r.pass;
    std::printf("[%s] %-20s max_residual=%.3e tol=%.1e\n", r.pass ? "PASS" : "FAIL",
                r.suite.c_str(), r.max_residual, r.tolerance);
  }
  if (!a.out.empty()) {
    json j;
    j["version"] = kVersion;
    j["config"] = config_json(a);
    j["pass"] = pass;
    json suites = json::array();
    for (const auto& r : reports) suites.push_back(json::parse(report_to_json(r)));
    j["suites"] = suites;
    std::ofstream of(a.out);
    if (!of) throw_parse("cannot write report to " + a.out);
    of << j.dump(2) << "\n";
  }
  return pass ? 0 : 1;
}

struct SimArgs {
  std::string algebra = "hn";
  int n = 2;
  double mu = 0.0;
  std::string init;
  std::string preset;
  double dt = 1e-3;
  double t_end = 10.0;
  std::string integrator = "rk4";
  int monitor_stride = 100;
  uint64_t seed = 42;
  double target_H = -0.3;
  std::string out = "trajectory.csv";
};

int run_simulate(const SimArgs& a) {
  if (a.init.empty() && a.preset.empty())
    throw_usage("simulate needs --init FILE or --preset circular|elliptic|generic");
  if (!a.init.empty() && !a.preset.empty()) throw_usage("--init and --preset are exclusive");
  if (a.n < 2) throw_usage("--n must be at least 2");

  PhasePoint initial = [&]() {
    if (!a.init.empty()) return load_phase_point(a.init);
    if (a.preset == "circular") {
      if (a.n != 2) throw_usage("--preset circular is defined for n = 2");
      return preset_circular();
    }
    if (a.preset == "elliptic") {
      if (a.n != 2) throw_usage("--preset elliptic is defined for n = 2");
      return preset_elliptic();
    }
    if (a.preset == "generic") {
      const auto desc = a.algebra == "gamma3" ? AlgebraDescriptor::gamma3()
                                              : AlgebraDescriptor::hermitian(a.n);
      return initial_condition(desc, a.mu, a.target_H, a.seed);
    }
    throw_usage("unknown preset '" + a.preset + "'");
  }();

  if (initial.point.desc.tag == AlgebraTag::Gamma3 && a.mu != 0.0)
    throw_usage("the spin factor only supports mu = 0");

  FlowConfig cfg;
  cfg.dt = a.dt;
  cfg.t_end = a.t_end;
  cfg.monitor_stride = a.monitor_stride;
  if (a.integrator == "rk4")
    cfg.integrator = IntegratorKind::RK4;
  else if (a.integrator == "rk45")
    cfg.integrator = IntegratorKind::RK45;
  else
    throw_usage("--integrator must be rk4 or rk45");

  const TrajectoryRecord rec = integrate(initial, a.mu, cfg);

  {
    std::ofstream of(a.out, std::ios::binary);
    if (!of) throw_parse("cannot write trajectory to " + a.out);
    write_trajectory_csv(of, rec);
  }

  // drift summary over the monitored samples
  double h_drift = 0.0, l_drift = 0.0, a_drift = 0.0, hla_max = 0.0;
  if (!rec.monitors.empty()) {
    const MonitorSample& first = rec.monitors.front();
    for (const auto& m : rec.monitors) {
      h_drift = std::max(h_drift, std::abs(m.H - first.H));
      hla_max = std::max(hla_max, m.hla);
      for (size_t i = 0; i < m.Ls.size(); ++i)
        l_drift = std::max(l_drift, std::abs(m.Ls[i] - first.Ls[i]));
      for (size_t i = 0; i < m.As.size(); ++i)
        a_drift = std::max(a_drift, std::abs(m.As[i] - first.As[i]));
    }
  }

  json side;
  side["version"] = kVersion;
  side["config"] = {{"command", "simulate"},
                    {"algebra", tag_name(initial.point.desc.tag)},
                    {"n", initial.point.desc.n},
                    {"mu", a.mu},
                    {"init", a.init},
                    {"preset", a.preset},
                    {"dt", a.dt},
                    {"t_end", a.t_end},
                    {"integrator", a.integrator},
                    {"monitor_stride", a.monitor_stride},
                    {"seed", a.seed},
                    {"out", a.out}};
  side["seed"] = a.seed;
  side["n"] = initial.point.desc.n;
  side["mu"] = a.mu;
  side["complete"] = rec.complete;
  if (!rec.complete) {
    side["abort_reason"] = rec.abort_reason;
    side["abort_time"] = rec.abort_time;
  }
  json history = json::array();
  for (const auto& sw : rec.switches)
    history.push_back({{"t", sw.t}, {"from", sw.from}, {"to", sw.to}});
  side["pivot_history"] = history;
  side["drift"] = {{"H", h_drift}, {"Luv_max", l_drift}, {"LRL_max", a_drift},
                   {"hla_max", hla_max}};
  {
    std::ofstream of(a.out + ".meta.json");
    if (!of) throw_parse("cannot write sidecar for " + a.out);
    of << side.dump(2) << "\n";
  }

  std::printf("samples=%zu switches=%zu H_drift=%.3e Luv_drift=%.3e LRL_drift=%.3e hla_max=%.3e\n",
              rec.monitors.size(), rec.switches.size(), h_drift, l_drift, a_drift, hla_max);
  if (!rec.complete) {
    std::fprintf(stderr, "integration aborted at t=%.6g: %s (partial output written)\n",
                 rec.abort_time, rec.abort_reason.c_str());
    return 3;
  }
  return 0;
}

struct BracketArgs {
  std::string f_spec, g_spec, point;
  double mu = 0.0;
  std::string out;
};

int run_bracket(const BracketArgs& a, bool eval_only) {
  const PhasePoint ph = load_phase_point(a.point);
  const auto& desc = ph.point.desc;
  const Observable f = compile(load_generator_spec(a.f_spec, desc), a.mu, desc);
  double value = 0.0;
  if (eval_only) {
    value = eval_value(f, ph, a.mu);
  } else {
    const Observable g = compile(load_generator_spec(a.g_spec, desc), a.mu, desc);
    value = bracket(f, g, ph, a.mu);
  }
  std::printf("%.17g\n", value);
  if (!a.out.empty()) {
    json j;
    j["version"] = kVersion;
    j["f"] = a.f_spec;
    if (!eval_only) j["g"] = a.g_spec;
    j["point"] = a.point;
    j["mu"] = a.mu;
    j["value"] = value;
    std::ofstream of(a.out);
    if (!of) throw_parse("cannot write result to " + a.out);
    of << j.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"U(1)-Kepler cone mechanics: identity verification, simulation, brackets"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "run identity-verification suites");
  verify->add_option("--algebra", va.algebra, "hn | gamma3");
  verify->add_option("--n", va.n, "matrix order");
  verify->add_option("--mu", va.mu, "comma-separated magnetic charges");
  verify->add_option("--suite", va.suite,
                     "all | matrix | jordan | lemma | realization | quadratic | kepler");
  verify->add_option("--trials", va.trials, "trials per identity");
  verify->add_option("--seed", va.seed, "rng seed");
  verify->add_option("--tol", va.tol, "tolerance override");
  verify->add_option("--out", va.out, "write JSON report here");

  SimArgs sa;
  auto* simulate = app.add_subcommand("simulate", "integrate a trajectory");
  simulate->add_option("--algebra", sa.algebra, "hn | gamma3");
  simulate->add_option("--n", sa.n, "matrix order");
  simulate->add_option("--mu", sa.mu, "magnetic charge");
  simulate->add_option("--init", sa.init, "phase point JSON file");
  simulate->add_option("--preset", sa.preset, "circular | elliptic | generic");
  simulate->add_option("--dt", sa.dt, "step size");
  simulate->add_option("--t-end", sa.t_end, "integration time");
  simulate->add_option("--integrator", sa.integrator, "rk4 | rk45");
  simulate->add_option("--monitor-stride", sa.monitor_stride, "steps between samples");
  simulate->add_option("--seed", sa.seed, "seed for --preset generic");
  simulate->add_option("--target-H", sa.target_H, "energy for --preset generic");
  simulate->add_option("--out", sa.out, "CSV output path");

  BracketArgs ba;
  auto* br = app.add_subcommand("bracket", "Poisson bracket of two observables at a point");
  br->add_option("--f", ba.f_spec, "generator spec JSON")->required();
  br->add_option("--g", ba.g_spec, "generator spec JSON")->required();
  br->add_option("--point", ba.point, "phase point JSON")->required();
  br->add_option("--mu", ba.mu, "magnetic charge");
  br->add_option("--out", ba.out, "write JSON result here");

  BracketArgs ea;
  auto* ev = app.add_subcommand("eval", "evaluate one observable at a point");
  ev->add_option("--f", ea.f_spec, "generator spec JSON")->required();
  ev->add_option("--point", ea.point, "phase point JSON")->required();
  ev->add_option("--mu", ea.mu, "magnetic charge");
  ev->add_option("--out", ea.out, "write JSON result here");

  try {
    app.parse(argc, argv);
    if (verify->parsed()) return run_verify(va);
    if (simulate->parsed()) return run_simulate(sa);
    if (br->parsed()) return run_bracket(ba, false);
    if (ev->parsed()) return run_bracket(ea, true);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
