#include "ukepler/dynamics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ukepler {

void FlowConfig::validate() const {
  if (!(dt > 0.0)) throw_usage("flow config: dt must be positive");
  if (!(t_end > 0.0)) throw_usage("flow config: t_end must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw_usage("flow config: tolerances must be positive");
  if (monitor_stride < 1) throw_usage("flow config: monitor stride must be >= 1");
}

namespace {

struct RawState {
  ChartPoint cp;
  std::vector<double> p;
};

// dy for y = [q, p]
std::vector<double> field(const RawState& s, double mu, const Observable& H) {
  const int d = s.cp.desc.cone_dim();
  JetContext ctx(s.cp, s.p, mu);
  const Jet jH = H(ctx);
  std::vector<double> dy(static_cast<size_t>(2 * d));
  for (int i = 0; i < d; ++i) dy[static_cast<size_t>(i)] = jH.d(d + i);
  for (int i = 0; i < d; ++i) {
    double pdot = -jH.d(i);
    if (mu != 0.0) {
      const SmallMat<double>& F = ctx.F();
      for (int j = 0; j < d; ++j) pdot += F(i, j) * jH.d(d + j);
    }
    dy[static_cast<size_t>(d + i)] = pdot;
  }
  return dy;
}

RawState advanced(const RawState& s, const std::vector<double>& dy, double h) {
  RawState r = s;
  const int d = s.cp.desc.cone_dim();
  for (int i = 0; i < d; ++i) r.cp.q[static_cast<size_t>(i)] += h * dy[static_cast<size_t>(i)];
  for (int i = 0; i < d; ++i) r.p[static_cast<size_t>(i)] += h * dy[static_cast<size_t>(d + i)];
  return r;
}

double trace_of(const RawState& s) {
  return s.cp.desc.tag == AlgebraTag::Hn
             ? s.cp.q[0]
             : 2.0 * std::sqrt(s.cp.q[0] * s.cp.q[0] + s.cp.q[1] * s.cp.q[1] +
                               s.cp.q[2] * s.cp.q[2]);
}

RawState rk4_step(const RawState& s, double h, double mu, const Observable& H) {
  const auto k1 = field(s, mu, H);
  const auto k2 = field(advanced(s, k1, 0.5 * h), mu, H);
  const auto k3 = field(advanced(s, k2, 0.5 * h), mu, H);
  const auto k4 = field(advanced(s, k3, h), mu, H);
  RawState r = s;
  const size_t m = k1.size();
  const int d = s.cp.desc.cone_dim();
  for (size_t i = 0; i < m; ++i) {
    const double inc = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    if (static_cast<int>(i) < d)
      r.cp.q[i] += inc;
    else
      r.p[i - static_cast<size_t>(d)] += inc;
  }
  return r;
}

// Dormand-Prince 5(4) pair.
struct Rk45Result {
  RawState state;
  double error;
};

Rk45Result rk45_step(const RawState& s, double h, double mu, const Observable& H) {
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                      a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                      a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  auto comb = [&](std::initializer_list<std::pair<const std::vector<double>*, double>> terms) {
    RawState r = s;
    const int d = s.cp.desc.cone_dim();
    for (const auto& [k, c] : terms)
      for (size_t i = 0; i < k->size(); ++i) {
        const double inc = h * c * (*k)[i];
        if (static_cast<int>(i) < d)
          r.cp.q[i] += inc;
        else
          r.p[i - static_cast<size_t>(d)] += inc;
      }
    return r;
  };

  const auto k1 = field(s, mu, H);
  const auto k2 = field(comb({{&k1, a21}}), mu, H);
  const auto k3 = field(comb({{&k1, a31}, {&k2, a32}}), mu, H);
  const auto k4 = field(comb({{&k1, a41}, {&k2, a42}, {&k3, a43}}), mu, H);
  const auto k5 = field(comb({{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}}), mu, H);
  const auto k6 = field(comb({{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}}), mu, H);
  RawState r5 = comb({{&k1, b1}, {&k3, b3}, {&k4, b4}, {&k5, b5}, {&k6, b6}});
  const auto k7 = field(r5, mu, H);

  double err = 0.0;
  const int d = s.cp.desc.cone_dim();
  for (size_t i = 0; i < k1.size(); ++i) {
    const double de =
        h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    const double ref = static_cast<int>(i) < d ? s.cp.q[i] : s.p[i - static_cast<size_t>(d)];
    err = std::max(err, std::abs(de) / (1.0 + std::abs(ref)));
  }
  return {std::move(r5), err};
}

struct Monitors {
  Observable H, L2, A2;
  std::vector<Observable> Ls, As;
  int n;
};

Monitors make_monitors(const AlgebraDescriptor& desc, double mu) {
  Monitors m{hamiltonian(desc, mu), casimir_l2(desc, mu), casimir_a2(desc, mu), {}, {}, desc.n};
  const auto basis = onb(desc);
  for (size_t a = 0; a < basis.size(); ++a)
    for (size_t b = a + 1; b < basis.size(); ++b)
      m.Ls.push_back(gen_Luv(basis[a], basis[b], mu));
  for (const auto& ea : basis) m.As.push_back(lrl(ea, mu));
  return m;
}

MonitorSample take_sample(const Monitors& m, const JetContext& ctx, double t, double mu,
                          int rank_n) {
  MonitorSample s;
  s.t = t;
  s.H = m.H(ctx).value();
  s.L2 = m.L2(ctx).value();
  s.A2 = m.A2(ctx).value();
  const double n = rank_n;
  const double lhs = -2.0 * s.H * (s.L2 - n * n * (n - 1.0) * mu * mu / 4.0);
  const double rhs = (n / 2.0) * (n / 2.0) * (n - 1.0 - s.A2);
  s.hla = rel_residual(lhs, rhs);
  s.Ls.reserve(m.Ls.size());
  for (const auto& o : m.Ls) s.Ls.push_back(o(ctx).value());
  s.As.reserve(m.As.size());
  for (const auto& o : m.As) s.As.push_back(o(ctx).value());
  return s;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> vector_field(const PhasePoint& ph,
                                                                 double mu) {
  const int d = ph.point.desc.cone_dim();
  const Observable H = hamiltonian(ph.point.desc, mu);
  const auto dy = field({ph.point, ph.p}, mu, H);
  std::vector<double> qdot(dy.begin(), dy.begin() + d);
  std::vector<double> pdot(dy.begin() + d, dy.end());
  return {std::move(qdot), std::move(pdot)};
}

double hla_residual(const PhasePoint& ph, double mu) {
  const double H = eval_value(hamiltonian(ph.point.desc, mu), ph, mu);
  const double L2 = eval_value(casimir_l2(ph.point.desc, mu), ph, mu);
  const double A2 = eval_value(casimir_a2(ph.point.desc, mu), ph, mu);
  const double n = ph.point.desc.n;
  const double lhs = -2.0 * H * (L2 - n * n * (n - 1.0) * mu * mu / 4.0);
  const double rhs = (n / 2.0) * (n / 2.0) * (n - 1.0 - A2);
  return rel_residual(lhs, rhs);
}

MonitorSample monitor_sample(const PhasePoint& ph, double mu, double t) {
  const Monitors m = make_monitors(ph.point.desc, mu);
  JetContext ctx(ph, mu, /*with_dirs=*/false);
  return take_sample(m, ctx, t, mu, ph.point.desc.n);
}

TrajectoryRecord integrate(const PhasePoint& initial, double mu, const FlowConfig& config) {
  config.validate();
  if (!(std::isfinite(eval_value(hamiltonian(initial.point.desc, mu), initial, mu))))
    throw_domain("integrate: initial Hamiltonian is not finite");

  TrajectoryRecord rec;
  const Observable Hobs = hamiltonian(initial.point.desc, mu);
  const Monitors monitors = make_monitors(initial.point.desc, mu);
  RawState s{initial.point, initial.p};
  const double tr0 = trace_of(s);
  double min_trace = tr0;
  double t = 0.0;
  double h = config.dt;
  long step_count = 0;

  auto hamiltonian_value = [&](const RawState& st) {
    JetContext ctx(st.cp, st.p, mu, /*with_dirs=*/false);
    return Hobs(ctx).value();
  };
  const double H0 = hamiltonian_value(s);

  auto record_state = [&](double tt, const RawState& st) {
    PhasePoint ph = lift(st.cp, st.p);
    JetContext ctx(st.cp, st.p, mu, /*with_dirs=*/false);
    rec.times.push_back(tt);
    rec.monitors.push_back(take_sample(monitors, ctx, tt, mu, st.cp.desc.n));
    rec.states.push_back(std::move(ph));
  };

  record_state(0.0, s);

  const double t_end = config.t_end;
  while (t < t_end - 1e-15 * t_end) {
    bool accepted = false;
    RawState next = s;
    double t_next = t;
    try {
      if (config.integrator == IntegratorKind::RK4) {
        const double step = std::min(h, t_end - t);
        next = rk4_step(s, step, mu, Hobs);
        t_next = t + step;
        accepted = true;
      } else {
        double step = std::min(h, t_end - t);
        const Rk45Result r = rk45_step(s, step, mu, Hobs);
        const double tol = config.rel_tol + config.abs_tol;
        if (r.error <= tol) {
          next = r.state;
          t_next = t + step;
          accepted = true;
        }
        const double shrink =
            r.error > 0.0 ? 0.9 * std::pow(tol / r.error, 0.2) : 5.0;
        h = step * std::clamp(shrink, 0.2, 5.0);
        if (h < 1e-14 * std::max(1.0, t_end)) {
          rec.complete = false;
          rec.abort_reason = "step_underflow";
          rec.abort_time = t;
          return rec;
        }
      }
    } catch (const Error& e) {
      if (e.code() == Errc::domain || e.code() == Errc::numerical) {
        rec.complete = false;
        rec.abort_reason = "collision";
        rec.abort_time = t;
        return rec;
      }
      throw;
    }
    if (!accepted) continue;

    s = std::move(next);
    t = t_next;
    ++step_count;

    min_trace = std::min(min_trace, trace_of(s));
    if (trace_of(s) < 1e-6 * tr0) {
      rec.complete = false;
      rec.abort_reason = "collision";
      rec.abort_time = t;
      record_state(t, s);
      return rec;
    }

    // A singular passage can straddle the trace window in one fixed step;
    // the energy error exposes it regardless of step placement.
    if (std::abs(hamiltonian_value(s) - H0) > 1e-3 * (1.0 + std::abs(H0))) {
      rec.complete = false;
      rec.abort_reason = min_trace < 0.25 * tr0 ? "collision" : "energy_error";
      rec.abort_time = t;
      return rec;
    }

    if (needs_pivot_switch(s.cp, config.chart_switch_threshold)) {
      PhasePoint switched = repivot(lift(s.cp, s.p));
      rec.switches.push_back({t, s.cp.pivot, switched.point.pivot});
      s = RawState{switched.point, switched.p};
    }

    if (step_count % config.monitor_stride == 0 || t >= t_end - 1e-15 * t_end)
      record_state(t, s);
  }
  return rec;
}

PhasePoint preset_circular() {
  const auto g3 = AlgebraDescriptor::gamma3();
  PhasePoint ph = lift(make_chart_point(g3, 0, {1.0, 0.0, 0.0}), {0.0, 1.0, 0.0});
  auto [cp, p] = unlift(gamma3_to_h2(ph.x), gamma3_to_h2(ph.pi));
  return lift(cp, std::move(p));
}

PhasePoint preset_elliptic() {
  const auto g3 = AlgebraDescriptor::gamma3();
  PhasePoint ph = lift(make_chart_point(g3, 0, {1.0, 0.0, 0.0}), {0.0, 1.2, 0.0});
  auto [cp, p] = unlift(gamma3_to_h2(ph.x), gamma3_to_h2(ph.pi));
  return lift(cp, std::move(p));
}

PhasePoint initial_condition(const AlgebraDescriptor& desc, double mu, double target_H,
                             uint64_t seed) {
  std::mt19937_64 rng(derive_seed(seed, 0xD11A));
  for (int attempt = 0; attempt < 128; ++attempt) {
    const Element<double> x = sample_cone_point(desc, rng);
    const Element<double> pi0 = project_bar(x, sample_hermitian(desc, rng));
    const double tx = trace(x);
    const double n = desc.n;
    const double kinetic = n * inner(x, jmul(pi0, pi0)) / (2.0 * tx);
    const double rest = n * n * mu * mu / (2.0 * tx * tx) - n / tx;
    if (!(kinetic > 1e-12) || target_H <= rest) continue;
    const double scale = std::sqrt((target_H - rest) / kinetic);
    auto [cp, p] = unlift(x, scale * pi0);
    return lift(cp, std::move(p));
  }
  throw_domain("initial_condition: target energy unreachable from sampled cone points");
}

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& rec) {
  if (rec.states.empty()) return;
  const int d = rec.states.front().point.desc.cone_dim();
  os << "t";
  for (int i = 1; i <= d; ++i) os << ",q_" << i;
  for (int i = 1; i <= d; ++i) os << ",p_" << i;
  os << ",H,L2,A2,hla_residual\n";
  char buf[64];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    os << ',' << buf;
  };
  for (size_t k = 0; k < rec.states.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.17g", rec.times[k]);
    os << buf;
    const PhasePoint& ph = rec.states[k];
    for (int i = 0; i < d; ++i) put(ph.point.q[static_cast<size_t>(i)]);
    for (int i = 0; i < d; ++i) put(ph.p[static_cast<size_t>(i)]);
    const MonitorSample& m = rec.monitors[k];
    put(m.H);
    put(m.L2);
    put(m.A2);
    put(m.hla);
    os << '\n';
  }
}

}  // namespace ukepler
