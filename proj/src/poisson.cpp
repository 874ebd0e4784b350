#include "ukepler/poisson.hpp"

#include <cmath>

namespace ukepler {

JetContext::JetContext(const ChartPoint& cp, const std::vector<double>& p, double mu,
                       bool with_dirs)
    : desc_(cp.desc), d_(cp.desc.cone_dim()), mu_(mu) {
  if (desc_.tag == AlgebraTag::Gamma3 && mu != 0.0)
    throw_unsupported("nonzero magnetic charge is not defined on the spin factor");
  if (static_cast<int>(p.size()) != d_) throw_usage("momentum has wrong length");
  ndirs_ = with_dirs ? 2 * d_ : 0;
  if (ndirs_ > Jet::kMaxDirs) throw_usage("phase space dimension exceeds jet capacity");
  q_.reserve(d_);
  p_.reserve(d_);
  for (int i = 0; i < d_; ++i)
    q_.push_back(with_dirs ? Jet::seeded(cp.q[i], i, ndirs_) : Jet(cp.q[i]));
  for (int i = 0; i < d_; ++i)
    p_.push_back(with_dirs ? Jet::seeded(p[i], d_ + i, ndirs_) : Jet(p[i]));

  x_ = embed_q<Jet>(desc_, cp.pivot, q_);
  Frame<Jet> fr = make_frame<Jet>(desc_, cp.pivot, q_);
  Element<Jet> pi = Element<Jet>::zero(desc_);
  for (int i = 0; i < d_; ++i) pi = pi + p_[i] * fr.duals[i];
  pi_ = std::move(pi);
  F_ = curvature(cp, mu);
}

JetContext::JetContext(const PhasePoint& ph, double mu, bool with_dirs)
    : JetContext(ph.point, ph.p, mu, with_dirs) {}

Observable coord_q(int i) {
  return {"q_" + std::to_string(i + 1),
          [i](const JetContext& ctx) { return ctx.q().at(static_cast<size_t>(i)); }};
}

Observable coord_p(int i) {
  return {"p_" + std::to_string(i + 1),
          [i](const JetContext& ctx) { return ctx.p().at(static_cast<size_t>(i)); }};
}

Observable obs_constant(double c) {
  return {"const", [c](const JetContext&) { return Jet(c); }};
}

Observable obs_inner_x(const Element<double>& u) {
  return {"<u|x>", [u = lift_to_jet(u)](const JetContext& ctx) { return inner(u, ctx.x()); }};
}

Observable obs_inner_pi(const Element<double>& u) {
  return {"<u|pi>", [u = lift_to_jet(u)](const JetContext& ctx) { return inner(u, ctx.pi()); }};
}

double eval_value(const Observable& f, const PhasePoint& ph, double mu) {
  JetContext ctx(ph, mu, /*with_dirs=*/false);
  return f(ctx).value();
}

std::vector<double> eval_gradient(const Observable& f, const PhasePoint& ph, double mu) {
  JetContext ctx(ph, mu);
  const Jet j = f(ctx);
  std::vector<double> g(static_cast<size_t>(ctx.ndirs()));
  for (int i = 0; i < ctx.ndirs(); ++i) g[static_cast<size_t>(i)] = j.d(i);
  return g;
}

double bracket(const Observable& f, const Observable& g, const JetContext& ctx) {
  const Jet jf = f(ctx);
  const Jet jg = g(ctx);
  const int d = ctx.dim();
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += jf.d(i) * jg.d(d + i) - jf.d(d + i) * jg.d(i);
  if (ctx.mu() != 0.0) {
    const SmallMat<double>& F = ctx.F();
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j)
        sum += F(i, j) * (jf.d(d + i) * jg.d(d + j) - jf.d(d + j) * jg.d(d + i));
  }
  return sum;
}

double bracket(const Observable& f, const Observable& g, const PhasePoint& ph, double mu) {
  JetContext ctx(ph, mu);
  return bracket(f, g, ctx);
}

double bracket_pp_residual(const TangentField& utilde, const TangentField& vtilde,
                           const PhasePoint& ph, double mu) {
  const Element<double> u0 = utilde(ph.x);
  const Element<double> v0 = vtilde(ph.x);
  const double lhs = bracket(obs_inner_pi(u0), obs_inner_pi(v0), ph, mu);
  double rhs = 0.0;
  if (mu != 0.0) {
    const double tx = trace(ph.x);
    rhs = -2.0 * mu * itr_comm(ph.x, u0, v0) / (tx * tx * tx);
  }
  return rel_residual(lhs, rhs);
}

double bracket_pipi_frame_formula(const Element<double>& u, const Element<double>& v,
                                  const PhasePoint& ph, double mu) {
  const ChartPoint& cp = ph.point;
  const int d = cp.desc.cone_dim();
  const Frame<double> fr = frame(cp);
  const auto second = chart_second_partials<double>(cp.desc, cp.pivot, cp.q);
  const Element<double> ubarbar = u - project_bar(ph.x, u);
  const Element<double> vbarbar = v - project_bar(ph.x, v);

  auto one_side = [&](const Element<double>& a_bb, const Element<double>& b) {
    double acc = 0.0;
    for (int j = 0; j < d; ++j) {
      const double bj = inner(b, fr.duals[j]);
      if (bj == 0.0) continue;
      for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) {
          const double gil = fr.metric_inv(i, l);
          acc += ph.p[i] * gil * inner(a_bb, second[static_cast<size_t>(j) * d + l]) * bj;
        }
    }
    return acc;
  };

  double rhs = one_side(ubarbar, v) - one_side(vbarbar, u);
  if (mu != 0.0) {
    const SmallMat<double> F = curvature(cp, mu);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        rhs += inner(u, fr.duals[i]) * F(i, j) * inner(v, fr.duals[j]);
  }
  return rhs;
}

namespace {

PhasePoint perturbed(const PhasePoint& ph, int dir, double h) {
  ChartPoint cp = ph.point;
  std::vector<double> p = ph.p;
  const int d = cp.desc.cone_dim();
  if (dir < d)
    cp.q[static_cast<size_t>(dir)] += h;
  else
    p[static_cast<size_t>(dir - d)] += h;
  return lift(cp, std::move(p));
}

}  // namespace

double jacobi_residual(const Observable& f, const Observable& g, const Observable& h,
                       const PhasePoint& ph, double mu, double fd_step) {
  const int d = ph.point.desc.cone_dim();

  auto nested = [&](const Observable& a, const Observable& b, const Observable& c) {
    // {a, {b,c}} with d{b,c} by central differences
    JetContext ctx(ph, mu);
    const Jet ja = a(ctx);
    std::vector<double> grad_bc(static_cast<size_t>(2 * d));
    for (int dir = 0; dir < 2 * d; ++dir) {
      const double scale =
          1.0 + std::abs(dir < d ? ph.point.q[static_cast<size_t>(dir)]
                                 : ph.p[static_cast<size_t>(dir - d)]);
      const double step = fd_step * scale;
      const double plus = bracket(b, c, perturbed(ph, dir, step), mu);
      const double minus = bracket(b, c, perturbed(ph, dir, -step), mu);
      grad_bc[static_cast<size_t>(dir)] = (plus - minus) / (2.0 * step);
    }
    double sum = 0.0;
    for (int i = 0; i < d; ++i)
      sum += ja.d(i) * grad_bc[static_cast<size_t>(d + i)] -
             ja.d(d + i) * grad_bc[static_cast<size_t>(i)];
    if (mu != 0.0) {
      const SmallMat<double>& F = ctx.F();
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          sum += F(i, j) * ja.d(d + i) * grad_bc[static_cast<size_t>(d + j)];
    }
    return sum;
  };

  return nested(f, g, h) + nested(g, h, f) + nested(h, f, g);
}

}  // namespace ukepler
