#include "doctest.h"
#include "oracles.hpp"
#include "ukepler/generators.hpp"
#include "ukepler/poisson.hpp"

using namespace ukepler;

namespace {

Observable obs_product(const Observable& f, const Observable& g) {
  return {"prod", [f, g](const JetContext& ctx) { return f(ctx) * g(ctx); }};
}

// <u|vbar> through dense arithmetic only
double inner_projection_dense(const Element<double>& u, const Element<double>& v,
                              const Element<double>& x) {
  const int n = x.desc.n;
  using oracle::cd;
  auto X = oracle::to_dense(x), U = oracle::to_dense(u), V = oracle::to_dense(v);
  const double tx = oracle::trace(X, n).real();
  oracle::DenseMat Q(static_cast<size_t>(n) * n, cd(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      Q[static_cast<size_t>(i) * n + j] =
          (i == j ? cd(1) : cd(0)) - X[static_cast<size_t>(i) * n + j] / tx;
  const auto vbar = oracle::sub(V, oracle::mul(oracle::mul(Q, V, n), Q, n));
  return oracle::trace(oracle::mul(U, vbar, n), n).real() / n;
}

}  // namespace

TEST_SUITE_BEGIN("poisson");

TEST_CASE("jet arithmetic propagates exact derivatives") {
  // f(a,b) = (a*b + a/b - 3) * sqrt(b); check against hand derivatives
  const double a0 = 1.7, b0 = 0.6;
  const Jet a = Jet::seeded(a0, 0, 2);
  const Jet b = Jet::seeded(b0, 1, 2);
  const Jet f = (a * b + a / b - 3.0) * sqrt(b);
  const double sq = std::sqrt(b0);
  const double f0 = (a0 * b0 + a0 / b0 - 3.0) * sq;
  const double dfda = (b0 + 1.0 / b0) * sq;
  const double dfdb = (a0 - a0 / (b0 * b0)) * sq + (a0 * b0 + a0 / b0 - 3.0) * 0.5 / sq;
  CHECK(f.value() == doctest::Approx(f0).epsilon(1e-15));
  CHECK(f.d(0) == doctest::Approx(dfda).epsilon(1e-14));
  CHECK(f.d(1) == doctest::Approx(dfdb).epsilon(1e-14));

  // constants carry no directions
  const Jet c = Jet(2.5) * a - a;
  CHECK(c.d(0) == doctest::Approx(1.5));
  CHECK(Jet(4.0).dirs() == 0);
}

TEST_CASE("context seeds coordinate directions") {
  auto rng = oracle::rng_for(41, 0);
  const auto ph = sample_phase_point(AlgebraDescriptor::hermitian(2), rng);
  JetContext ctx(ph, 0.0);
  const int d = ctx.dim();
  for (int i = 0; i < d; ++i) {
    const Jet qi = coord_q(i)(ctx);
    CHECK(qi.value() == ph.point.q[static_cast<size_t>(i)]);
    for (int k = 0; k < 2 * d; ++k) CHECK(qi.d(k) == (k == i ? 1.0 : 0.0));
    const Jet pi = coord_p(i)(ctx);
    for (int k = 0; k < 2 * d; ++k) CHECK(pi.d(k) == (k == d + i ? 1.0 : 0.0));
  }
  const Jet c = obs_constant(3.25)(ctx);
  CHECK(c.dirs() == 0);
  CHECK(c.value() == 3.25);
}

TEST_CASE("canonical coordinate brackets are exact") {
  auto rng = oracle::rng_for(42, 0);
  const auto ph = sample_phase_point(AlgebraDescriptor::hermitian(2), rng);
  const double mu = 0.6;
  JetContext ctx(ph, mu);
  const int d = ctx.dim();
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      CHECK(bracket(coord_q(i), coord_q(j), ctx) == 0.0);
      CHECK(bracket(coord_q(i), coord_p(j), ctx) == (i == j ? 1.0 : 0.0));
      // {p_i, p_j} equals the curvature matrix entry exactly
      CHECK(bracket(coord_p(i), coord_p(j), ctx) == ctx.F()(i, j));
    }

  // mu = 0 reduces to the canonical bracket
  JetContext ctx0(ph, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) CHECK(bracket(coord_p(i), coord_p(j), ctx0) == 0.0);
}

TEST_CASE("position brackets vanish and mixed brackets project") {
  for (auto desc : {AlgebraDescriptor::hermitian(2), AlgebraDescriptor::hermitian(3),
                    AlgebraDescriptor::gamma3()}) {
    auto rng = oracle::rng_for(43, static_cast<uint64_t>(desc.n + desc.dim));
    for (int t = 0; t < 30; ++t) {
      const auto ph = sample_phase_point(desc, rng);
      const auto u = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      JetContext ctx(ph, 0.0);
      CHECK(std::abs(bracket(obs_inner_x(u), obs_inner_x(v), ctx)) < 1e-12);
      const double got = bracket(obs_inner_x(u), obs_inner_pi(v), ctx);
      const double want = desc.tag == AlgebraTag::Hn
                              ? inner_projection_dense(u, v, ph.x)
                              : inner(u, project_bar(ph.x, v));
      CHECK(std::abs(got - want) < 1e-10 * (1.0 + std::abs(want)));
    }
  }
}

TEST_CASE("momentum bracket matches the second-derivative frame formula") {
  for (double mu : {0.0, 0.5, -1.3}) {
    auto rng = oracle::rng_for(44, static_cast<uint64_t>(mu * 10 + 20));
    const auto desc = AlgebraDescriptor::hermitian(3);
    for (int t = 0; t < 30; ++t) {
      const auto ph = sample_phase_point(desc, rng);
      const auto u = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      const double lhs = bracket(obs_inner_pi(u), obs_inner_pi(v), ph, mu);
      const double rhs = bracket_pipi_frame_formula(u, v, ph, mu);
      CHECK(rel_residual(lhs, rhs) < 1e-9);
    }
  }
}

TEST_CASE("momentum contraction identity for tangent fields") {
  // mu = 0: the contraction vanishes
  for (auto desc : {AlgebraDescriptor::hermitian(2), AlgebraDescriptor::gamma3()}) {
    auto rng = oracle::rng_for(45, static_cast<uint64_t>(desc.n + desc.dim));
    for (int t = 0; t < 30; ++t) {
      const auto ph = sample_phase_point(desc, rng);
      const auto u = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      const TangentField tu = [u](const Element<double>& x) { return project_bar(x, u); };
      const TangentField tv = [v](const Element<double>& x) { return project_bar(x, v); };
      CHECK(bracket_pp_residual(tu, tv, ph, 0.0) < 1e-10);
      // identical fields: both sides vanish
      CHECK(bracket_pp_residual(tu, tu, ph, 0.0) < 1e-12);
    }
  }

  // mu != 0: the curvature value
  auto rng = oracle::rng_for(46, 0);
  const auto desc = AlgebraDescriptor::hermitian(3);
  for (int t = 0; t < 30; ++t) {
    const auto ph = sample_phase_point(desc, rng);
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const TangentField tu = [u](const Element<double>& x) { return project_bar(x, u); };
    const TangentField tv = [v](const Element<double>& x) { return icomm(v, x); };
    CHECK(bracket_pp_residual(tu, tv, ph, 0.7) < 1e-9);
    CHECK(bracket_pp_residual(tu, tu, ph, 0.7) < 1e-12);
  }
}

TEST_CASE("bracket is antisymmetric and satisfies the Leibniz rule") {
  auto rng = oracle::rng_for(47, 0);
  const auto desc = AlgebraDescriptor::hermitian(2);
  for (double mu : {0.0, 0.9}) {
    for (int t = 0; t < 25; ++t) {
      const auto ph = sample_phase_point(desc, rng);
      const auto u = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      const auto w = sample_hermitian(desc, rng);
      const Observable f = obs_inner_pi(u);
      const Observable g = gen_X(v, mu);
      const Observable h = obs_inner_x(w);
      JetContext ctx(ph, mu);
      const double fg = bracket(f, g, ctx);
      CHECK(rel_residual(fg, -bracket(g, f, ctx)) < 1e-13);
      // {f, g h} = {f,g} h + g {f,h}
      const double lhs = bracket(f, obs_product(g, h), ctx);
      const double rhs = fg * eval_value(h, ph, mu) + eval_value(g, ph, mu) * bracket(f, h, ctx);
      CHECK(rel_residual(lhs, rhs) < 1e-11);
      // bilinear
      const Observable sum = {"sum", [g, h](const JetContext& c) { return g(c) + h(c); }};
      CHECK(rel_residual(bracket(f, sum, ctx), fg + bracket(f, h, ctx)) < 1e-12);
    }
  }
}

TEST_CASE("jacobi identity") {
  auto rng = oracle::rng_for(48, 0);
  const auto desc = AlgebraDescriptor::hermitian(2);

  // coordinate triples at mu = 0 are exactly canonical
  {
    const auto ph = sample_phase_point(desc, rng);
    CHECK(std::abs(jacobi_residual(coord_q(0), coord_q(1), coord_p(0), ph, 0.0)) < 1e-12);
  }

  // momentum triples probe closedness of the curvature at mu != 0
  for (int t = 0; t < 10; ++t) {
    const auto ph = sample_phase_point(desc, rng);
    CHECK(std::abs(jacobi_residual(coord_p(0), coord_p(1), coord_p(2), ph, 0.5)) < 1e-7);
  }

  // polynomial observables at mu = 0: central differences are exact here
  for (int t = 0; t < 10; ++t) {
    const auto ph = sample_phase_point(desc, rng);
    const double r = jacobi_residual(obs_product(coord_q(0), coord_p(1)),
                                     obs_product(coord_p(0), coord_p(2)),
                                     obs_product(coord_q(1), coord_q(2)), ph, 0.0);
    CHECK(std::abs(r) < 1e-10);
  }

  // rational observables at mu = 0: limited by finite-difference truncation
  for (int t = 0; t < 10; ++t) {
    const auto ph = sample_phase_point(desc, rng);
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const double r = jacobi_residual(obs_inner_x(u), obs_inner_pi(v),
                                     obs_product(coord_q(0), coord_p(1)), ph, 0.0);
    CHECK(std::abs(r) < 1e-7 * (1.0 + fro_norm(u) * fro_norm(v)));
  }

  // generator triples under the magnetized bracket
  for (int t = 0; t < 5; ++t) {
    const auto ph = sample_phase_point(desc, rng);
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const double r =
        jacobi_residual(gen_X(u, 0.5), gen_Y(v), gen_S(u, v, 0.5), ph, 0.5);
    CHECK(std::abs(r) < 1e-6 * (1.0 + std::abs(eval_value(gen_X(u, 0.5), ph, 0.5))));
  }
}

TEST_CASE("jet gradients match Richardson finite differences") {
  auto rng = oracle::rng_for(49, 0);
  for (auto desc : {AlgebraDescriptor::hermitian(2), AlgebraDescriptor::hermitian(3)}) {
    const double mu = desc.n == 2 ? 0.7 : 0.0;
    for (int t = 0; t < 5; ++t) {
      const auto ph = sample_phase_point(desc, rng);
      const auto u = sample_hermitian(desc, rng);
      const auto v = sample_hermitian(desc, rng);
      for (const Observable& f :
           {gen_X(u, mu), gen_Y(u), gen_S(u, v, mu), gen_L(u), gen_Luv(u, v, mu),
            hamiltonian(desc, mu), lrl(u, mu), casimir_l2(desc, mu), casimir_a2(desc, mu)}) {
        const auto grad = eval_gradient(f, ph, mu);
        double scale = 1.0;
        for (double g : grad) scale = std::max(scale, std::abs(g));
        for (int dir = 0; dir < 2 * desc.cone_dim(); ++dir) {
          const double fd = oracle::fd_gradient(f, ph, mu, dir);
          CHECK(std::abs(fd - grad[static_cast<size_t>(dir)]) < 1e-7 * scale);
        }
      }
    }
  }
}

TEST_CASE("magnetic trace contractions are real") {
  const auto desc = AlgebraDescriptor::hermitian(4);
  auto rng = oracle::rng_for(50, 0);
  for (int t = 0; t < 100; ++t) {
    const auto x = sample_cone_point(desc, rng);
    const auto u = sample_hermitian(desc, rng);
    const auto v = sample_hermitian(desc, rng);
    const double scale = fro_norm(x) * fro_norm(u) * fro_norm(v);
    CHECK(std::abs(itr_comm_imag(x, u, v)) < 1e-14 * (1.0 + scale));
  }
}

TEST_SUITE_END();
