#include "ukepler/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace ukepler {

namespace {

struct ReportBuilder {
  SuiteReport rep;

  explicit ReportBuilder(std::string suite, double tol) {
    rep.suite = std::move(suite);
    rep.tolerance = tol;
  }

  void record(const std::string& name, const std::string& algebra, int n, double mu,
              uint64_t trial, double residual, double tol) {
    for (auto& row : rep.identities) {
      if (row.name == name && row.algebra == algebra && row.n == n && row.mu == mu) {
        if (residual > row.max_residual) {
          row.max_residual = residual;
          row.argmax_trial = trial;
        }
        return;
      }
    }
    rep.identities.push_back({name, algebra, n, mu, residual, trial, tol});
  }

  SuiteReport finish() {
    rep.pass = true;
    rep.max_residual = 0.0;
    for (const auto& row : rep.identities) {
      rep.max_residual = std::max(rep.max_residual, row.max_residual);
      if (row.max_residual > row.tolerance) rep.pass = false;
    }
    return std::move(rep);
  }
};

// residual of a matrix identity, relative to the operand scales
double mat_rel(const Element<double>& lhs, const Element<double>& rhs) {
  return fro_norm(lhs - rhs) / (1.0 + fro_norm(lhs) + fro_norm(rhs));
}

CMatrix<double> cm_sub(const CMatrix<double>& a, const CMatrix<double>& b) {
  CMatrix<double> r = a;
  for (size_t k = 0; k < r.a.size(); ++k) r.a[k] -= b.a[k];
  return r;
}

CMatrix<double> cm_scale(double s, const CMatrix<double>& a) {
  CMatrix<double> r = a;
  for (auto& c : r.a) c = Cxd(s * c.re, s * c.im);
  return r;
}

CMatrix<double> cm_comm(const CMatrix<double>& a, const CMatrix<double>& b) {
  return cm_sub(cmul(a, b), cmul(b, a));
}

double cmat_rel(const CMatrix<double>& lhs, const CMatrix<double>& rhs) {
  return fro_norm(cm_sub(lhs, rhs)) / (1.0 + fro_norm(lhs) + fro_norm(rhs));
}

constexpr uint64_t kSuiteMatrix = 1, kSuiteJordan = 2, kSuiteLemma = 3, kSuiteRealization = 4,
                   kSuiteQuadratic = 5, kSuiteKepler = 6;

}  // namespace

SuiteReport suite_matrix_identities(const std::vector<int>& n_list, int trials, uint64_t seed,
                                    double tol) {
  ReportBuilder b("matrix_identities", tol);
  b.rep.algebra = "hn";
  b.rep.n_list = n_list;
  b.rep.trials = trials;
  b.rep.seed = seed;

  for (size_t ni = 0; ni < n_list.size(); ++ni) {
    const auto desc = AlgebraDescriptor::hermitian(n_list[ni]);
    const int n = desc.n;
    for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
      std::mt19937_64 rng(derive_seed(seed, kSuiteMatrix, ni, trial));
      Element<double> x = sample_cone_point(desc, rng);
      Element<double> u = sample_hermitian(desc, rng);
      Element<double> v = sample_hermitian(desc, rng);
      if (trial % 16 == 1) u = Element<double>::identity(desc);  // degenerate case
      if (trial % 7 == 2) x = 1e3 * x;                           // homogeneity case
      const double tx = trace(x);

      auto rec = [&](const char* name, double r) { b.record(name, "hn", n, 0.0, trial, r, tol); };

      rec("x2_eq_trx_x", mat_rel(jmul(x, x), tx * x));

      const auto X = to_cmatrix(x);
      const auto U = to_cmatrix(u);
      rec("xux_eq_trxu_x",
          mat_rel(Element<double>::hermitize(desc, cmul(cmul(X, U), X)),
                  trace(jmul(x, u)) * x));

      // [x,[x,u]]/2 = tr x xu - tr(xu) x
      const auto inner_comm = cm_comm(X, U);
      const auto double_comm = cm_comm(X, inner_comm);
      rec("double_comm",
          mat_rel(Element<double>::hermitize(desc, cm_scale(0.5, double_comm)),
                  tx * jmul(x, u) - trace(jmul(x, u)) * x));

      // [x, ux] = (tr x / 2) [x, u]
      rec("comm_x_ux",
          cmat_rel(commutator(x, jmul(u, x)), cm_scale(0.5 * tx, commutator(x, u))));

      // tr(x[ux, v]) = tr x tr(x[u,v]) / 2; normalized by the product scale
      // since both sides vanish for commuting operands
      {
        const double lhs = itr_comm(x, jmul(u, x), v);
        const double rhs = 0.5 * tx * itr_comm(x, u, v);
        const double scale = fro_norm(x) * fro_norm(x) * fro_norm(u) * fro_norm(v);
        rec("trace_comm", std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs) + scale));
      }

      // L_{u,v} w = [[u,v],w]/4 for arbitrary hermitian w
      const Element<double> w = sample_hermitian(desc, rng);
      const auto W = to_cmatrix(w);
      rec("lcomm_quarter",
          mat_rel(lcomm(u, v, w),
                  Element<double>::hermitize(desc, cm_scale(0.25, cm_comm(cm_comm(U, to_cmatrix(v)), W)))));

      // i[u,x] is tangent at x
      const Element<double> t = icomm(u, x);
      rec("icomm_tangent", mat_rel(project_bar(x, t), t));

      // tangent pi: 2 pi x = tr x pi + tr pi x   (use unscaled x for sampling pi)
      const Element<double> pi = project_bar(x, v);
      rec("tangent_identity", mat_rel(2.0 * jmul(pi, x), tx * pi + trace(pi) * x));
    }
  }
  return b.finish();
}

SuiteReport suite_jordan_axioms(const std::vector<int>& n_list, int trials, uint64_t seed,
                                double tol) {
  ReportBuilder b("jordan_axioms", tol);
  b.rep.algebra = "hn+gamma3";
  b.rep.n_list = n_list;
  b.rep.trials = trials;
  b.rep.seed = seed;

  std::vector<AlgebraDescriptor> descs;
  for (int n : n_list) descs.push_back(AlgebraDescriptor::hermitian(n));
  descs.push_back(AlgebraDescriptor::gamma3());

  for (size_t di = 0; di < descs.size(); ++di) {
    const auto& desc = descs[di];
    const std::string alg = tag_name(desc.tag);
    const int n = desc.tag == AlgebraTag::Hn ? desc.n : 0;
    const Element<double> e = Element<double>::identity(desc);
    const auto basis = onb(desc);

    for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
      std::mt19937_64 rng(derive_seed(seed, kSuiteJordan, di, trial));
      const Element<double> u = sample_hermitian(desc, rng);
      const Element<double> v = sample_hermitian(desc, rng);
      const Element<double> z = sample_hermitian(desc, rng);
      const Element<double> w = sample_hermitian(desc, rng);

      auto rec = [&](const char* name, double r) { b.record(name, alg, n, 0.0, trial, r, tol); };

      const Element<double> u2 = jmul(u, u);
      rec("jordan_identity", mat_rel(jmul(u, jmul(u2, w)), jmul(u2, jmul(u, w))));
      rec("L_self_adjoint", rel_residual(inner(jmul(u, v), w), inner(v, jmul(u, w))));
      rec("smap_comm",
          mat_rel(smap(u, v, smap(z, w, v + w)) - smap(z, w, smap(u, v, v + w)),
                  smap(smap(u, v, z), w, v + w) - smap(z, smap(v, u, w), v + w)));
      rec("triple_outer_symmetry", mat_rel(smap(u, v, w), smap(w, v, u)));
      rec("s_ue_eq_lu", mat_rel(smap(u, e, w), jmul(u, w)));
      rec("s_eu_eq_lu", mat_rel(smap(e, u, w), jmul(u, w)));

      if (trial == 0) {
        // orthonormality and completeness of the basis
        double gram = 0.0;
        for (size_t a = 0; a < basis.size(); ++a)
          for (size_t c = 0; c < basis.size(); ++c)
            gram = std::max(gram,
                            std::abs(inner(basis[a], basis[c]) - (a == c ? 1.0 : 0.0)));
        rec("onb_gram", gram);

        Element<double> rebuilt = Element<double>::zero(desc);
        for (const auto& ea : basis) rebuilt = rebuilt + inner(ea, u) * ea;
        rec("onb_completeness", mat_rel(rebuilt, u));

        if (desc.tag == AlgebraTag::Hn) {
          Element<double> sq = Element<double>::zero(desc);
          for (const auto& ea : basis) sq = sq + jmul(ea, ea);
          rec("onb_sum_squares", mat_rel(sq, static_cast<double>(desc.dim) * e));

          // sum_b L_{e_b}^2 = (n^2/2)(L_e + |e><e|) applied to w
          Element<double> lhs = Element<double>::zero(desc);
          for (const auto& eb : basis) lhs = lhs + jmul(eb, jmul(eb, w));
          const Element<double> rhs =
              (0.5 * desc.n * desc.n) * (jmul(e, w) + inner(e, w) * e);
          rec("onb_operator_sum", mat_rel(lhs, rhs));
        }
      }

      rec("trace_identity",
          rel_residual(trace(e), desc.tag == AlgebraTag::Hn ? desc.n : 2.0));
    }
  }
  return b.finish();
}

SuiteReport suite_bracket_lemma(AlgebraTag tag, int n, const std::vector<double>& mu_list,
                                int trials, uint64_t seed, double tol) {
  const AlgebraDescriptor desc =
      tag == AlgebraTag::Hn ? AlgebraDescriptor::hermitian(n) : AlgebraDescriptor::gamma3();
  ReportBuilder b("bracket_lemma", tol);
  b.rep.algebra = tag_name(tag);
  b.rep.n_list = {desc.n};
  b.rep.mu_list = mu_list;
  b.rep.trials = trials;
  b.rep.seed = seed;

  for (size_t mi = 0; mi < mu_list.size(); ++mi) {
    const double mu = mu_list[mi];
    if (tag == AlgebraTag::Gamma3 && mu != 0.0)
      throw_unsupported("bracket lemma suite: spin factor requires mu = 0");
    for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
      std::mt19937_64 rng(derive_seed(seed, kSuiteLemma, mi, trial));
      const PhasePoint ph = sample_phase_point(desc, rng);
      const Element<double> u = sample_hermitian(desc, rng);
      const Element<double> v = sample_hermitian(desc, rng);

      auto rec = [&](const char* name, double r) {
        b.record(name, tag_name(tag), desc.n, mu, trial, r, tol);
      };

      JetContext ctx(ph, mu);
      rec("xx_zero", rel_residual(bracket(obs_inner_x(u), obs_inner_x(v), ctx), 0.0));
      rec("x_pi_projection",
          rel_residual(bracket(obs_inner_x(u), obs_inner_pi(v), ctx),
                       inner(u, project_bar(ph.x, v))));
      rec("pipi_frame_formula",
          rel_residual(bracket(obs_inner_pi(u), obs_inner_pi(v), ctx),
                       bracket_pipi_frame_formula(u, v, ph, mu)));

      // momentum contraction for tangent fields
      const TangentField tf_u = [u](const Element<double>& x) { return project_bar(x, u); };
      const TangentField tf_v =
          tag == AlgebraTag::Hn
              ? TangentField([v](const Element<double>& x) { return icomm(v, x); })
              : TangentField([v](const Element<double>& x) { return project_bar(x, v); });
      rec("pipi_tangent_contraction", bracket_pp_residual(tf_u, tf_v, ph, mu));
    }
  }
  return b.finish();
}

SuiteReport suite_realization(AlgebraTag tag, int n, const std::vector<double>& mu_list,
                              int trials, uint64_t seed, double tol, GenVariant variant) {
  const AlgebraDescriptor desc =
      tag == AlgebraTag::Hn ? AlgebraDescriptor::hermitian(n) : AlgebraDescriptor::gamma3();
  ReportBuilder b("realization", tol);
  b.rep.algebra = tag_name(tag);
  b.rep.n_list = {desc.n};
  b.rep.mu_list = mu_list;
  b.rep.trials = trials;
  b.rep.seed = seed;

  for (size_t mi = 0; mi < mu_list.size(); ++mi) {
    const double mu = mu_list[mi];
    if (tag == AlgebraTag::Gamma3 && mu != 0.0)
      throw_unsupported("realization suite: spin factor requires mu = 0");
    for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
      std::mt19937_64 rng(derive_seed(seed, kSuiteRealization, mi, trial));
      const PhasePoint ph = sample_phase_point(desc, rng);
      const Element<double> u = sample_hermitian(desc, rng);
      const Element<double> v = sample_hermitian(desc, rng);
      const Element<double> z = sample_hermitian(desc, rng);
      const Element<double> w = sample_hermitian(desc, rng);

      auto rec = [&](const char* name, double r) {
        b.record(name, tag_name(tag), desc.n, mu, trial, r, tol);
      };

      JetContext ctx(ph, mu);
      auto val = [&](const Observable& o) { return eval_value(o, ph, mu); };

      const Observable Xu = gen_X(u, mu, variant), Xv = gen_X(v, mu, variant),
                       Xz = gen_X(z, mu, variant);
      const Observable Yu = gen_Y(u), Yv = gen_Y(v), Yz = gen_Y(z);
      const Observable Suv = gen_S(u, v, mu, variant), Szw = gen_S(z, w, mu, variant);

      rec("XX_zero", rel_residual(bracket(Xu, Xv, ctx), 0.0));
      rec("YY_zero", rel_residual(bracket(Yu, Yv, ctx), 0.0));
      rec("XY_eq_minus2S", rel_residual(bracket(Xu, Yv, ctx), -2.0 * val(Suv)));
      rec("SX", rel_residual(bracket(Suv, Xz, ctx),
                             val(gen_X(smap(u, v, z), mu, variant))));
      rec("SY", rel_residual(bracket(Suv, Yz, ctx), -val(gen_Y(smap(v, u, z)))));
      rec("SS", rel_residual(bracket(Suv, Szw, ctx),
                             val(gen_S(smap(u, v, z), w, mu, variant)) -
                                 val(gen_S(z, smap(v, u, w), mu, variant))));

      const Observable Lu = gen_L(u), Lv = gen_L(v), Lz = gen_L(z);
      rec("LL_eq_Luv",
          rel_residual(bracket(Lu, Lv, ctx), val(gen_Luv(u, v, mu, variant))));
      rec("LuvL_eq_Lrot", rel_residual(bracket(gen_Luv(u, v, mu, variant), Lz, ctx),
                                       val(gen_L(lcomm(u, v, z)))));
    }
  }
  return b.finish();
}

SuiteReport suite_quadratic(const std::vector<int>& n_list, const std::vector<double>& mu_list,
                            int trials, uint64_t seed, double tol, GenVariant variant) {
  ReportBuilder b("quadratic_relations", tol);
  b.rep.algebra = "hn";
  b.rep.n_list = n_list;
  b.rep.mu_list = mu_list;
  b.rep.trials = trials;
  b.rep.seed = seed;

  for (size_t ni = 0; ni < n_list.size(); ++ni) {
    const auto desc = AlgebraDescriptor::hermitian(n_list[ni]);
    const int n = desc.n;
    const auto basis = onb(desc);
    const Element<double> e = Element<double>::identity(desc);

    for (size_t mi = 0; mi < mu_list.size(); ++mi) {
      const double mu = mu_list[mi];
      for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
        std::mt19937_64 rng(derive_seed(seed, kSuiteQuadratic, ni * 64 + mi, trial));
        const PhasePoint ph = sample_phase_point(desc, rng);
        const Element<double> u = sample_hermitian(desc, rng);

        auto rec = [&](const char* name, double lhs, double rhs) {
          b.record(name, "hn", n, mu, trial, rel_residual(lhs, rhs), tol);
        };
        auto val = [&](const Observable& o) { return eval_value(o, ph, mu); };

        const double Xe = val(gen_X(e, mu, variant));
        const double Ye = val(gen_Y(e));
        const double Le = val(gen_L(e));
        std::vector<double> Xa, Ya, La, LuvA;
        for (const auto& ea : basis) {
          Xa.push_back(val(gen_X(ea, mu, variant)));
          Ya.push_back(val(gen_Y(ea)));
          La.push_back(val(gen_L(ea)));
          LuvA.push_back(val(gen_Luv(ea, u, mu, variant)));
        }

        double sum_L2 = 0, sum_XL = 0, sum_YL = 0, sum_LuvL = 0, sum_X2 = 0, sum_Y2 = 0,
               sum_LuvX = 0, sum_LuvY = 0, sum_XY = 0;
        for (size_t a = 0; a < basis.size(); ++a) {
          sum_L2 += La[a] * La[a];
          sum_XL += Xa[a] * La[a];
          sum_YL += Ya[a] * La[a];
          sum_LuvL += LuvA[a] * La[a];
          sum_X2 += Xa[a] * Xa[a];
          sum_Y2 += Ya[a] * Ya[a];
          sum_LuvX += LuvA[a] * Xa[a];
          sum_LuvY += LuvA[a] * Ya[a];
          sum_XY += Xa[a] * Ya[a];
        }

        rec("qr_i_primary", 2.0 / n * sum_L2 - Le * Le - Xe * Ye, -mu * mu);
        rec("qr_ii_XL", sum_XL, n * Xe * Le);
        rec("qr_ii_YL", sum_YL, n * Ye * Le);
        rec("qr_iii_LuvL", 4.0 / n * sum_LuvL, -val(gen_X(u, mu, variant)) * Ye +
                                                   Xe * val(gen_Y(u)));
        rec("qr_iv_X2", sum_X2, n * Xe * Xe);
        rec("qr_iv_Y2", sum_Y2, n * Ye * Ye);
        rec("qr_v_LuvX", 2.0 / n * sum_LuvX,
            -val(gen_X(u, mu, variant)) * Le + val(gen_L(u)) * Xe);
        rec("qr_v_LuvY", 2.0 / n * sum_LuvY, val(gen_Y(u)) * Le - val(gen_L(u)) * Ye);
        rec("qr_vi_XY", sum_XY, n * (Le * Le + mu * mu));

        const double L2 = val(casimir_l2(desc, mu, variant));
        const double A2 = val(casimir_a2(desc, mu, variant));
        rec("qr_vii_Luv2", 8.0 / (n * n * n) * L2,
            Xe * Ye - Le * Le + (n - 2.0) / n * mu * mu);

        const double H = val(hamiltonian(desc, mu, variant));
        rec("hla", -2.0 * H * (L2 - n * n * (n - 1.0) * mu * mu / 4.0),
            (n / 2.0) * (n / 2.0) * (n - 1.0 - A2));

        const double tx = trace(ph.x);
        const double tp = trace(ph.pi);
        const double tp2 = trace(jmul(ph.pi, ph.pi));
        rec("l_sum_closed_form", 2.0 / n * sum_L2,
            tx * tx / (2.0 * n * n) * (tp2 + 3.0 * tp * tp));
      }
    }
  }
  return b.finish();
}

namespace {

// Plain R^3 Kepler integrator used as the independent reference flow:
// qdot = p, pdot = -q/|q|^3, classical RK4 on the flat phase space.
struct KeplerState {
  std::array<double, 3> r, p;
};

KeplerState kepler_rk4_step(const KeplerState& s, double dt) {
  auto acc = [](const std::array<double, 3>& r) {
    const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const double c = -1.0 / (rn * rn * rn);
    return std::array<double, 3>{c * r[0], c * r[1], c * r[2]};
  };
  auto axpy = [](const std::array<double, 3>& a, double h, const std::array<double, 3>& b) {
    return std::array<double, 3>{a[0] + h * b[0], a[1] + h * b[1], a[2] + h * b[2]};
  };
  const auto k1r = s.p, k1p = acc(s.r);
  const auto k2r = axpy(s.p, 0.5 * dt, k1p), k2p = acc(axpy(s.r, 0.5 * dt, k1r));
  const auto k3r = axpy(s.p, 0.5 * dt, k2p), k3p = acc(axpy(s.r, 0.5 * dt, k2r));
  const auto k4r = axpy(s.p, dt, k3p), k4p = acc(axpy(s.r, dt, k3r));
  KeplerState out;
  for (int i = 0; i < 3; ++i) {
    out.r[i] = s.r[i] + dt / 6.0 * (k1r[i] + 2 * k2r[i] + 2 * k3r[i] + k4r[i]);
    out.p[i] = s.p[i] + dt / 6.0 * (k1p[i] + 2 * k2p[i] + 2 * k3p[i] + k4p[i]);
  }
  return out;
}

// (r, p) in the global light-cone chart of a level-2 phase point.
std::pair<std::array<double, 3>, std::array<double, 3>> map_level2_state(const PhasePoint& ph) {
  const Element<double> xg = h2_to_gamma3(ph.x);
  const Element<double> pig = h2_to_gamma3(ph.pi);
  auto [cp, p] = unlift(xg, pig);
  return {{cp.q[0], cp.q[1], cp.q[2]}, {p[0], p[1], p[2]}};
}

std::array<double, 3> classical_lrl(const std::array<double, 3>& r,
                                    const std::array<double, 3>& p) {
  const std::array<double, 3> l{r[1] * p[2] - r[2] * p[1], r[2] * p[0] - r[0] * p[2],
                                r[0] * p[1] - r[1] * p[0]};
  const std::array<double, 3> lxp{l[1] * p[2] - l[2] * p[1], l[2] * p[0] - l[0] * p[2],
                                  l[0] * p[1] - l[1] * p[0]};
  const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
  return {lxp[0] + r[0] / rn, lxp[1] + r[1] / rn, lxp[2] + r[2] / rn};
}

}  // namespace

SuiteReport suite_kepler_crosscheck(int trials, uint64_t seed, const FlowConfig& flow,
                                    double tol_pointwise, double tol_dynamic) {
  ReportBuilder b("kepler_crosscheck", tol_pointwise);
  const auto g3 = AlgebraDescriptor::gamma3();
  const auto h2 = AlgebraDescriptor::hermitian(2);
  b.rep.algebra = "hn+gamma3";
  b.rep.n_list = {2};
  b.rep.mu_list = {0.0};
  b.rep.trials = trials;
  b.rep.seed = seed;

  const auto basis3 = onb(g3);  // e0, e1, e2, e3
  const auto sigma = onb(h2);   // I, diag family, off-diagonal pairs

  // (a) pointwise generator values on random light-cone phase points
  for (uint64_t trial = 0; trial < static_cast<uint64_t>(trials); ++trial) {
    std::mt19937_64 rng(derive_seed(seed, kSuiteKepler, 0, trial));
    const PhasePoint ph = sample_phase_point(g3, rng);
    const std::array<double, 3> r{ph.point.q[0], ph.point.q[1], ph.point.q[2]};
    const std::array<double, 3> p{ph.p[0], ph.p[1], ph.p[2]};
    const double rn = std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
    const double p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    const double rp = r[0] * p[0] + r[1] * p[1] + r[2] * p[2];

    auto rec = [&](const std::string& name, double lhs, double rhs, double tol) {
      b.record(name, "gamma3", 2, 0.0, trial, rel_residual(lhs, rhs), tol);
    };

    rec("H_vs_classical", eval_value(hamiltonian(g3, 0.0), ph, 0.0), 0.5 * p2 - 1.0 / rn,
        tol_pointwise);
    rec("Xe_vs_rp2", eval_value(gen_X(basis3[0], 0.0), ph, 0.0), rn * p2, tol_pointwise);

    const auto lrl_cl = classical_lrl(r, p);
    const std::array<double, 3> xvec_cl{2.0 * rp * p[0] - r[0] * p2,
                                        2.0 * rp * p[1] - r[1] * p2,
                                        2.0 * rp * p[2] - r[2] * p2};
    for (int i = 0; i < 3; ++i) {
      rec("Y_vs_position", eval_value(gen_Y(basis3[i + 1]), ph, 0.0), r[i], tol_pointwise);
      rec("X_vs_classical", eval_value(gen_X(basis3[i + 1], 0.0), ph, 0.0), xvec_cl[i],
          tol_pointwise);
      rec("LRL_vs_classical", eval_value(lrl(basis3[i + 1], 0.0), ph, 0.0), lrl_cl[i],
          tol_pointwise);
    }
    const std::array<double, 3> l_cl{r[1] * p[2] - r[2] * p[1], r[2] * p[0] - r[0] * p[2],
                                     r[0] * p[1] - r[1] * p[0]};
    rec("L2_vs_classical", eval_value(casimir_l2(g3, 0.0), ph, 0.0),
        l_cl[0] * l_cl[0] + l_cl[1] * l_cl[1] + l_cl[2] * l_cl[2], tol_pointwise);

    // (c) same observables through the order-2 matrix chart
    auto [cp2, p2v] = unlift(gamma3_to_h2(ph.x), gamma3_to_h2(ph.pi));
    const PhasePoint ph2 = lift(cp2, p2v);
    rec("chart_agreement_H", eval_value(hamiltonian(h2, 0.0), ph2, 0.0),
        eval_value(hamiltonian(g3, 0.0), ph, 0.0), tol_pointwise);
    rec("chart_agreement_L2", eval_value(casimir_l2(h2, 0.0), ph2, 0.0),
        eval_value(casimir_l2(g3, 0.0), ph, 0.0), tol_pointwise);
    for (int i = 0; i < 3; ++i)
      rec("chart_agreement_LRL",
          eval_value(lrl(gamma3_to_h2(basis3[i + 1]), 0.0), ph2, 0.0),
          eval_value(lrl(basis3[i + 1], 0.0), ph, 0.0), tol_pointwise);
  }

  // (b) circular orbit: period 2 pi
  {
    FlowConfig cfg = flow;
    cfg.t_end = 7.0;
    cfg.monitor_stride = 10;
    const TrajectoryRecord rec = integrate(preset_circular(), 0.0, cfg);
    double theta_prev = 0.0, period = 0.0;
    bool found = false;
    double unwrapped_prev = 0.0;
    for (size_t k = 1; k < rec.states.size() && !found; ++k) {
      const auto [r, p] = map_level2_state(rec.states[k]);
      (void)p;
      double theta = std::atan2(r[1], r[0]);
      if (k == 1) {
        const auto [r0, p0] = map_level2_state(rec.states[0]);
        (void)p0;
        theta_prev = std::atan2(r0[1], r0[0]);
        unwrapped_prev = 0.0;
      }
      double dtheta = theta - theta_prev;
      while (dtheta < -3.141592653589793) dtheta += 2.0 * 3.141592653589793;
      while (dtheta > 3.141592653589793) dtheta -= 2.0 * 3.141592653589793;
      const double unwrapped = unwrapped_prev + dtheta;
      const double target = 2.0 * 3.14159265358979323846;
      if (unwrapped >= target) {
        const double t0 = rec.times[k - 1], t1 = rec.times[k];
        period = t0 + (target - unwrapped_prev) * (t1 - t0) / (unwrapped - unwrapped_prev);
        found = true;
      }
      theta_prev = theta;
      unwrapped_prev = unwrapped;
    }
    b.record("circular_period", "hn", 2, 0.0, 0,
             found ? std::abs(period - 2.0 * 3.14159265358979323846) : 1.0, tol_dynamic);
  }

  // (b) trajectory match against the direct R^3 flow over [0, 50]
  {
    FlowConfig cfg = flow;
    cfg.t_end = 50.0;
    cfg.monitor_stride = 100;
    const PhasePoint init = preset_elliptic();
    const TrajectoryRecord rec = integrate(init, 0.0, cfg);

    KeplerState ks;
    std::tie(ks.r, ks.p) = map_level2_state(init);
    double t_oracle = 0.0;
    double worst = 0.0;
    size_t idx = 0;
    // march the oracle to each recorded sample time
    for (size_t k = 0; k < rec.times.size(); ++k) {
      while (t_oracle < rec.times[k] - 1e-12) {
        const double h = std::min(cfg.dt, rec.times[k] - t_oracle);
        ks = kepler_rk4_step(ks, h);
        t_oracle += h;
      }
      const auto [r, p] = map_level2_state(rec.states[k]);
      for (int i = 0; i < 3; ++i) {
        worst = std::max(worst, std::abs(r[i] - ks.r[i]));
        worst = std::max(worst, std::abs(p[i] - ks.p[i]));
      }
      ++idx;
    }
    (void)idx;
    b.record("trajectory_match", "hn", 2, 0.0, 0, worst, tol_dynamic);

    // LRL direction constancy over ~5 periods of the elliptic orbit
    FlowConfig cfg5 = flow;
    cfg5.t_end = 75.0;
    cfg5.monitor_stride = 100;
    const TrajectoryRecord rec5 = integrate(init, 0.0, cfg5);
    const auto [r0, p0] = map_level2_state(rec5.states[0]);
    const auto a0 = classical_lrl(r0, p0);
    const double a0n = std::sqrt(a0[0] * a0[0] + a0[1] * a0[1] + a0[2] * a0[2]);
    double drift = 0.0;
    for (const auto& st : rec5.states) {
      const auto [r, p] = map_level2_state(st);
      const auto a = classical_lrl(r, p);
      const double an = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
      for (int i = 0; i < 3; ++i)
        drift = std::max(drift, std::abs(a[i] / an - a0[i] / a0n));
    }
    b.record("lrl_direction_drift", "hn", 2, 0.0, 0, drift, 1e-7);
  }

  return b.finish();
}

std::string report_to_json(const SuiteReport& rep, int indent) {
  nlohmann::json j;
  j["suite"] = rep.suite;
  j["algebra"] = rep.algebra;
  j["n_list"] = rep.n_list;
  j["mu_list"] = rep.mu_list;
  j["trials"] = rep.trials;
  j["seed"] = rep.seed;
  j["tolerance"] = rep.tolerance;
  j["max_residual"] = rep.max_residual;
  j["pass"] = rep.pass;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : rep.identities) {
    rows.push_back({{"name", row.name},
                    {"algebra", row.algebra},
                    {"n", row.n},
                    {"mu", row.mu},
                    {"max_residual", row.max_residual},
                    {"argmax_trial", row.argmax_trial},
                    {"tolerance", row.tolerance}});
  }
  j["identities"] = rows;
  return j.dump(indent);
}

}  // namespace ukepler
