#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ukepler/dynamics.hpp"

namespace ukepler {

// Worst residual seen for one identity across the trial grid, with the trial
// that attained it. Residuals are relative: |lhs-rhs| / (1 + |lhs| + |rhs|).
struct IdentityStat {
  std::string name;
  std::string algebra;
  int n = 0;
  double mu = 0.0;
  double max_residual = 0.0;
  uint64_t argmax_trial = 0;
  double tolerance = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::string algebra;
  std::vector<int> n_list;
  std::vector<double> mu_list;
  int trials = 0;
  uint64_t seed = 0;
  double tolerance = 0.0;
  double max_residual = 0.0;
  bool pass = false;
  std::vector<IdentityStat> identities;
};

// Rank-one matrix identities on random cone points: x^2 = tr x x,
// x.u.x = tr(xu) x, the double-commutator identity, [x, ux] = (tr x/2)[x,u],
// tr(x[ux,v]) = tr x tr(x[u,v])/2, L_{u,v} x = [[u,v],x]/4 on arbitrary
// hermitian x, tangency of i[u,x], and the tangent-vector identity
// 2 pi x = tr x pi + tr pi x.
SuiteReport suite_matrix_identities(const std::vector<int>& n_list, int trials, uint64_t seed,
                                    double tol = 1e-12);

// Jordan-algebra and structure-algebra axioms: the Jordan identity,
// self-adjointness of L_u, the [S_uv, S_zw] operator identity, outer-slot
// symmetry of the triple product, and orthonormal-basis sum rules.
SuiteReport suite_jordan_axioms(const std::vector<int>& n_list, int trials, uint64_t seed,
                                double tol = 1e-12);

// Bracket relations of the (magnetized) phase space: {<u|x>,<v|x>} = 0,
// {<u|x>,<v|pi>} = <u|vbar>, the second-derivative frame formula for
// {<u|pi>,<v|pi>}, and the momentum contraction identity for tangent fields.
SuiteReport suite_bracket_lemma(AlgebraTag tag, int n, const std::vector<double>& mu_list,
                                int trials, uint64_t seed, double tol = 1e-9);

// The full su(n,n) realization bracket table plus the angular-momentum
// building blocks {L_u, L_v} = Luv and {Luv, L_z} = L_{[Lu,Lv]z}.
SuiteReport suite_realization(AlgebraTag tag, int n, const std::vector<double>& mu_list,
                              int trials, uint64_t seed, double tol = 1e-8,
                              GenVariant variant = GenVariant::Clean);

// Quadratic relations (i)-(vii) among the generators, the closed-form sum
// (tr x)^2 (tr pi^2 + 3 (tr pi)^2) / (2 n^2), and the
// Hamiltonian/angular-momentum/LRL relation.
SuiteReport suite_quadratic(const std::vector<int>& n_list, const std::vector<double>& mu_list,
                            int trials, uint64_t seed, double tol = 1e-10,
                            GenVariant variant = GenVariant::Clean);

// Level-2, mu = 0 reduction to the classical Kepler problem: pointwise
// generator values against the R^3 formulas, chart agreement between the
// matrix picture and the light-cone picture, the circular-orbit period, the
// trajectory match against a directly integrated R^3 Kepler flow, and LRL
// direction constancy on an elliptic orbit.
SuiteReport suite_kepler_crosscheck(int trials, uint64_t seed, const FlowConfig& flow,
                                    double tol_pointwise = 1e-10, double tol_dynamic = 1e-6);

std::string report_to_json(const SuiteReport& rep, int indent = 2);

}  // namespace ukepler
