#pragma once

#include <functional>
#include <string>
#include <utility>

#include "ukepler/cone.hpp"

namespace ukepler {

// Evaluation context for observables at a fixed phase point: the chart
// coordinates and momenta as seeded jets (directions 0..d-1 for q, d..2d-1
// for p), the embedded pair (x, pi) in jet arithmetic, and the curvature
// matrix of the magnetized bracket. With ndirs == 0 the context evaluates
// values only.
class JetContext {
 public:
  JetContext(const PhasePoint& ph, double mu, bool with_dirs = true);
  // Chart-level constructor; skips the double-precision embedding caches.
  JetContext(const ChartPoint& cp, const std::vector<double>& p, double mu,
             bool with_dirs = true);

  const AlgebraDescriptor& descriptor() const { return desc_; }
  int dim() const { return d_; }
  int ndirs() const { return ndirs_; }
  double mu() const { return mu_; }
  const std::vector<Jet>& q() const { return q_; }
  const std::vector<Jet>& p() const { return p_; }
  const Element<Jet>& x() const { return x_; }
  const Element<Jet>& pi() const { return pi_; }
  const SmallMat<double>& F() const { return F_; }

 private:
  AlgebraDescriptor desc_;
  int d_ = 0;
  int ndirs_ = 0;
  double mu_ = 0.0;
  std::vector<Jet> q_, p_;
  Element<Jet> x_, pi_;
  SmallMat<double> F_;
};

// Scalar function on phase space, evaluated through jet arithmetic so its
// exact first derivatives in all chart directions come along for free.
struct Observable {
  std::string label;
  std::function<Jet(const JetContext&)> fn;

  Jet operator()(const JetContext& ctx) const { return fn(ctx); }
};

Observable coord_q(int i);
Observable coord_p(int i);
Observable obs_constant(double c);
Observable obs_inner_x(const Element<double>& u);   // <u|x>
Observable obs_inner_pi(const Element<double>& u);  // <u|pi>

double eval_value(const Observable& f, const PhasePoint& ph, double mu);
std::vector<double> eval_gradient(const Observable& f, const PhasePoint& ph, double mu);

// Poisson bracket of the magnetized structure:
// {f,g} = sum_i (df/dq^i dg/dp_i - df/dp_i dg/dq^i) + sum_ij F_ij df/dp_i dg/dp_j.
double bracket(const Observable& f, const Observable& g, const PhasePoint& ph, double mu);
double bracket(const Observable& f, const Observable& g, const JetContext& ctx);

// Tangent-valued function of the cone point, e.g. x -> projection of a fixed
// element, or x -> i[u, x].
using TangentField = std::function<Element<double>(const Element<double>& x)>;

// Residual of the momentum-momentum contraction identity: with the field
// values u0 = utilde(x), v0 = vtilde(x) frozen at the evaluation point,
// {<u0|pi>, <v0|pi>} must equal -2 mu i tr(x [u0, v0]) / (tr x)^3
// (zero when mu = 0).
double bracket_pp_residual(const TangentField& utilde, const TangentField& vtilde,
                           const PhasePoint& ph, double mu);

// Second-derivative frame expression for {<u|pi>, <v|pi>} with constant u, v:
// p_i g^{il} < u - ubar | d^2 x / dq^j dq^l > <v|E^j> - (u <-> v), plus the
// curvature term <u|E^i> F_ij <v|E^j> when mu != 0.
double bracket_pipi_frame_formula(const Element<double>& u, const Element<double>& v,
                                  const PhasePoint& ph, double mu);

// Cyclic residual {f,{g,h}} + {g,{h,f}} + {h,{f,g}}; the nested level is
// differentiated by central finite differences of single-bracket values.
double jacobi_residual(const Observable& f, const Observable& g, const Observable& h,
                       const PhasePoint& ph, double mu, double fd_step = 1e-5);

// |lhs - rhs| / (1 + |lhs| + |rhs|)
inline double rel_residual(double lhs, double rhs) {
  return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

}  // namespace ukepler
