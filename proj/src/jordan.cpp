#include "ukepler/jordan.hpp"

#include <cmath>

namespace ukepler {

double fro_norm(const Element<double>& u) {
  if (u.desc.tag == AlgebraTag::Hn) {
    double s = 0.0;
    for (const auto& c : u.mat) s += norm_sq(c);
    return std::sqrt(s);
  }
  return std::sqrt(u.g0 * u.g0 + u.gv[0] * u.gv[0] + u.gv[1] * u.gv[1] + u.gv[2] * u.gv[2]);
}

double fro_norm(const CMatrix<double>& m) {
  double s = 0.0;
  for (const auto& c : m.a) s += norm_sq(c);
  return std::sqrt(s);
}

double hermiticity_residual(const Element<double>& u) {
  if (u.desc.tag != AlgebraTag::Hn) return 0.0;
  double r = 0.0;
  for (int i = 0; i < u.desc.n; ++i)
    for (int j = 0; j < u.desc.n; ++j) {
      const Cxd d = u.at(i, j) - conj(u.at(j, i));
      r = std::max(r, std::sqrt(norm_sq(d)));
    }
  return r;
}

std::vector<Element<double>> onb(const AlgebraDescriptor& d) {
  std::vector<Element<double>> basis;
  if (d.tag == AlgebraTag::Gamma3) {
    for (int mu = 0; mu < 4; ++mu) {
      Element<double> e = Element<double>::zero(d);
      if (mu == 0)
        e.g0 = 1.0;
      else
        e.gv[mu - 1] = 1.0;
      basis.push_back(std::move(e));
    }
    return basis;
  }

  const int n = d.n;
  basis.push_back(Element<double>::identity(d));
  // diagonal traceless family: diag(1,...,1,-l,0,...,0)/sqrt(l(l+1)/n)
  for (int l = 1; l < n; ++l) {
    Element<double> e = Element<double>::zero(d);
    const double c = std::sqrt(static_cast<double>(n) / (static_cast<double>(l) * (l + 1)));
    for (int i = 0; i < l; ++i) e.at(i, i) = Cxd(c);
    e.at(l, l) = Cxd(-c * l);
    basis.push_back(std::move(e));
  }
  // off-diagonal pairs
  const double s = std::sqrt(n / 2.0);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      Element<double> sym = Element<double>::zero(d);
      sym.at(j, k) = Cxd(s);
      sym.at(k, j) = Cxd(s);
      basis.push_back(std::move(sym));
      Element<double> asym = Element<double>::zero(d);
      asym.at(j, k) = Cxd(0.0, -s);
      asym.at(k, j) = Cxd(0.0, s);
      basis.push_back(std::move(asym));
    }
  return basis;
}

}  // namespace ukepler
