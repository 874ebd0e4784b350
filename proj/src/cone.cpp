#include "ukepler/cone.hpp"

#include <algorithm>
#include <cmath>

namespace ukepler {

ChartPoint make_chart_point(const AlgebraDescriptor& desc, int pivot, std::vector<double> q) {
  const int dim = desc.cone_dim();
  if (static_cast<int>(q.size()) != dim) throw_usage("chart point has wrong coordinate count");
  if (desc.tag == AlgebraTag::Hn) {
    if (pivot < 0 || pivot >= desc.n) throw_usage("chart pivot out of range");
    if (q[0] <= 0.0) throw_domain("chart coordinate r must be positive");
  } else {
    if (q[0] == 0.0 && q[1] == 0.0 && q[2] == 0.0)
      throw_domain("light cone chart needs a nonzero coordinate vector");
    pivot = 0;
  }
  return ChartPoint{desc, pivot, std::move(q)};
}

Element<double> embed(const ChartPoint& cp) {
  return embed_q<double>(cp.desc, cp.pivot, cp.q);
}

Frame<double> frame(const ChartPoint& cp) {
  return make_frame<double>(cp.desc, cp.pivot, cp.q);
}

double rank_one_residual(const Element<double>& x) {
  return fro_norm(jmul(x, x) - trace(x) * x);
}

bool is_rank_one_psd(const Element<double>& x) {
  const double tx = trace(x);
  if (!(tx > 0.0)) return false;
  return rank_one_residual(x) <= 1e-9 * tx * tx;
}

double tangency_residual(const Element<double>& x, const Element<double>& pi) {
  return fro_norm(pi - project_bar(x, pi));
}

ChartPoint coords(const Element<double>& x, std::optional<int> pivot_hint) {
  if (!is_rank_one_psd(x)) throw_domain("coords: element is not a rank-one PSD cone point");
  if (x.desc.tag == AlgebraTag::Gamma3) {
    return make_chart_point(x.desc, 0, {x.gv[0], x.gv[1], x.gv[2]});
  }
  const int n = x.desc.n;
  int pivot = 0;
  if (pivot_hint) {
    pivot = *pivot_hint;
    if (pivot < 0 || pivot >= n) throw_usage("coords: pivot hint out of range");
  } else {
    double best = x.at(0, 0).re;
    for (int i = 1; i < n; ++i)
      if (x.at(i, i).re > best) {
        best = x.at(i, i).re;
        pivot = i;
      }
  }
  const double xkk = x.at(pivot, pivot).re;
  if (!(xkk > 0.0)) throw_domain("coords: pivot diagonal entry vanishes");
  std::vector<double> q(static_cast<size_t>(2 * n - 1));
  q[0] = trace(x);
  int c = 1;
  for (int a = 0; a < n; ++a) {
    if (a == pivot) continue;
    // column of x through the pivot: x_{a,k} / x_{k,k} = v_a
    q[c] = x.at(a, pivot).re / xkk;
    q[c + 1] = x.at(a, pivot).im / xkk;
    c += 2;
  }
  return ChartPoint{x.desc, pivot, std::move(q)};
}

PhasePoint lift(const ChartPoint& cp, std::vector<double> p) {
  if (static_cast<int>(p.size()) != cp.desc.cone_dim())
    throw_usage("lift: momentum has wrong length");
  PhasePoint ph;
  ph.point = cp;
  ph.p = std::move(p);
  ph.x = embed(cp);
  Frame<double> f = frame(cp);
  Element<double> pi = Element<double>::zero(cp.desc);
  for (size_t i = 0; i < ph.p.size(); ++i) pi = pi + ph.p[i] * f.duals[i];
  ph.pi = std::move(pi);
  return ph;
}

std::pair<ChartPoint, std::vector<double>> unlift(const Element<double>& x,
                                                  const Element<double>& pi,
                                                  std::optional<int> pivot_hint) {
  const double scale = 1.0 + fro_norm(pi);
  if (tangency_residual(x, pi) > 1e-8 * scale)
    throw_domain("unlift: pi is not tangent at x");
  ChartPoint cp = coords(x, pivot_hint);
  Frame<double> f = frame(cp);
  std::vector<double> p(cp.q.size());
  for (size_t i = 0; i < p.size(); ++i) p[i] = inner(pi, f.partials[i]);
  return {std::move(cp), std::move(p)};
}

SmallMat<double> curvature(const ChartPoint& cp, double mu) {
  const int dim = cp.desc.cone_dim();
  SmallMat<double> F(dim);
  if (mu == 0.0) return F;
  if (cp.desc.tag == AlgebraTag::Gamma3)
    throw_unsupported("nonzero magnetic charge is not defined on the spin factor");
  const Element<double> x = embed(cp);
  const auto partials = chart_partials<double>(cp.desc, cp.pivot, cp.q);
  const double tx = trace(x);
  const double c = -2.0 * mu / (tx * tx * tx);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      const double f = c * itr_comm(x, partials[i], partials[j]);
      F(i, j) = f;
      F(j, i) = -f;
    }
  return F;
}

bool needs_pivot_switch(const ChartPoint& cp, double threshold) {
  if (cp.desc.tag == AlgebraTag::Gamma3) return false;
  double zmax = 0.0;
  for (size_t c = 1; c + 1 < cp.q.size(); c += 2)
    zmax = std::max(zmax, std::hypot(cp.q[c], cp.q[c + 1]));
  return zmax > threshold;
}

PhasePoint repivot(const PhasePoint& ph) {
  auto [cp, p] = unlift(ph.x, ph.pi);
  return lift(cp, std::move(p));
}

Element<double> sample_hermitian(const AlgebraDescriptor& d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Element<double> g = Element<double>::zero(d);
  if (d.tag == AlgebraTag::Gamma3) {
    g.g0 = gauss(rng);
    for (int i = 0; i < 3; ++i) g.gv[i] = gauss(rng);
    return g;
  }
  for (int i = 0; i < d.n; ++i) {
    g.at(i, i) = Cxd(gauss(rng));
    for (int j = i + 1; j < d.n; ++j) {
      const double re = gauss(rng) / std::sqrt(2.0);
      const double im = gauss(rng) / std::sqrt(2.0);
      g.at(i, j) = Cxd(re, im);
      g.at(j, i) = Cxd(re, -im);
    }
  }
  return g;
}

Element<double> sample_cone_point(const AlgebraDescriptor& d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.5, 2.0);
  if (d.tag == AlgebraTag::Gamma3) {
    double w[3], nrm = 0.0;
    do {
      nrm = 0.0;
      for (double& wi : w) {
        wi = gauss(rng);
        nrm += wi * wi;
      }
    } while (nrm == 0.0);
    nrm = std::sqrt(nrm);
    const double r = radius(rng);
    return Element<double>::gamma3(r, {r * w[0] / nrm, r * w[1] / nrm, r * w[2] / nrm});
  }
  std::vector<Cxd> w(d.n);
  double nsq = 0.0;
  do {
    nsq = 0.0;
    for (auto& wi : w) {
      wi = Cxd(gauss(rng), gauss(rng));
      nsq += norm_sq(wi);
    }
  } while (nsq == 0.0);
  const double r = radius(rng);
  Element<double> x = Element<double>::zero(d);
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) x.at(i, j) = (r / nsq) * (w[i] * conj(w[j]));
  return x;
}

PhasePoint sample_phase_point(const AlgebraDescriptor& d, std::mt19937_64& rng) {
  const Element<double> x = sample_cone_point(d, rng);
  const Element<double> pi = project_bar(x, sample_hermitian(d, rng));
  auto [cp, p] = unlift(x, pi);
  return lift(cp, std::move(p));
}

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
  // splitmix64 steps over a mixed key
  uint64_t z = seed ^ (0x9E3779B97F4A7C15ULL * (a + 1)) ^ (0xBF58476D1CE4E5B9ULL * (b + 1)) ^
               (0x94D049BB133111EBULL * (c + 1));
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ukepler
