#pragma once

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "ukepler/jordan.hpp"
#include "ukepler/smallmat.hpp"

namespace ukepler {

// Configuration point on the rank-one cone, in chart coordinates.
//
// H_n(C) charts are indexed by a pivot slot k: the cone point is
// x(r, zeta) = r v v^dagger / |v|^2 with v the column vector carrying 1 at
// the pivot and the complex affine coordinates zeta elsewhere, and
// q = (r, Re zeta_1, Im zeta_1, ...), so tr x = r is itself a coordinate.
// Gamma(3) has the single global chart q^i = x^i.
struct ChartPoint {
  AlgebraDescriptor desc;
  int pivot = 0;
  std::vector<double> q;
};

ChartPoint make_chart_point(const AlgebraDescriptor& desc, int pivot, std::vector<double> q);

// First-derivative frame data at a chart point: coordinate partials of the
// embedding, the induced metric and its inverse, and the dual frame
// E^i = g^{ij} d_j x.
template <class T>
struct Frame {
  std::vector<Element<T>> partials;
  SmallMat<T> metric;
  SmallMat<T> metric_inv;
  std::vector<Element<T>> duals;
};

// Phase-space point: chart coordinates and momenta plus the embedded pair
// (x, pi) with pi = p_i E^i tangent at x.
struct PhasePoint {
  ChartPoint point;
  std::vector<double> p;
  Element<double> x;
  Element<double> pi;
};

namespace detail {

template <class T>
void chart_vector(const AlgebraDescriptor& d, int pivot, std::span<const T> q,
                  std::vector<Cx<T>>& v, T& s) {
  const int n = d.n;
  v.assign(n, Cx<T>{});
  v[pivot] = Cx<T>(T(1.0));
  s = T(1.0);
  int c = 1;
  for (int a = 0; a < n; ++a) {
    if (a == pivot) continue;
    v[a] = Cx<T>(q[c], q[c + 1]);
    s += q[c] * q[c] + q[c + 1] * q[c + 1];
    c += 2;
  }
}

// Direction of d v / d q^c for a zeta coordinate c >= 1: the affected slot
// and the complex unit (1 for a real part, i for an imaginary part).
inline std::pair<int, bool> zeta_coord(const AlgebraDescriptor& d, int pivot, int c) {
  const int m = (c - 1) / 2;       // zeta index
  const bool imag = ((c - 1) % 2) == 1;
  int slot = -1, seen = 0;
  for (int a = 0; a < d.n; ++a) {
    if (a == pivot) continue;
    if (seen == m) {
      slot = a;
      break;
    }
    ++seen;
  }
  return {slot, imag};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// embedding and its closed-form derivatives

template <class T>
Element<T> embed_q(const AlgebraDescriptor& d, int pivot, std::span<const T> q) {
  if (d.tag == AlgebraTag::Gamma3) {
    T r2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    if (value_of(r2) <= 0.0) throw_domain("embed: zero coordinate vector on the light cone chart");
    return Element<T>::gamma3(sqrt(r2), {q[0], q[1], q[2]});
  }
  if (value_of(q[0]) <= 0.0) throw_domain("embed: cone coordinate r must be positive");
  std::vector<Cx<T>> v;
  T s;
  detail::chart_vector(d, pivot, q, v, s);
  Element<T> x = Element<T>::zero(d);
  const T f = q[0] / s;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) x.at(i, j) = f * (v[i] * conj(v[j]));
  return x;
}

template <class T>
std::vector<Element<T>> chart_partials(const AlgebraDescriptor& d, int pivot,
                                       std::span<const T> q) {
  const int dim = d.cone_dim();
  std::vector<Element<T>> out;
  out.reserve(dim);
  if (d.tag == AlgebraTag::Gamma3) {
    T r = sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2]);
    for (int i = 0; i < 3; ++i) {
      Element<T> e = Element<T>::zero(d);
      e.g0 = q[i] / r;
      e.gv[i] = T(1.0);
      out.push_back(std::move(e));
    }
    return out;
  }

  const int n = d.n;
  std::vector<Cx<T>> v;
  T s;
  detail::chart_vector(d, pivot, q, v, s);
  const T inv_s = T(1.0) / s;

  // d x / d r = N / s
  Element<T> dr = Element<T>::zero(d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) dr.at(i, j) = inv_s * (v[i] * conj(v[j]));
  out.push_back(dr);

  // d x / d c = (r/s) (w v^dagger + v w^dagger - N ds/s), ds = 2 q^c
  for (int c = 1; c < dim; ++c) {
    const auto [slot, imag] = detail::zeta_coord(d, pivot, c);
    const T ds_over_s = (2.0 * q[c]) * inv_s;
    const T r_over_s = q[0] * inv_s;
    Element<T> e = Element<T>::zero(d);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // w has a single entry (1 or i) at `slot`
        Cx<T> t{};
        if (i == slot) {
          Cx<T> w = imag ? Cx<T>(T(0.0), T(1.0)) : Cx<T>(T(1.0));
          t += w * conj(v[j]);
        }
        if (j == slot) {
          Cx<T> wbar = imag ? Cx<T>(T(0.0), T(-1.0)) : Cx<T>(T(1.0));
          t += v[i] * wbar;
        }
        t -= ds_over_s * (v[i] * conj(v[j]));
        e.at(i, j) = r_over_s * t;
      }
    out.push_back(std::move(e));
  }
  return out;
}

// Full symmetric table of second partials, indexed [a * dim + b].
template <class T>
std::vector<Element<T>> chart_second_partials(const AlgebraDescriptor& d, int pivot,
                                              std::span<const T> q) {
  const int dim = d.cone_dim();
  std::vector<Element<T>> out(static_cast<size_t>(dim) * dim);
  if (d.tag == AlgebraTag::Gamma3) {
    T r2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2];
    T r = sqrt(r2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Element<T> e = Element<T>::zero(d);
        e.g0 = ((i == j ? T(1.0) : T(0.0)) - q[i] * q[j] / r2) / r;
        out[static_cast<size_t>(i) * 3 + j] = std::move(e);
      }
    return out;
  }

  const int n = d.n;
  std::vector<Cx<T>> v;
  T s;
  detail::chart_vector(d, pivot, q, v, s);
  const T inv_s = T(1.0) / s;

  auto w_of = [&](int c) -> std::pair<int, Cx<T>> {
    const auto [slot, imag] = detail::zeta_coord(d, pivot, c);
    return {slot, imag ? Cx<T>(T(0.0), T(1.0)) : Cx<T>(T(1.0))};
  };
  // dN_c(i,j) = w_c(i) conj(v_j) + v_i conj(w_c(j))
  auto dN = [&](int c, int i, int j) -> Cx<T> {
    const auto [slot, w] = w_of(c);
    Cx<T> t{};
    if (i == slot) t += w * conj(v[j]);
    if (j == slot) t += v[i] * conj(w);
    return t;
  };

  for (int a = 0; a < dim; ++a)
    for (int b = a; b < dim; ++b) {
      Element<T> e = Element<T>::zero(d);
      if (a == 0 && b == 0) {
        // d2 x / dr2 = 0
      } else if (a == 0) {
        // d2 x / dr dc = (1/s)(dN_c - N ds_c / s)
        const T ds_b = 2.0 * q[b];
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            e.at(i, j) = inv_s * (dN(b, i, j) - (ds_b * inv_s) * (v[i] * conj(v[j])));
      } else {
        const T ds_a = 2.0 * q[a];
        const T ds_b = 2.0 * q[b];
        const auto [slot_a, w_a] = w_of(a);
        const auto [slot_b, w_b] = w_of(b);
        // d2s = 2 Re(conj(w_a) w_b) summed over the shared slot
        double d2s = 0.0;
        if (slot_a == slot_b) {
          const Cxd prod = value_of(conj(w_a) * w_b);
          d2s = 2.0 * prod.re;
        }
        const T r_over_s = q[0] * inv_s;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            Cx<T> d2N{};
            if (i == slot_a && j == slot_b) d2N += w_a * conj(w_b);
            if (i == slot_b && j == slot_a) d2N += w_b * conj(w_a);
            Cx<T> t = d2N;
            t -= (ds_b * inv_s) * dN(a, i, j);
            t -= (ds_a * inv_s) * dN(b, i, j);
            const Cx<T> N_ij = v[i] * conj(v[j]);
            t -= (d2s * inv_s) * N_ij;
            t += (2.0 * ds_a * ds_b * inv_s * inv_s) * N_ij;
            e.at(i, j) = r_over_s * t;
          }
      }
      out[static_cast<size_t>(a) * dim + b] = e;
      if (a != b) out[static_cast<size_t>(b) * dim + a] = std::move(e);
    }
  return out;
}

template <class T>
Frame<T> make_frame(const AlgebraDescriptor& d, int pivot, std::span<const T> q) {
  Frame<T> f;
  f.partials = chart_partials(d, pivot, q);
  const int dim = d.cone_dim();
  f.metric = SmallMat<T>(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      T g = inner(f.partials[i], f.partials[j]);
      f.metric(i, j) = g;
      f.metric(j, i) = g;
    }
  f.metric_inv = inverse(f.metric);
  f.duals.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Element<T> e = f.metric_inv(i, 0) * f.partials[0];
    for (int j = 1; j < dim; ++j) e = e + f.metric_inv(i, j) * f.partials[j];
    f.duals.push_back(std::move(e));
  }
  return f;
}

// Orthogonal projection of v onto the tangent space Im L_x at a cone point x:
// v - QvQ with Q = e - x/tr x. For the spin factor, Q spans the Peirce-zero
// space, so the projection just removes the Q component.
template <class T>
Element<T> project_bar(const Element<T>& x, const Element<T>& v) {
  detail::require_same(x.desc, v.desc);
  const T tx = trace(x);
  Element<T> Q = Element<T>::identity(x.desc) - (T(1.0) / tx) * x;
  if (x.desc.tag == AlgebraTag::Hn) {
    CMatrix<T> qvq = cmul(cmul(to_cmatrix(Q), to_cmatrix(v)), to_cmatrix(Q));
    return v - Element<T>::hermitize(x.desc, qvq);
  }
  const T coef = inner(Q, v) / inner(Q, Q);
  return v - coef * Q;
}

// ---------------------------------------------------------------------------
// double-precision chart operations

Element<double> embed(const ChartPoint& cp);
Frame<double> frame(const ChartPoint& cp);

// Section of the embedding: recover chart coordinates from a rank-one PSD
// element. The pivot defaults to the largest diagonal entry.
ChartPoint coords(const Element<double>& x, std::optional<int> pivot_hint = std::nullopt);

double rank_one_residual(const Element<double>& x);
bool is_rank_one_psd(const Element<double>& x);
double tangency_residual(const Element<double>& x, const Element<double>& pi);

PhasePoint lift(const ChartPoint& cp, std::vector<double> p);
std::pair<ChartPoint, std::vector<double>> unlift(const Element<double>& x,
                                                  const Element<double>& pi,
                                                  std::optional<int> pivot_hint = std::nullopt);

// Magnetic curvature in chart coordinates:
// F_ij = -2 mu i tr(x [d_i x, d_j x]) / (tr x)^3.
SmallMat<double> curvature(const ChartPoint& cp, double mu);

bool needs_pivot_switch(const ChartPoint& cp, double threshold);
// Re-expresses a phase point in the chart whose pivot carries the largest
// diagonal entry of x; the embedded pair (x, pi) is preserved.
PhasePoint repivot(const PhasePoint& ph);

// ---------------------------------------------------------------------------
// seeded random sampling

Element<double> sample_hermitian(const AlgebraDescriptor& d, std::mt19937_64& rng);
Element<double> sample_cone_point(const AlgebraDescriptor& d, std::mt19937_64& rng);
PhasePoint sample_phase_point(const AlgebraDescriptor& d, std::mt19937_64& rng);

uint64_t derive_seed(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0);

}  // namespace ukepler
