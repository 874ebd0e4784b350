#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ukepler/cx.hpp"
#include "ukepler/errors.hpp"
#include "ukepler/jet.hpp"

namespace ukepler {

enum class AlgebraTag { Hn, Gamma3 };

inline const char* tag_name(AlgebraTag t) { return t == AlgebraTag::Hn ? "hn" : "gamma3"; }

// Which simple Euclidean Jordan algebra we are working in, plus its basic
// numerology: rank, real dimension, and the dimension of the rank-one cone.
struct AlgebraDescriptor {
  AlgebraTag tag = AlgebraTag::Hn;
  int n = 2;     // matrix order; fixed at 2 for the spin factor's matrix image
  int rank = 2;  // maximal count of orthogonal primitive idempotents
  int dim = 4;   // real dimension of the algebra

  static AlgebraDescriptor hermitian(int order) {
    if (order < 2) throw_usage("hermitian algebra needs order >= 2");
    if (order > 8) throw_usage("hermitian algebra order capped at 8");
    return {AlgebraTag::Hn, order, order, order * order};
  }
  static AlgebraDescriptor gamma3() { return {AlgebraTag::Gamma3, 2, 2, 4}; }

  int cone_dim() const { return tag == AlgebraTag::Hn ? 2 * n - 1 : 3; }

  bool operator==(const AlgebraDescriptor& o) const { return tag == o.tag && n == o.n; }
};

// General complex n x n matrix; products of algebra elements land here before
// they are symmetrized back into the algebra.
template <class T>
struct CMatrix {
  int n = 0;
  std::vector<Cx<T>> a;  // row-major

  CMatrix() = default;
  explicit CMatrix(int order) : n(order), a(static_cast<size_t>(order) * order) {}

  Cx<T>& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const Cx<T>& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// An element of the algebra: a hermitian matrix for H_n(C), or a
// (scalar, 3-vector) pair for the spin factor Gamma(3).
template <class T>
struct Element {
  AlgebraDescriptor desc;
  std::vector<Cx<T>> mat;  // Hn storage, row-major n*n
  T g0{};                  // Gamma3 scalar part
  std::array<T, 3> gv{};   // Gamma3 vector part

  Element() = default;

  static Element zero(const AlgebraDescriptor& d) {
    Element e;
    e.desc = d;
    if (d.tag == AlgebraTag::Hn) e.mat.assign(static_cast<size_t>(d.n) * d.n, Cx<T>{});
    return e;
  }

  static Element identity(const AlgebraDescriptor& d) {
    Element e = zero(d);
    if (d.tag == AlgebraTag::Hn) {
      for (int i = 0; i < d.n; ++i) e.at(i, i) = Cx<T>(T(1.0));
    } else {
      e.g0 = T(1.0);
    }
    return e;
  }

  static Element gamma3(T x0, std::array<T, 3> vec) {
    Element e;
    e.desc = AlgebraDescriptor::gamma3();
    e.g0 = std::move(x0);
    e.gv = std::move(vec);
    return e;
  }

  // Build a hermitian element as (m + m^dagger)/2; keeps round-off from
  // drifting results off the hermitian subspace.
  static Element hermitize(const AlgebraDescriptor& d, const CMatrix<T>& m) {
    if (d.tag != AlgebraTag::Hn) throw_usage("hermitize needs a matrix algebra");
    if (m.n != d.n) throw_usage("hermitize: order mismatch");
    Element e = zero(d);
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) {
        const Cx<T>& x = m(i, j);
        const Cx<T>& y = m(j, i);
        e.at(i, j) = Cx<T>((x.re + y.re) * 0.5, (x.im - y.im) * 0.5);
      }
    return e;
  }

  Cx<T>& at(int i, int j) { return mat[static_cast<size_t>(i) * desc.n + j]; }
  const Cx<T>& at(int i, int j) const { return mat[static_cast<size_t>(i) * desc.n + j]; }
};

namespace detail {

inline void require_same(const AlgebraDescriptor& a, const AlgebraDescriptor& b) {
  if (!(a == b)) throw_usage("algebra mismatch between operands");
}

inline void require_hn(const AlgebraDescriptor& d, const char* op) {
  if (d.tag != AlgebraTag::Hn)
    throw Error(Errc::unsupported, std::string(op) + " is only defined on the matrix algebra");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// linear structure

template <class T>
Element<T> operator+(const Element<T>& u, const Element<T>& v) {
  detail::require_same(u.desc, v.desc);
  Element<T> r = u;
  if (u.desc.tag == AlgebraTag::Hn) {
    for (size_t k = 0; k < r.mat.size(); ++k) r.mat[k] += v.mat[k];
  } else {
    r.g0 = r.g0 + v.g0;
    for (int i = 0; i < 3; ++i) r.gv[i] = r.gv[i] + v.gv[i];
  }
  return r;
}

template <class T>
Element<T> operator-(const Element<T>& u, const Element<T>& v) {
  detail::require_same(u.desc, v.desc);
  Element<T> r = u;
  if (u.desc.tag == AlgebraTag::Hn) {
    for (size_t k = 0; k < r.mat.size(); ++k) r.mat[k] -= v.mat[k];
  } else {
    r.g0 = r.g0 - v.g0;
    for (int i = 0; i < 3; ++i) r.gv[i] = r.gv[i] - v.gv[i];
  }
  return r;
}

template <class T, class S>
Element<T> operator*(const S& s, const Element<T>& u) {
  Element<T> r = u;
  if (u.desc.tag == AlgebraTag::Hn) {
    for (auto& c : r.mat) c = Cx<T>(s * c.re, s * c.im);
  } else {
    r.g0 = s * r.g0;
    for (int i = 0; i < 3; ++i) r.gv[i] = s * r.gv[i];
  }
  return r;
}

template <class T>
Element<T> operator-(const Element<T>& u) {
  return T(-1.0) * u;
}

// ---------------------------------------------------------------------------
// products and traces

template <class T>
CMatrix<T> to_cmatrix(const Element<T>& u) {
  detail::require_hn(u.desc, "matrix view");
  CMatrix<T> m(u.desc.n);
  m.a = u.mat;
  return m;
}

template <class T>
CMatrix<T> cmul(const CMatrix<T>& a, const CMatrix<T>& b) {
  const int n = a.n;
  CMatrix<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Cx<T>& f = a(i, k);
      for (int j = 0; j < n; ++j) r(i, j) += f * b(k, j);
    }
  return r;
}

// Matrix product of two hermitian elements (generally not hermitian).
template <class T>
CMatrix<T> matmul(const Element<T>& u, const Element<T>& v) {
  detail::require_same(u.desc, v.desc);
  detail::require_hn(u.desc, "matmul");
  const int n = u.desc.n;
  CMatrix<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const Cx<T>& f = u.at(i, k);
      for (int j = 0; j < n; ++j) r(i, j) += f * v.at(k, j);
    }
  return r;
}

// [u, v] = u.v - v.u (anti-hermitian).
template <class T>
CMatrix<T> commutator(const Element<T>& u, const Element<T>& v) {
  CMatrix<T> uv = matmul(u, v);
  const int n = uv.n;
  // v.u = (u.v)^dagger for hermitian operands
  CMatrix<T> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Cx<T>& x = uv(i, j);
      const Cx<T>& y = uv(j, i);
      r(i, j) = Cx<T>(x.re - y.re, x.im + y.im);
    }
  return r;
}

// i[u, v], hermitian.
template <class T>
Element<T> icomm(const Element<T>& u, const Element<T>& v) {
  CMatrix<T> c = commutator(u, v);
  for (auto& z : c.a) z = times_i(z);
  return Element<T>::hermitize(u.desc, c);
}

// Jordan product uv = (u.v + v.u)/2.
template <class T>
Element<T> jmul(const Element<T>& u, const Element<T>& v) {
  detail::require_same(u.desc, v.desc);
  if (u.desc.tag == AlgebraTag::Hn) {
    // (u.v + v.u)/2 = hermitian part of u.v
    return Element<T>::hermitize(u.desc, matmul(u, v));
  }
  Element<T> r = Element<T>::zero(u.desc);
  r.g0 = u.g0 * v.g0 + u.gv[0] * v.gv[0] + u.gv[1] * v.gv[1] + u.gv[2] * v.gv[2];
  for (int i = 0; i < 3; ++i) r.gv[i] = u.g0 * v.gv[i] + v.g0 * u.gv[i];
  return r;
}

template <class T>
Element<T> lmul(const Element<T>& u, const Element<T>& w) {
  return jmul(u, w);
}

// Triple product {uvw} = S_uv(w) with S_uv = [L_u, L_v] + L_uv.
template <class T>
Element<T> smap(const Element<T>& u, const Element<T>& v, const Element<T>& w) {
  return jmul(u, jmul(v, w)) - jmul(v, jmul(u, w)) + jmul(jmul(u, v), w);
}

// L_{u,v} w = [L_u, L_v] w.
template <class T>
Element<T> lcomm(const Element<T>& u, const Element<T>& v, const Element<T>& w) {
  return jmul(u, jmul(v, w)) - jmul(v, jmul(u, w));
}

template <class T>
T trace(const Element<T>& u) {
  if (u.desc.tag == AlgebraTag::Hn) {
    T t(0.0);
    for (int i = 0; i < u.desc.n; ++i) t += u.at(i, i).re;
    return t;
  }
  return 2.0 * u.g0;
}

// <u|v> = tr(uv)/rank; the normalization that makes the identity a unit vector.
template <class T>
T inner(const Element<T>& u, const Element<T>& v) {
  detail::require_same(u.desc, v.desc);
  if (u.desc.tag == AlgebraTag::Hn) {
    T t(0.0);
    for (size_t k = 0; k < u.mat.size(); ++k)
      t += u.mat[k].re * v.mat[k].re + u.mat[k].im * v.mat[k].im;
    return t / static_cast<double>(u.desc.n);
  }
  return u.g0 * v.g0 + u.gv[0] * v.gv[0] + u.gv[1] * v.gv[1] + u.gv[2] * v.gv[2];
}

template <class T>
T inner_norm_sq(const Element<T>& u) {
  return inner(u, u);
}

// tr(a.b.c) for hermitian elements.
template <class T>
Cx<T> trace_prod3(const Element<T>& a, const Element<T>& b, const Element<T>& c) {
  detail::require_hn(a.desc, "trace_prod3");
  const int n = a.desc.n;
  Cx<T> t{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Cx<T> bc{};
      for (int k = 0; k < n; ++k) bc += b.at(j, k) * c.at(k, i);
      t += a.at(i, j) * bc;
    }
  return t;
}

// Re(i tr(x [u, v])): the real scalar the magnetic terms are built from.
// tr(x[u,v]) is purely imaginary for hermitian arguments; the imaginary
// residual of the returned quantity is exposed separately for validation.
template <class T>
T itr_comm(const Element<T>& x, const Element<T>& u, const Element<T>& v) {
  const Cx<T> t = trace_prod3(x, u, v) - trace_prod3(x, v, u);
  return times_i(t).re;
}

template <class T>
T itr_comm_imag(const Element<T>& x, const Element<T>& u, const Element<T>& v) {
  const Cx<T> t = trace_prod3(x, u, v) - trace_prod3(x, v, u);
  return times_i(t).im;
}

// ---------------------------------------------------------------------------
// value extraction and diagnostics (double level)

inline Element<double> value_of(const Element<Jet>& u) {
  Element<double> r;
  r.desc = u.desc;
  if (u.desc.tag == AlgebraTag::Hn) {
    r.mat.resize(u.mat.size());
    for (size_t k = 0; k < u.mat.size(); ++k)
      r.mat[k] = {u.mat[k].re.value(), u.mat[k].im.value()};
  } else {
    r.g0 = u.g0.value();
    for (int i = 0; i < 3; ++i) r.gv[i] = u.gv[i].value();
  }
  return r;
}

inline Element<Jet> lift_to_jet(const Element<double>& u) {
  Element<Jet> r;
  r.desc = u.desc;
  if (u.desc.tag == AlgebraTag::Hn) {
    r.mat.resize(u.mat.size());
    for (size_t k = 0; k < u.mat.size(); ++k) r.mat[k] = {Jet(u.mat[k].re), Jet(u.mat[k].im)};
  } else {
    r.g0 = Jet(u.g0);
    for (int i = 0; i < 3; ++i) r.gv[i] = Jet(u.gv[i]);
  }
  return r;
}

double fro_norm(const Element<double>& u);
double fro_norm(const CMatrix<double>& m);
double hermiticity_residual(const Element<double>& u);

// ---------------------------------------------------------------------------
// orthonormal basis and the Gamma(3) <-> H_2(C) isomorphism

// Deterministic orthonormal basis: for H_n(C) the identity, the diagonal
// traceless family, and the symmetric/antisymmetric off-diagonal pairs, each
// scaled so tr(e_a e_b) = n delta_ab; for Gamma(3) the standard basis.
std::vector<Element<double>> onb(const AlgebraDescriptor& d);

// e0 -> I, e_i -> Pauli sigma_i; a Jordan algebra isometry.
template <class T>
Element<T> gamma3_to_h2(const Element<T>& u) {
  if (u.desc.tag != AlgebraTag::Gamma3) throw_usage("gamma3_to_h2 needs a spin factor element");
  Element<T> r = Element<T>::zero(AlgebraDescriptor::hermitian(2));
  r.at(0, 0) = Cx<T>(u.g0 + u.gv[2]);
  r.at(1, 1) = Cx<T>(u.g0 - u.gv[2]);
  r.at(0, 1) = Cx<T>(u.gv[0], -u.gv[1]);
  r.at(1, 0) = Cx<T>(u.gv[0], u.gv[1]);
  return r;
}

template <class T>
Element<T> h2_to_gamma3(const Element<T>& u) {
  if (u.desc.tag != AlgebraTag::Hn || u.desc.n != 2)
    throw_usage("h2_to_gamma3 needs an order-2 matrix element");
  T x0 = (u.at(0, 0).re + u.at(1, 1).re) * 0.5;
  std::array<T, 3> v{u.at(0, 1).re, -u.at(0, 1).im, (u.at(0, 0).re - u.at(1, 1).re) * 0.5};
  return Element<T>::gamma3(std::move(x0), std::move(v));
}

}  // namespace ukepler
