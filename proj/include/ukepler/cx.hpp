#pragma once

#include "ukepler/jet.hpp"

namespace ukepler {

// Complex number over a generic real scalar (double or Jet). std::complex is
// only specified for the builtin floating types, so the handful of operations
// the matrix kernels need are spelled out here.
template <class T>
struct Cx {
  T re{};
  T im{};

  Cx() = default;
  Cx(T r) : re(std::move(r)) {}  // NOLINT
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Cx operator*(const T& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator*(const Cx& a, const T& s) { return s * a; }
  friend Cx operator/(const Cx& a, const T& s) { return {a.re / s, a.im / s}; }

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend Cx conj(const Cx& a) { return {a.re, -a.im}; }
  // i * a
  friend Cx times_i(const Cx& a) { return {-a.im, a.re}; }
};

using Cxd = Cx<double>;

template <class T>
T norm_sq(const Cx<T>& a) {
  return a.re * a.re + a.im * a.im;
}

inline Cxd value_of(const Cx<Jet>& a) { return {a.re.value(), a.im.value()}; }
inline Cxd value_of(const Cxd& a) { return a; }

}  // namespace ukepler
