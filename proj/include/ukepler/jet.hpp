#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>

#include "ukepler/errors.hpp"

namespace ukepler {

// First-order jet: a scalar value plus its gradient along up to kMaxDirs
// seeded directions. Arithmetic propagates derivatives exactly (truncated
// first-order polynomial algebra), so gradients of any composition of the
// operations below are correct to round-off.
//
// Jets with fewer active directions than their operands are padded with
// zeros; constants carry zero directions and mix freely with seeded jets.
class Jet {
 public:
  static constexpr int kMaxDirs = 32;

  Jet() = default;
  Jet(double v) : v_(v) {}  // NOLINT: implicit constant lift is the point

  static Jet seeded(double v, int dir, int ndirs) {
    if (ndirs < 0 || ndirs > kMaxDirs || dir < 0 || dir >= ndirs)
      throw_usage("jet seed direction out of range");
    Jet j(v);
    j.n_ = ndirs;
    for (int i = 0; i < ndirs; ++i) j.g_[i] = 0.0;
    j.g_[dir] = 1.0;
    return j;
  }

  Jet(const Jet& o) : v_(o.v_), n_(o.n_) {
    for (int i = 0; i < n_; ++i) g_[i] = o.g_[i];
  }
  Jet& operator=(const Jet& o) {
    v_ = o.v_;
    n_ = o.n_;
    for (int i = 0; i < n_; ++i) g_[i] = o.g_[i];
    return *this;
  }

  double value() const { return v_; }
  int dirs() const { return n_; }
  double d(int i) const { return i < n_ ? g_[i] : 0.0; }

  Jet operator-() const {
    Jet r(-v_);
    r.n_ = n_;
    for (int i = 0; i < n_; ++i) r.g_[i] = -g_[i];
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r(a.v_ + b.v_);
    r.n_ = std::max(a.n_, b.n_);
    for (int i = 0; i < r.n_; ++i) r.g_[i] = a.d(i) + b.d(i);
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r(a.v_ - b.v_);
    r.n_ = std::max(a.n_, b.n_);
    for (int i = 0; i < r.n_; ++i) r.g_[i] = a.d(i) - b.d(i);
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.v_ * b.v_);
    r.n_ = std::max(a.n_, b.n_);
    for (int i = 0; i < r.n_; ++i) r.g_[i] = a.v_ * b.d(i) + b.v_ * a.d(i);
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    const double inv = 1.0 / b.v_;
    Jet r(a.v_ * inv);
    r.n_ = std::max(a.n_, b.n_);
    for (int i = 0; i < r.n_; ++i) r.g_[i] = (a.d(i) - r.v_ * b.d(i)) * inv;
    return r;
  }

  friend Jet operator*(double s, const Jet& a) {
    Jet r(s * a.v_);
    r.n_ = a.n_;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = s * a.g_[i];
    return r;
  }
  friend Jet operator*(const Jet& a, double s) { return s * a; }
  friend Jet operator/(const Jet& a, double s) { return (1.0 / s) * a; }
  friend Jet operator+(const Jet& a, double s) {
    Jet r(a);
    r.v_ += s;
    return r;
  }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return -(a - s); }
  friend Jet operator/(double s, const Jet& a) { return Jet(s) / a; }

  Jet& operator+=(const Jet& o) { return *this = *this + o; }
  Jet& operator-=(const Jet& o) { return *this = *this - o; }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet sqrt(const Jet& a) {
    const double s = std::sqrt(a.v_);
    Jet r(s);
    r.n_ = a.n_;
    const double half_inv = 0.5 / s;
    for (int i = 0; i < a.n_; ++i) r.g_[i] = half_inv * a.g_[i];
    return r;
  }

 private:
  double v_ = 0.0;
  int n_ = 0;
  std::array<double, kMaxDirs> g_;  // entries beyond n_ are not read
};

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.value(); }

}  // namespace ukepler
