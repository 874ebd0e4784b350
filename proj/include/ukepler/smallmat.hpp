#pragma once

#include <cmath>
#include <vector>

#include "ukepler/errors.hpp"
#include "ukepler/jet.hpp"

namespace ukepler {

// Dense real matrix over double or Jet, sized for chart metrics (order <= ~15).
template <class T>
struct SmallMat {
  int n = 0;
  std::vector<T> a;  // row-major

  SmallMat() = default;
  explicit SmallMat(int order) : n(order), a(static_cast<size_t>(order) * order, T(0.0)) {}

  T& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// Gauss-Jordan inverse with partial pivoting on the value parts. Throws a
// numerical error when the pivot ratio signals a near-singular matrix.
template <class T>
SmallMat<T> inverse(const SmallMat<T>& m, double cond_floor = 1e-13) {
  const int n = m.n;
  SmallMat<T> a = m;
  SmallMat<T> inv(n);
  for (int i = 0; i < n; ++i) inv(i, i) = T(1.0);

  double max_pivot = 0.0, min_pivot = 0.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      const double cand = std::abs(value_of(a(r, col)));
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (col == 0) {
      max_pivot = best;
      min_pivot = best;
    } else {
      max_pivot = std::max(max_pivot, best);
      min_pivot = std::min(min_pivot, best);
    }
    if (best == 0.0 || (max_pivot > 0.0 && best < cond_floor * max_pivot))
      throw_numerical("near-singular matrix in inverse()");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const T d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  (void)min_pivot;
  return inv;
}

}  // namespace ukepler
