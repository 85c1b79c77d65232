#pragma once

// Reference implementations that share no code with the library. They are slow
// and only meant for small inputs.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "amgm/matrix.hpp"

namespace oracle {

using amgm::Matrix;

/// Leibniz expansion over all permutations.
inline double leibniz_det(const Matrix& a) {
  const std::size_t d = a.dim();
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = i + 1; j < d; ++j)
        if (perm[i] > perm[j]) ++inversions;
    double term = inversions % 2 == 0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < d; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t d, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1u << i)) s.push_back(i);
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Compound matrix with every minor expanded by Leibniz.
inline Matrix compound(const Matrix& a, std::size_t k) {
  const auto idx = subsets(a.dim(), k);
  Matrix out(idx.size());
  for (std::size_t I = 0; I < idx.size(); ++I) {
    for (std::size_t J = 0; J < idx.size(); ++J) {
      Matrix sub(k);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) sub(r, c) = a(idx[I][r], idx[J][c]);
      out(I, J) = leibniz_det(sub);
    }
  }
  return out;
}

/// Closed-form singular values of a 2×2 matrix.
inline std::pair<double, double> singular_values_2x2(const Matrix& x) {
  const double a = x(0, 0), b = x(0, 1), c = x(1, 0), d = x(1, 1);
  const double s1 = a * a + b * b + c * c + d * d;
  const double det = a * d - b * c;
  const double root = std::sqrt(std::max(0.0, s1 * s1 - 4.0 * det * det));
  const double hi = std::sqrt((s1 + root) / 2.0);
  const double lo = hi > 0.0 ? std::abs(det) / hi : 0.0;
  return {hi, lo};
}

/// Odometer enumeration of all m-tuples over [0, n); `distinct` keeps only
/// tuples with pairwise different entries.
inline void tuples(std::size_t n, std::size_t m, bool distinct,
                   const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> t(m, 0);
  while (true) {
    bool ok = true;
    if (distinct) {
      for (std::size_t i = 0; i < m && ok; ++i)
        for (std::size_t j = i + 1; j < m && ok; ++j) ok = t[i] != t[j];
    }
    if (ok) visit(t);
    std::size_t pos = m;
    while (pos > 0) {
      --pos;
      if (++t[pos] < n) break;
      t[pos] = 0;
      if (pos == 0) return;
    }
    if (m == 0) return;
  }
}

/// Mean of norm(A_{j1}⋯A_{jm}) with each product formed from scratch.
inline double tuple_mean(const std::vector<Matrix>& fam, std::size_t m, bool distinct,
                         const std::function<double(const Matrix&)>& norm) {
  double total = 0.0;
  std::size_t count = 0;
  tuples(fam.size(), m, distinct, [&](const std::vector<std::size_t>& t) {
    Matrix p = fam[t[0]];
    for (std::size_t i = 1; i < t.size(); ++i) p = p * fam[t[i]];
    total += norm(p);
    ++count;
  });
  return total / static_cast<double>(count);
}

/// e_m by direct summation over subsets.
inline double elementary_symmetric(const std::vector<double>& xs, std::size_t m) {
  double total = 0.0;
  for (const auto& s : subsets(xs.size(), m)) {
    double p = 1.0;
    for (std::size_t i : s) p *= xs[i];
    total += p;
  }
  return total;
}

}  // namespace oracle
