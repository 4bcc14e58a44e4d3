#pragma once

// Brute-force reference computations for tests. Nothing here calls the library's
// elimination code: everything is enumeration or textbook formulas.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

inline std::int64_t mod(std::int64_t v, std::int64_t q) { return ((v % q) + q) % q; }

/// Leibniz determinant mod q.
inline std::int64_t det(const Mat& a, std::int64_t q) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::int64_t total = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term = mod(term * a[i][perm[i]], q);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    total = mod(total + (inversions % 2 ? -term : term), q);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                   std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  choose(n, k, 0, cur, out);
  return out;
}

/// Largest k with a nonzero k x k minor.
inline std::size_t rank_by_minors(const Mat& a, std::int64_t q) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (const auto& rs : subsets(rows, k)) {
      for (const auto& cs : subsets(cols, k)) {
        Mat minor(k, Vec(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) minor[i][j] = a[rs[i]][cs[j]];
        if (det(minor, q) != 0) return k;
      }
    }
  }
  return 0;
}

/// All q^n vectors of F_q^n in lexicographic order.
inline std::vector<Vec> all_vectors(std::size_t n, std::int64_t q) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < n && ++v[i] == q) v[i++] = 0;
    if (i == n) break;
  }
  return out;
}

/// The set of all linear combinations of the given rows.
inline std::set<Vec> span_set(const Mat& rows, std::size_t n, std::int64_t q) {
  std::set<Vec> out;
  for (const auto& coeffs : all_vectors(rows.size(), q)) {
    Vec v(n, 0);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) v[c] = mod(v[c] + coeffs[r] * rows[r][c], q);
    out.insert(v);
  }
  return out;
}

/// |observed - n p| <= 5 sqrt(n p (1-p)).
inline bool within_5_sigma(std::size_t hits, std::size_t n, double p) {
  const double mean = static_cast<double>(n) * p;
  return std::abs(static_cast<double>(hits) - mean) <= 5.0 * std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

}  // namespace oracle
