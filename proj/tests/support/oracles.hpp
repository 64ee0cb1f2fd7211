#pragma once

// Independent reference implementations used to cross-check the library.
// Deliberately naive: plain Gauss-Jordan over mpq, Fourier-Motzkin on
// explicit inequality lists. Nothing here calls into orthant's algorithms.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace oracle {

using Q = boost::multiprecision::mpq_rational;
using Row = std::vector<Q>;
using Matrix = std::vector<Row>;

inline std::size_t rank(Matrix a) {
  if (a.empty()) return 0;
  const std::size_t cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Q f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

inline Matrix transpose(const Matrix& a) {
  if (a.empty()) return {};
  Matrix t(a.front().size(), Row(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

// g·x >= h
struct Ineq {
  Row g;
  Q h;
};

namespace fm_detail {

inline void normalize(Ineq& q) {
  Q scale(0);
  for (const auto& x : q.g)
    if (x != 0) {
      scale = abs(x);
      break;
    }
  if (scale == 0) return;
  for (auto& x : q.g) x /= scale;
  q.h /= scale;
}

inline bool same(const Ineq& a, const Ineq& b) { return a.g == b.g && a.h == b.h; }

}  // namespace fm_detail

/**
 * True iff some t > 0 satisfies Q t = c. Homogenized: (t, s) >= 1 with
 * Q t - c s = 0 (any positive solution rescales to that region).
 */
inline bool has_positive_solution(const Matrix& q, const Row& c) {
  const std::size_t m = q.empty() ? 0 : q.front().size();
  const std::size_t vars = m + 1;
  Matrix eq;
  for (std::size_t r = 0; r < q.size(); ++r) {
    Row row(q[r]);
    row.push_back(-c[r]);
    eq.push_back(row);
  }
  std::vector<Ineq> ineqs;
  for (std::size_t j = 0; j < vars; ++j) {
    Ineq in{Row(vars, Q(0)), Q(1)};
    in.g[j] = 1;
    ineqs.push_back(in);
  }
  std::vector<bool> alive(vars, true);
  // Substitute out one variable per independent equality.
  for (std::size_t e = 0; e < eq.size(); ++e) {
    std::size_t k = vars;
    for (std::size_t j = 0; j < vars; ++j)
      if (alive[j] && eq[e][j] != 0) {
        k = j;
        break;
      }
    if (k == vars) continue;  // 0 = 0
    const Row piv = eq[e];
    // x_k = -(Σ_{j≠k} piv_j x_j) / piv_k
    auto eliminate = [&](Row& g) {
      if (g[k] == 0) return;
      const Q f = g[k] / piv[k];
      for (std::size_t j = 0; j < vars; ++j) g[j] -= f * piv[j];
      g[k] = 0;
    };
    for (std::size_t e2 = e + 1; e2 < eq.size(); ++e2) eliminate(eq[e2]);
    for (auto& in : ineqs) eliminate(in.g);
    alive[k] = false;
  }
  // Fourier-Motzkin over the surviving variables.
  for (std::size_t k = 0; k < vars; ++k) {
    if (!alive[k]) continue;
    std::vector<Ineq> pos, neg, rest;
    for (auto in : ineqs) {
      if (in.g[k] > 0) pos.push_back(in);
      else if (in.g[k] < 0) neg.push_back(in);
      else rest.push_back(in);
    }
    for (const auto& p : pos)
      for (const auto& n : neg) {
        const Q a = p.g[k], b = -n.g[k];
        Ineq comb{Row(vars), b * p.h + a * n.h};
        for (std::size_t j = 0; j < vars; ++j) comb.g[j] = b * p.g[j] + a * n.g[j];
        comb.g[k] = 0;
        fm_detail::normalize(comb);
        if (std::none_of(rest.begin(), rest.end(), [&](const Ineq& r) { return fm_detail::same(r, comb); }))
          rest.push_back(comb);
      }
    ineqs = std::move(rest);
    alive[k] = false;
  }
  return std::all_of(ineqs.begin(), ineqs.end(), [](const Ineq& in) { return in.h <= 0; });
}

/// Bang matrix built directly from normals: rows (p,p) then (p<q).
inline Matrix bang_matrix(const Matrix& normals, std::size_t n) {
  Matrix q;
  for (std::size_t p = 0; p < n; ++p) {
    Row row;
    for (const auto& a : normals) row.push_back(a[p] * a[p]);
    q.push_back(row);
  }
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t r = p + 1; r < n; ++r) {
      Row row;
      for (const auto& a : normals) row.push_back(a[p] * a[r]);
      q.push_back(row);
    }
  return q;
}

inline Row bang_rhs(std::size_t n) {
  Row c(n * (n + 1) / 2, Q(0));
  for (std::size_t p = 0; p < n; ++p) c[p] = 1;
  return c;
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

  Q rational(long lo, long hi, long max_den) {
    const long den = integer(1, max_den);
    return Q(integer(lo * den, hi * den), den);
  }

  Q positive_rational(long max_num, long max_den) { return Q(integer(1, max_num), integer(1, max_den)); }

  Row nonzero_vector(std::size_t n, long bound) {
    for (;;) {
      Row v(n);
      bool any = false;
      for (auto& x : v) {
        x = integer(-bound, bound);
        any = any || x != 0;
      }
      if (any) return v;
    }
  }

  /// Exact rotation composed from Givens factors with Pythagorean cos/sin.
  Matrix rotation(std::size_t n, int factors = 4) {
    Matrix r(n, Row(n, Q(0)));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    if (n < 2) return r;
    for (int f = 0; f < factors; ++f) {
      const long a = integer(1, 6), b = integer(1, 6);
      const Q den(a * a + b * b);
      const Q cs = Q(a * a - b * b) / den, sn = Q(2 * a * b) / den;
      std::size_t i = static_cast<std::size_t>(integer(0, long(n) - 1));
      std::size_t j = static_cast<std::size_t>(integer(0, long(n) - 2));
      if (j >= i) ++j;
      for (std::size_t k = 0; k < n; ++k) {
        const Q ri = r[i][k], rj = r[j][k];
        r[i][k] = cs * ri - sn * rj;
        r[j][k] = sn * ri + cs * rj;
      }
    }
    return r;
  }

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace oracle
