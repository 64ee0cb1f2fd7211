#pragma once

// Small polyhedra and random generators shared by the unit tests.

#include <vector>

#include "orthant/polyhedron.hpp"
#include "support/oracles.hpp"

namespace shapes {

using orthant::Mat;
using orthant::Polyhedron;
using orthant::Rational;
using orthant::Vec;
using P = Polyhedron<Rational>;

inline P quadrant() { return P::from_rows({{1, 0}, {0, 1}}, {0, 0}); }
inline P acute_triangle() { return P::from_rows({{0, 1}, {-1, -1}, {3, -1}}, {0, -4, 0}); }
inline P right_triangle() { return P::from_rows({{1, 0}, {0, 1}, {-1, -1}}, {0, 0, -1}); }
inline P square() { return P::from_rows({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {0, 0, -1, -1}); }

/// Acute triangle times [0, 1].
inline P acute_prism() {
  return P::from_rows({{0, 1, 0}, {-1, -1, 0}, {3, -1, 0}, {0, 0, 1}, {0, 0, -1}}, {0, -4, 0, 0, -1});
}

inline Vec<Rational> sub(const Vec<Rational>& a, const Vec<Rational>& b) {
  Vec<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

/// Simplex with the given n+1 vertices in R^n; facet i is opposite vertex i.
inline P simplex_from_vertices(const std::vector<Vec<Rational>>& v) {
  const std::size_t n = v.size() - 1;
  std::vector<Vec<Rational>> rows;
  Vec<Rational> b;
  for (std::size_t i = 0; i <= n; ++i) {
    const std::size_t base = i == 0 ? 1 : 0;
    std::vector<Vec<Rational>> edges;
    for (std::size_t j = 0; j <= n; ++j)
      if (j != i && j != base) edges.push_back(sub(v[j], v[base]));
    auto a = orthant::kernel_basis(Mat<Rational>::from_rows(edges)).at(0);
    if (orthant::dot(a, sub(v[i], v[base])) < 0)
      for (auto& x : a) x = -x;
    b.push_back(orthant::dot(a, v[base]));
    rows.push_back(a);
  }
  return P::from_rows(rows, b);
}

inline std::vector<Vec<Rational>> random_needles(oracle::Random& rng, std::size_t n, std::size_t m, long bound = 3) {
  std::vector<Vec<Rational>> rows;
  for (std::size_t i = 0; i < m; ++i) {
    auto v = rng.nonzero_vector(n, bound);
    rows.emplace_back(v.begin(), v.end());
  }
  return rows;
}

/// Nondegenerate system with random normals and every offset -1.
inline P random_polyhedron(oracle::Random& rng, std::size_t n, std::size_t m) {
  for (;;) {
    const auto rows = random_needles(rng, n, m);
    P p = P::from_rows(rows, Vec<Rational>(m, Rational(-1)));
    if (orthant::is_nondegenerate(p)) return p;
  }
}

}  // namespace shapes
