#pragma once

/**
 * The Bang system Q t = c of a polyhedron: one equation per coordinate
 * pair (p, q), p <= q, one unknown per facet,
 *
 *   Σ_i a_ip a_iq t_i = δ_pq.
 *
 * Rows: the n diagonal pairs (p, p) first, then p < q lexicographically.
 * A strictly positive solution exists exactly when the polyhedron is an
 * orthant section, with t_i the squared scale of facet i.
 */

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "orthant/numeric.hpp"
#include "orthant/polyhedron.hpp"

namespace orthant {

using CoordinatePair = std::pair<std::size_t, std::size_t>;

/// Row order of the Bang system in dimension n (0-based coordinates).
inline std::vector<CoordinatePair> bang_pairs(std::size_t n) {
  std::vector<CoordinatePair> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t p = 0; p < n; ++p) pairs.emplace_back(p, p);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = p + 1; q < n; ++q) pairs.emplace_back(p, q);
  return pairs;
}

template <Scalar T>
struct BangSystem {
  std::size_t dim = 0;
  std::vector<CoordinatePair> pairs;
  Mat<T> q;
  Vec<T> c;

  [[nodiscard]] std::size_t equations() const noexcept { return q.rows(); }
  [[nodiscard]] std::size_t unknowns() const noexcept { return q.cols(); }
};

/// Bang system of the rows of `normals` (m x n).
template <Scalar T>
BangSystem<T> build_bang_system(const Mat<T>& normals) {
  const std::size_t n = normals.cols(), m = normals.rows();
  BangSystem<T> s{n, bang_pairs(n), Mat<T>(n * (n + 1) / 2, m), Vec<T>(n * (n + 1) / 2, T(0))};
  for (std::size_t r = 0; r < s.pairs.size(); ++r) {
    const auto [p, q] = s.pairs[r];
    for (std::size_t i = 0; i < m; ++i) s.q(r, i) = normals(i, p) * normals(i, q);
    if (p == q) s.c[r] = T(1);
  }
  return s;
}

template <Scalar T>
BangSystem<T> build_bang_system(const Polyhedron<T>& p) {
  return build_bang_system(p.normals());
}

/// The sub-system in the unknowns listed in `columns`.
template <Scalar T>
BangSystem<T> restrict_columns(const BangSystem<T>& s, std::span<const std::size_t> columns) {
  return {s.dim, s.pairs, s.q.select_columns(columns), s.c};
}

template <Scalar T>
std::size_t poly_rank(const BangSystem<T>& s) {
  return rank(s.q);
}

template <Scalar T>
std::size_t poly_rank(const Polyhedron<T>& p) {
  return poly_rank(build_bang_system(p));
}

/// rank Q = rank [Q | c]: the system has a (sign-free) solution.
template <Scalar T>
bool is_consistent(const BangSystem<T>& s) {
  return rank(s.q) == rank(s.q.augment(s.c));
}

template <Scalar T>
bool is_consistent(const Polyhedron<T>& p) {
  return is_consistent(build_bang_system(p));
}

}  // namespace orthant
