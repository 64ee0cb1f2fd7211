#pragma once

/**
 * Gram matrices of cone generators. A cone embeds isometrically in a
 * nonnegative orthant iff its Gram matrix is completely positive (G = BBᵀ,
 * B >= 0); doubly nonnegative (PSD, entries >= 0) is the necessary check.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "orthant/errors.hpp"
#include "orthant/numeric.hpp"
#include "orthant/polyhedron.hpp"

namespace orthant {

template <Scalar T>
class GramMatrix {
 public:
  explicit GramMatrix(Mat<T> g) : g_(std::move(g)) {
    if (g_.rows() != g_.cols() || g_.rows() == 0) throw ShapeMismatch("Gram matrix must be square and nonempty");
    for (std::size_t i = 0; i < g_.rows(); ++i) {
      if (!is_positive(g_(i, i))) throw ShapeMismatch("Gram matrix needs a positive diagonal");
      for (std::size_t j = i + 1; j < g_.rows(); ++j)
        if (!same(g_(i, j), g_(j, i))) throw ShapeMismatch("Gram matrix must be symmetric");
    }
  }

  [[nodiscard]] std::size_t m() const noexcept { return g_.rows(); }
  [[nodiscard]] const T& operator()(std::size_t i, std::size_t j) const { return g_(i, j); }
  [[nodiscard]] const Mat<T>& matrix() const noexcept { return g_; }

 private:
  Mat<T> g_;
};

template <Scalar T>
GramMatrix<T> gram_from_rays(const Cone<T>& c) {
  const std::size_t m = c.rays.size();
  Mat<T> g(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = dot(c.rays[i], c.rays[j]);
  return GramMatrix<T>(std::move(g));
}

/**
 * Symmetric elimination with diagonal pivots: a positive pivot is
 * eliminated from the rest; once every remaining diagonal entry is zero the
 * remaining block must vanish, and a negative diagonal refutes.
 */
template <Scalar T>
bool is_positive_semidefinite(Mat<T> a) {
  const std::size_t n = a.rows();
  std::vector<bool> done(n, false);
  for (;;) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (is_negative(a(i, i))) return false;
      if (!pivot && is_positive(a(i, i))) pivot = i;
    }
    if (!pivot) break;
    const std::size_t k = *pivot;
    done[k] = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || is_zero(a(i, k))) continue;
      const T f = a(i, k) / a(k, k);
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j]) a(i, j) -= f * a(k, j);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!done[i] && !done[j] && !is_zero(a(i, j))) return false;
  return true;
}

template <Scalar T>
bool is_doubly_nonnegative(const GramMatrix<T>& g) {
  for (std::size_t i = 0; i < g.m(); ++i)
    for (std::size_t j = 0; j < g.m(); ++j)
      if (is_negative(g(i, j))) return false;
  return is_positive_semidefinite(g.matrix());
}

/// scale · BBᵀ = G with B >= 0 entrywise; scale carries common irrational factors such as √2·√2.
template <Scalar T>
bool verify_cp_decomposition(const GramMatrix<T>& g, const Mat<T>& b, const T& scale = T(1)) {
  if (b.rows() != g.m() || b.cols() == 0) throw ShapeMismatch("decomposition needs one row per generator");
  if (!is_positive(scale)) return false;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (is_negative(b(i, j))) return false;
  for (std::size_t i = 0; i < g.m(); ++i)
    for (std::size_t j = 0; j < g.m(); ++j) {
      T s(0);
      for (std::size_t k = 0; k < b.cols(); ++k) s += b(i, k) * b(j, k);
      if (!same(T(scale * s), g(i, j))) return false;
    }
  return true;
}

/**
 * Exhaustive search for B >= 0 with `cols` columns and entries from `grid`
 * such that BBᵀ = G, row by row with inner products checked as rows are
 * placed. Nothing when no grid matrix works.
 */
template <Scalar T>
std::optional<Mat<T>> find_cp_on_grid(const GramMatrix<T>& g, std::size_t cols, const std::vector<T>& grid) {
  const std::size_t m = g.m();
  // Rows of the right length for each generator.
  std::vector<std::vector<Vec<T>>> candidates(m);
  Vec<T> row(cols);
  std::function<void(std::size_t, const T&)> fill = [&](std::size_t k, const T& norm2) {
    if (k == cols) {
      for (std::size_t i = 0; i < m; ++i)
        if (same(norm2, g(i, i))) candidates[i].push_back(row);
      return;
    }
    for (const auto& v : grid) {
      row[k] = v;
      fill(k + 1, T(norm2 + v * v));
    }
  };
  fill(0, T(0));

  std::vector<Vec<T>> chosen;
  std::function<bool(std::size_t)> place = [&](std::size_t i) {
    if (i == m) return true;
    for (const auto& r : candidates[i]) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) ok = same(dot(r, chosen[j]), g(i, j));
      if (!ok) continue;
      chosen.push_back(r);
      if (place(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return Mat<T>::from_rows(chosen);
}

}  // namespace orthant
