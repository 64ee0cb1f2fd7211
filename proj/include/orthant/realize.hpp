#pragma once

/**
 * Isometric realizations of polyhedra as sections of nonnegative orthants.
 *
 * A positive Bang solution t of a system a_i·x >= b_i gives the map
 * x ↦ (√t_i (a_i·x - b_i))_i; it is an isometry exactly when
 * Σ t_i a_i a_iᵀ = I, so every check below stays rational.
 */

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "orthant/bang.hpp"
#include "orthant/polyhedron.hpp"
#include "orthant/positivity.hpp"

namespace orthant {

template <Scalar T>
struct Embedding {
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  /// Squared scale factors of the coordinates; all ones in affine mode.
  Vec<T> t;
  Mat<T> a_ext;
  Vec<T> b_ext;
  /// Rows before this index are the input system's own.
  std::size_t original_rows = 0;
  /// Affine equivalence only: no Gram identity is claimed.
  bool affine = false;

  /// a_i·x - b_i for every row; the image coordinates before scaling.
  [[nodiscard]] Vec<T> slacks(const Vec<T>& x) const {
    Vec<T> s = multiply(a_ext, x);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] -= b_ext[i];
    return s;
  }

  /// Image point with k_i = √t_i in double precision.
  [[nodiscard]] std::vector<double> image(const Vec<T>& x) const {
    const Vec<T> s = slacks(x);
    std::vector<double> y(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) y[i] = std::sqrt(to_double(t[i])) * to_double(s[i]);
    return y;
  }

  /// |φ(x) - φ(y)|², exact: Σ t_i (a_i·(x - y))².
  [[nodiscard]] T image_distance2(const Vec<T>& x, const Vec<T>& y) const {
    Vec<T> d(x.size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = x[j] - y[j];
    const Vec<T> ad = multiply(a_ext, d);
    T sum(0);
    for (std::size_t i = 0; i < ad.size(); ++i) sum += t[i] * ad[i] * ad[i];
    return sum;
  }
};

/// Σ t_i a_i a_iᵀ.
template <Scalar T>
Mat<T> weighted_gram(const Mat<T>& a, const Vec<T>& t) {
  const std::size_t n = a.cols();
  Mat<T> g(n, n);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) g(p, q) += t[i] * a(i, p) * a(i, q);
  return g;
}

/// Packages a positive Bang solution of P's system as its section map.
template <Scalar T>
Embedding<T> build_embedding(const Polyhedron<T>& p, const Vec<T>& t) {
  PositivityOutcome<T> claim;
  claim.verdict = Verdict::Positive;
  claim.witness = t;
  if (t.size() != p.facets() || !verify_outcome(build_bang_system(p), claim)) throw InvalidWitness();
  return {p.dim(), p.facets(), t, p.normals(), p.offsets(), p.facets(), false};
}

/// The affine section of dimension m: same rows, unit weights.
template <Scalar T>
Embedding<T> build_affine_embedding(const Polyhedron<T>& p) {
  if (!is_nondegenerate(p)) throw DegeneratePolyhedron();
  return {p.dim(), p.facets(), Vec<T>(p.facets(), T(1)), p.normals(), p.offsets(), p.facets(), true};
}

namespace detail {

// P's rows followed by the auxiliary functionals not proportional to any
// row kept so far, each offset one below its minimum over P.
template <Scalar T>
Embedding<T> embed_with_auxiliary(const Polyhedron<T>& p, const std::vector<Vec<T>>& auxiliary) {
  std::vector<Vec<T>> rows;
  Vec<T> b = p.offsets();
  for (std::size_t i = 0; i < p.facets(); ++i) rows.push_back(p.normals().row_vec(i));
  for (const auto& f : auxiliary) {
    const bool seen = std::any_of(rows.begin(), rows.end(), [&](const Vec<T>& r) { return proportional(r, f); });
    if (seen) continue;
    const auto lo = functional_min(p, f);
    if (!lo) throw Error("auxiliary functional unbounded below on the polyhedron");
    rows.push_back(f);
    b.push_back(*lo - T(1));
  }
  const auto ext = Polyhedron<T>::from_rows(rows, b);
  const auto out = decide_positive(build_bang_system(ext));
  if (!out.positive()) throw Error("extended system has no positive Bang solution");
  auto e = build_embedding(ext, *out.witness);
  e.original_rows = p.facets();
  return e;
}

}  // namespace detail

/**
 * Any bounded polytope: its rows plus the needles of the full-rank orthant
 * template x_i ± x_j, x_i (parallel copies of P's rows dropped).
 */
template <Scalar T>
Embedding<T> realize_polytope(const Polyhedron<T>& p) {
  if (!is_nondegenerate(p)) throw DegeneratePolyhedron();
  interior_point(p);
  if (!is_bounded(p)) throw UnboundedPolyhedron();
  const auto tmpl = endgo<T>(p.dim());
  std::vector<Vec<T>> aux;
  for (std::size_t i = 0; i < tmpl.facets(); ++i) aux.push_back(tmpl.normals().row_vec(i));
  return detail::embed_with_auxiliary(p, aux);
}

/**
 * Unbounded P whose recession rays are all strictly positive: with
 * ε = ½ min r_i / r_j, the functionals x_i and x_i ± εx_j are positive on
 * the recession cone, hence bounded below on P. Bounded input is passed to
 * realize_polytope.
 */
template <Scalar T>
Embedding<T> realize_unbounded(const Polyhedron<T>& p) {
  if (!is_nondegenerate(p)) throw DegeneratePolyhedron();
  interior_point(p);
  const auto cone = recession_rays(p);
  if (cone.rays.empty()) return realize_polytope(p);
  const std::size_t n = p.dim();
  std::optional<T> ratio;
  for (const auto& r : cone.rays) {
    for (const auto& x : r)
      if (!is_positive(x)) throw RecessionNotStrictlyPositive();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && (!ratio || r[i] / r[j] < *ratio)) ratio = r[i] / r[j];
  }
  const T eps = ratio ? T(*ratio / T(2)) : T(1);
  std::vector<Vec<T>> aux;
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> e(n, T(0));
    e[i] = T(1);
    aux.push_back(e);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (const T& s : {T(-eps), eps}) {
        Vec<T> f(n, T(0));
        f[i] = T(1);
        f[j] = s;
        aux.push_back(f);
      }
    }
  return detail::embed_with_auxiliary(p, aux);
}

/**
 * Gram identity Σ t_i a_i a_iᵀ = I (skipped in affine mode, which instead
 * needs rank n), nonnegative image of every sample, and on the float
 * backend pairwise distances preserved within tolerance.
 */
template <Scalar T>
bool verify_embedding(const Embedding<T>& e, const std::vector<Vec<T>>& samples) {
  const std::size_t n = e.source_dim;
  if (e.a_ext.rows() != e.target_dim || e.a_ext.cols() != n || e.t.size() != e.target_dim ||
      e.b_ext.size() != e.target_dim)
    return false;
  for (const auto& x : e.t)
    if (!is_positive(x)) return false;
  if (e.affine) {
    if (rank(e.a_ext) != n) return false;
  } else {
    const Mat<T> g = weighted_gram(e.a_ext, e.t);
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q)
        if (!same(g(p, q), p == q ? T(1) : T(0))) return false;
  }
  for (const auto& x : samples) {
    if (x.size() != n) return false;
    for (const auto& s : e.slacks(x))
      if (is_negative(s)) return false;
  }
  if constexpr (!is_exact_v<T>) {
    if (!e.affine) {
      const double tol = e.t.front().tolerance();
      for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = i + 1; j < samples.size(); ++j) {
          const auto yi = e.image(samples[i]), yj = e.image(samples[j]);
          double dy = 0, dx = 0;
          for (std::size_t k = 0; k < yi.size(); ++k) dy += (yi[k] - yj[k]) * (yi[k] - yj[k]);
          for (std::size_t k = 0; k < n; ++k) {
            const double d = to_double(samples[i][k]) - to_double(samples[j][k]);
            dx += d * d;
          }
          if (std::abs(std::sqrt(dy) - std::sqrt(dx)) > tol * std::max(1.0, std::sqrt(dx))) return false;
        }
    }
  }
  return true;
}

}  // namespace orthant
