#pragma once

/**
 * Hedgehogs: facet-normal directions modulo sign, and the reduced form of a
 * polyhedron.
 *
 * Needle representatives are sign-fixed so that the last nonzero coordinate
 * is positive. Exact backend: primitive integer vectors with their squared
 * norm; angles are compared through squared cosines and signs only. Float
 * backend: unit vectors.
 */

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "orthant/bang.hpp"
#include "orthant/numeric.hpp"
#include "orthant/polyhedron.hpp"

namespace orthant {

inline constexpr std::size_t kMaxCompareNeedles = 9;

namespace detail {

template <Scalar T>
Vec<T> canonical_needle(const Vec<T>& v) {
  Vec<T> out;
  if constexpr (is_exact_v<T>) {
    out = primitive(v);
  } else {
    T n2(0);
    for (const auto& x : v) n2 += x * x;
    const T norm = *scalar_traits<T>::sqrt(n2);
    out = v;
    for (auto& x : out) x = is_zero(T(x / norm)) ? T(0) : T(x / norm);
  }
  for (std::size_t k = out.size(); k-- > 0;) {
    if (is_zero(out[k])) continue;
    if (is_negative(out[k]))
      for (auto& x : out) x = -x;
    break;
  }
  return out;
}

inline Integer ceil_isqrt(const Integer& x) {
  Integer r = boost::multiprecision::sqrt(x);
  if (r * r < x) ++r;
  return r;
}

}  // namespace detail

template <Scalar T>
struct Hedgehog {
  std::size_t dim = 0;
  std::vector<Vec<T>> needles;
  /// |needle|²; 1 on the float backend.
  std::vector<T> norms2;
  /// The leading independent needles were rotated into staircase form.
  bool staircase = false;

  [[nodiscard]] std::size_t size() const noexcept { return needles.size(); }

  /// Canonical representatives of `vectors`, proportional ones merged (first kept).
  static Hedgehog from_needles(std::size_t dim, const std::vector<Vec<T>>& vectors) {
    Hedgehog h;
    h.dim = dim;
    for (const auto& v : vectors) {
      if (v.size() != dim) throw DimensionMismatch("needle dimension differs from hedgehog dimension");
      if (is_zero_vector(v)) throw ShapeMismatch("zero needle");
      const Vec<T> c = detail::canonical_needle(v);
      const bool seen = std::any_of(h.needles.begin(), h.needles.end(), [&](const Vec<T>& u) { return proportional(u, c); });
      if (seen) continue;
      h.norms2.push_back(dot(c, c));
      h.needles.push_back(c);
    }
    return h;
  }

  /// Largest squared cosine between distinct needles (0 for a single needle).
  [[nodiscard]] T max_cos2() const {
    T best(0);
    for (std::size_t j = 0; j < size(); ++j)
      for (std::size_t k = j + 1; k < size(); ++k) {
        const T d = dot(needles[j], needles[k]);
        const T c2 = d * d / (norms2[j] * norms2[k]);
        if (c2 > best) best = c2;
      }
    return best;
  }

  /**
   * Rows of the reduced system: unit needles on the float backend. On the
   * exact backend needle_j / s_j with rational s_j slightly above |needle_j|,
   * close enough that every row stays facet-defining with offset -1.
   */
  [[nodiscard]] std::vector<Vec<T>> system_rows() const {
    std::vector<Vec<T>> rows;
    if constexpr (is_exact_v<T>) {
      const Rational delta = (Rational(1) - max_cos2()) / 4;
      const Rational shrink2 = (Rational(1) - delta) * (Rational(1) - delta);
      for (std::size_t j = 0; j < size(); ++j) {
        const Integer n2 = boost::multiprecision::numerator(norms2[j]);
        Integer q(1);
        Rational s;
        for (;;) {
          s = Rational(detail::ceil_isqrt(q * q * n2), q);
          if (s * s * shrink2 <= norms2[j]) break;
          q *= 2;
        }
        Vec<T> r = needles[j];
        for (auto& x : r) x /= s;
        rows.push_back(std::move(r));
      }
    } else {
      rows = needles;
    }
    return rows;
  }

  /// The reduced system s(y): system_rows() with every offset -1.
  [[nodiscard]] Polyhedron<T> system() const {
    if (needles.empty()) throw ShapeMismatch("empty hedgehog");
    return Polyhedron<T>::from_rows(system_rows(), Vec<T>(size(), T(-1)));
  }
};

/**
 * Reduced form of a polyhedron together with the bookkeeping that maps
 * Bang-system answers for the reduced system back to the original rows.
 */
template <Scalar T>
struct Reduction {
  Hedgehog<T> hedgehog;
  /// Reduced system s(y) in rotated coordinates.
  Polyhedron<T> system;
  /// Orthogonal, det +1; reduced coordinates are rotation · original ones.
  Mat<T> rotation;
  /// Needle index of each original row.
  std::vector<std::size_t> needle_of;
  /// rotation · a_i = scale_i · (row needle_of[i] of system).
  Vec<T> scale;
  /// First original row of each needle.
  std::vector<std::size_t> source_rows;

  /// Positive Bang solution of the reduced system → one of the original.
  [[nodiscard]] Vec<T> lift_witness(const Vec<T>& tau) const {
    if (tau.size() != hedgehog.size()) throw ShapeMismatch("witness length differs from needle count");
    std::vector<std::size_t> copies(hedgehog.size(), 0);
    for (auto j : needle_of) ++copies[j];
    Vec<T> t(needle_of.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      t[i] = tau[needle_of[i]] / (scale[i] * scale[i] * T(static_cast<int>(copies[needle_of[i]])));
    return t;
  }

  /**
   * Refutation y for the reduced Bang system → one for the original. With
   * Y the symmetric matrix (Y_pp = y_pp, Y_pq = y_pq / 2), a_iᵀ Y' a_i and
   * tr Y' are preserved by Y' = Rᵀ Y R up to positive factors.
   */
  [[nodiscard]] Vec<T> lift_certificate(const Vec<T>& y) const {
    const std::size_t n = hedgehog.dim;
    const auto pairs = bang_pairs(n);
    if (y.size() != pairs.size()) throw ShapeMismatch("certificate length differs from equation count");
    Mat<T> ym(n, n);
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto [p, q] = pairs[r];
      if (p == q) {
        ym(p, p) = y[r];
      } else {
        ym(p, q) = y[r] / T(2);
        ym(q, p) = ym(p, q);
      }
    }
    const Mat<T> lifted = rotation.transpose() * ym * rotation;
    Vec<T> out(pairs.size());
    for (std::size_t r = 0; r < pairs.size(); ++r) {
      const auto [p, q] = pairs[r];
      out[r] = p == q ? lifted(p, p) : T(lifted(p, q) * T(2));
    }
    return primitive(out);
  }
};

/**
 * Reduced form: merge proportional rows (first kept), rotate so the first
 * n-1 independent needles form a staircase, normalize, fix signs, and set
 * every offset to -1. The exact backend skips the rotation when it would
 * need irrational entries (hedgehog.staircase is then false).
 */
template <Scalar T>
Reduction<T> reduce(const Polyhedron<T>& p) {
  const std::size_t n = p.dim(), m = p.facets();
  if (!is_nondegenerate(p)) throw DegeneratePolyhedron();

  std::vector<std::size_t> source_rows, needle_of(m);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t j = 0;
    while (j < source_rows.size() && !proportional<T>(p.normal(source_rows[j]), p.normal(i))) ++j;
    if (j == source_rows.size()) source_rows.push_back(i);
    needle_of[i] = j;
  }

  // Leading independent prefix of size n-1, completed by its orthogonal
  // complement; Gram-Schmidt of that list gives the rows of the rotation.
  std::vector<Vec<T>> basis;
  for (auto i : source_rows) {
    if (basis.size() + 1 >= n) break;
    std::vector<Vec<T>> trial = basis;
    trial.push_back(p.normals().row_vec(i));
    if (rank(Mat<T>::from_rows(trial, n)) == trial.size()) basis = std::move(trial);
  }
  const auto complement = kernel_basis(Mat<T>::from_rows(basis, n));
  std::vector<Vec<T>> frame_input = basis;
  frame_input.push_back(complement.front());
  Mat<T> rotation = Mat<T>::identity(n);
  bool staircase = false;
  if (auto frame = orthonormalize(frame_input)) {
    rotation = Mat<T>::from_rows(*frame, n);
    if (is_negative(determinant(rotation)))
      for (auto& x : rotation.row(n - 1)) x = -x;
    staircase = true;
  }

  std::vector<Vec<T>> rotated;
  for (std::size_t i = 0; i < m; ++i) {
    Vec<T> v = multiply(rotation, p.normal(i));
    if constexpr (!is_exact_v<T>)
      for (auto& x : v)
        if (is_zero(x)) x = T(0);
    rotated.push_back(std::move(v));
  }
  std::vector<Vec<T>> reps;
  for (auto i : source_rows) reps.push_back(rotated[i]);
  Hedgehog<T> h = Hedgehog<T>::from_needles(n, reps);
  h.staircase = staircase;
  if (h.size() != source_rows.size()) throw Error("needle merge mismatch after rotation");

  auto rows = h.system_rows();
  Vec<T> scale(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Vec<T>& r = rows[needle_of[i]];
    std::size_t k = 0;
    for (std::size_t c = 1; c < n; ++c)
      if (std::abs(to_double(r[c])) > std::abs(to_double(r[k]))) k = c;
    scale[i] = rotated[i][k] / r[k];
  }
  Polyhedron<T> system = Polyhedron<T>::from_rows(rows, Vec<T>(h.size(), T(-1)));
  return {std::move(h), std::move(system), std::move(rotation), std::move(needle_of), std::move(scale),
          std::move(source_rows)};
}

namespace detail {

// Gram entry between unit needles as (sign, cos²).
template <Scalar T>
struct GramEntry {
  int sign = 0;
  T cos2{0};
};

template <Scalar T>
std::vector<std::vector<GramEntry<T>>> gram_entries(const std::vector<Vec<T>>& needles, const std::vector<T>& norms2) {
  const std::size_t m = needles.size();
  std::vector<std::vector<GramEntry<T>>> g(m, std::vector<GramEntry<T>>(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) {
      const T d = dot(needles[j], needles[k]);
      g[j][k] = {sign(d), T(d * d / (norms2[j] * norms2[k]))};
    }
  return g;
}

template <Scalar T>
bool same_signature(const std::vector<T>& a, const std::vector<T>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

/**
 * True iff some permutation π and signs σ give
 * G_b[π(j)][π(k)] = σ_j σ_k G_a[j][k] for all j, k.
 */
template <Scalar T>
bool gram_match(const std::vector<Vec<T>>& a, const std::vector<T>& na, const std::vector<Vec<T>>& b,
                const std::vector<T>& nb) {
  const std::size_t m = a.size();
  if (b.size() != m) return false;
  if (m > kMaxCompareNeedles) throw TooManyNeedles();
  const auto ga = gram_entries(a, na), gb = gram_entries(b, nb);
  auto signature = [](const auto& g, std::size_t j) {
    std::vector<T> s;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (k != j) s.push_back(g[j][k].cos2);
    std::sort(s.begin(), s.end());
    return s;
  };
  std::vector<std::vector<bool>> compatible(m, std::vector<bool>(m));
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t c = 0; c < m; ++c) compatible[j][c] = same_signature(signature(ga, j), signature(gb, c));

  std::vector<std::size_t> pi(m);
  std::vector<int> sigma(m, 1);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> assign = [&](std::size_t j) {
    if (j == m) return true;
    for (std::size_t c = 0; c < m; ++c) {
      if (used[c] || !compatible[j][c]) continue;
      for (int s : {1, -1}) {
        if (j == 0 && s < 0) continue;  // a global sign flip changes nothing
        bool ok = true;
        for (std::size_t k = 0; k < j && ok; ++k) {
          const auto& ea = ga[j][k];
          const auto& eb = gb[c][pi[k]];
          ok = same(ea.cos2, eb.cos2) && ea.sign * s * sigma[k] == eb.sign;
        }
        if (!ok) continue;
        used[c] = true;
        pi[j] = c;
        sigma[j] = s;
        if (assign(j + 1)) return true;
        used[c] = false;
      }
    }
    return false;
  };
  return assign(0);
}

}  // namespace detail

/// Equal up to an orthogonal map: Gram matrices agree up to permutation and signs.
template <Scalar T>
bool equal(const Hedgehog<T>& h1, const Hedgehog<T>& h2) {
  if (h1.size() > kMaxCompareNeedles || h2.size() > kMaxCompareNeedles) throw TooManyNeedles();
  if (h1.dim != h2.dim) return false;
  return detail::gram_match(h1.needles, h1.norms2, h2.needles, h2.norms2);
}

/// Some |h1|-subset of h2's needles is equal to h1.
template <Scalar T>
bool is_subhedgehog(const Hedgehog<T>& h1, const Hedgehog<T>& h2) {
  if (h1.size() > kMaxCompareNeedles || h2.size() > kMaxCompareNeedles) throw TooManyNeedles();
  if (h1.dim != h2.dim || h1.size() > h2.size()) return false;
  bool found = false;
  detail::for_each_subset(h2.size(), h1.size(), [&](std::span<const std::size_t> idx) {
    std::vector<Vec<T>> sub;
    std::vector<T> norms;
    for (auto i : idx) {
      sub.push_back(h2.needles[i]);
      norms.push_back(h2.norms2[i]);
    }
    found = detail::gram_match(h1.needles, h1.norms2, sub, norms);
    return !found;
  });
  return found;
}

/**
 * Needles of both (same coordinates assumed), merged mod sign; reduced
 * again when they span the space.
 */
template <Scalar T>
Hedgehog<T> unite(const Hedgehog<T>& h1, const Hedgehog<T>& h2) {
  if (h1.dim != h2.dim) throw DimensionMismatch("hedgehogs live in different dimensions");
  std::vector<Vec<T>> all = h1.needles;
  all.insert(all.end(), h2.needles.begin(), h2.needles.end());
  Hedgehog<T> merged = Hedgehog<T>::from_needles(h1.dim, all);
  const auto rows = Mat<T>::from_rows(merged.needles, h1.dim);
  if (rank(rows) < h1.dim) return merged;
  return reduce(Polyhedron<T>(rows, Vec<T>(merged.size(), T(-1)))).hedgehog;
}

}  // namespace orthant
