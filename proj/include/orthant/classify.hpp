#pragma once

/**
 * Closed-form orthantness tests: planar hedgehogs by the angles between
 * consecutive needles, simplices by their squared edge lengths.
 *
 * Everything here is decided by signs of inner products and polynomial
 * identities in squared lengths, so the exact backend never needs roots.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "orthant/hedgehog.hpp"
#include "orthant/numeric.hpp"

namespace orthant {

enum class Class2DVerdict { OrthantDegenerate, OrthantB1, OrthantB2, NotOrthant };

inline std::string_view to_string(Class2DVerdict v) {
  switch (v) {
    case Class2DVerdict::OrthantDegenerate:
      return "OrthantDegenerate";
    case Class2DVerdict::OrthantB1:
      return "OrthantB1";
    case Class2DVerdict::OrthantB2:
      return "OrthantB2";
    case Class2DVerdict::NotOrthant:
      return "NotOrthant";
  }
  return "?";
}

inline bool is_orthant(Class2DVerdict v) { return v != Class2DVerdict::NotOrthant; }

template <Scalar T>
struct Class2D {
  Class2DVerdict verdict = Class2DVerdict::NotOrthant;
  /// Upper half-plane representatives in increasing angle.
  std::vector<Vec<T>> sorted_needles;
  /// 1-based index of the last needle within a right angle of the first; set when m > 2.
  std::optional<std::size_t> p_index;
};

/**
 * Planar classification. With angles ψ_1 < ... < ψ_m in [0, π):
 *
 * - OrthantDegenerate: m = 2 and the needles are perpendicular.
 * - otherwise orthant iff m > 2 and every cyclic gap, ψ_{i+1} - ψ_i and
 *   π - (ψ_m - ψ_1), is below π/2. Labelled OrthantB1 when m = 4 and the
 *   needles form two perpendicular pairs, OrthantB2 when three of them cut
 *   out an acute triangle.
 *
 * A gap ψ_j - ψ_i in (0, π) is below π/2 iff a_i·a_j > 0.
 */
template <Scalar T>
Class2D<T> classify_2d(const Hedgehog<T>& h) {
  if (h.dim != 2) throw WrongDimension("planar classification needs a 2-dimensional hedgehog");
  Class2D<T> out;
  for (const auto& v : h.needles) out.sorted_needles.push_back(detail::canonical_needle(v));
  auto& a = out.sorted_needles;
  std::sort(a.begin(), a.end(), [](const Vec<T>& u, const Vec<T>& w) { return is_positive(T(u[0] * w[1] - u[1] * w[0])); });
  const std::size_t m = a.size();
  auto d = [&](std::size_t i, std::size_t j) { return sign(dot(a[i], a[j])); };

  if (m == 2 && d(0, 1) == 0) {
    out.verdict = Class2DVerdict::OrthantDegenerate;
    return out;
  }
  if (m <= 2) return out;

  std::size_t p = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (d(0, i) > 0) p = i;
  out.p_index = p + 1;

  bool gaps_acute = d(0, m - 1) < 0;
  for (std::size_t i = 0; i + 1 < m && gaps_acute; ++i) gaps_acute = d(i, i + 1) > 0;
  if (!gaps_acute) return out;

  if (m == 4 && d(0, 2) == 0 && d(1, 3) == 0) {
    out.verdict = Class2DVerdict::OrthantB1;
    return out;
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        if (d(i, j) > 0 && d(j, k) > 0 && d(i, k) < 0) {
          out.verdict = Class2DVerdict::OrthantB2;
          return out;
        }
  throw Error("planar hedgehog passes the gap test but has neither labelled shape");
}

/** Squared edge lengths of an n-simplex: a symmetric (n+1)x(n+1) matrix. */
template <Scalar T>
class SimplexMetric {
 public:
  explicit SimplexMetric(Mat<T> d2) : d2_(std::move(d2)) {
    if (d2_.rows() != d2_.cols() || d2_.rows() < 2) throw ShapeMismatch("squared-distance matrix must be square, size >= 2");
    for (std::size_t i = 0; i < d2_.rows(); ++i) {
      if (!is_zero(d2_(i, i))) throw NotRealizable("nonzero diagonal entry");
      for (std::size_t j = i + 1; j < d2_.rows(); ++j) {
        if (!same(d2_(i, j), d2_(j, i))) throw NotRealizable("asymmetric squared-distance matrix");
        if (!is_positive(d2_(i, j))) throw NotRealizable("nonpositive squared distance");
      }
    }
  }

  [[nodiscard]] std::size_t n() const noexcept { return d2_.rows() - 1; }
  [[nodiscard]] std::size_t vertices() const noexcept { return d2_.rows(); }
  [[nodiscard]] const T& operator()(std::size_t i, std::size_t j) const { return d2_(i, j); }
  [[nodiscard]] const Mat<T>& matrix() const noexcept { return d2_; }

 private:
  Mat<T> d2_;
};

/// Cayley-Menger determinant of the first k+1 vertices.
template <Scalar T>
T cayley_menger(const SimplexMetric<T>& s, std::size_t k) {
  Mat<T> cm(k + 2, k + 2);
  for (std::size_t i = 1; i < k + 2; ++i) {
    cm(0, i) = T(1);
    cm(i, 0) = T(1);
    for (std::size_t j = 1; j < k + 2; ++j) cm(i, j) = s(i - 1, j - 1);
  }
  return determinant(cm);
}

/// Nondegenerate simplex with these edge lengths exists: (-1)^{k+1} CM_k > 0 for k = 1..n.
template <Scalar T>
bool is_realizable(const SimplexMetric<T>& s) {
  for (std::size_t k = 1; k <= s.n(); ++k) {
    const int expected = k % 2 == 1 ? 1 : -1;
    if (sign(cayley_menger(s, k)) != expected) return false;
  }
  return true;
}

enum class SimplexClass { OrthantAcuteOrthocentric, OrthocentricNotAcute, NotOrthocentric };

inline std::string_view to_string(SimplexClass c) {
  switch (c) {
    case SimplexClass::OrthantAcuteOrthocentric:
      return "OrthantAcuteOrthocentric";
    case SimplexClass::OrthocentricNotAcute:
      return "OrthocentricNotAcute";
    case SimplexClass::NotOrthocentric:
      return "NotOrthocentric";
  }
  return "?";
}

/// For every 4 vertices: AB² + CD² = AC² + BD² = AD² + BC².
template <Scalar T>
bool is_orthocentric(const SimplexMetric<T>& s) {
  bool ok = true;
  detail::for_each_subset(s.vertices(), 4, [&](std::span<const std::size_t> v) {
    const T x = s(v[0], v[1]) + s(v[2], v[3]);
    const T y = s(v[0], v[2]) + s(v[1], v[3]);
    const T z = s(v[0], v[3]) + s(v[1], v[2]);
    ok = same(x, y) && same(x, z);
    return ok;
  });
  return ok;
}

/// Every face angle is acute: d_ij + d_jk > d_ik for all distinct i, j, k.
template <Scalar T>
bool is_acute(const SimplexMetric<T>& s) {
  const std::size_t v = s.vertices();
  for (std::size_t j = 0; j < v; ++j)
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t k = i + 1; k < v; ++k) {
        if (i == j || k == j) continue;
        if (!is_positive(T(s(i, j) + s(j, k) - s(i, k)))) return false;
      }
  return true;
}

template <Scalar T>
SimplexClass classify_simplex(const SimplexMetric<T>& s) {
  if (!is_realizable(s)) throw NotRealizable();
  if (s.n() > 2 && !is_orthocentric(s)) return SimplexClass::NotOrthocentric;
  return is_acute(s) ? SimplexClass::OrthantAcuteOrthocentric : SimplexClass::OrthocentricNotAcute;
}

/**
 * Squared axis intercepts x with x_i + x_j = d²_ij: the simplex is the
 * section of the orthant through the points √x_i e_i.
 * x_i = (d_ij + d_ik - d_jk) / 2 with j, k the two smallest indices != i.
 */
template <Scalar T>
Vec<T> embed_simplex(const SimplexMetric<T>& s) {
  if (s.n() < 2) throw WrongDimension("intercepts are determined only for n >= 2");
  if (classify_simplex(s) != SimplexClass::OrthantAcuteOrthocentric) throw NotOrthant();
  const std::size_t v = s.vertices();
  Vec<T> x(v);
  for (std::size_t i = 0; i < v; ++i) {
    const std::size_t j = i == 0 ? 1 : 0;
    const std::size_t k = i <= 1 ? 2 : 1;
    x[i] = (s(i, j) + s(i, k) - s(j, k)) / T(2);
  }
  for (std::size_t i = 0; i < v; ++i) {
    if (!is_positive(x[i])) throw NotOrthant("nonpositive intercept");
    for (std::size_t j = i + 1; j < v; ++j)
      if (!same(T(x[i] + x[j]), s(i, j))) throw NotOrthant("intercepts do not reproduce the metric");
  }
  return x;
}

/// Metric of the simplex through √x_i e_i: d²_ij = x_i + x_j.
template <Scalar T>
SimplexMetric<T> metric_from_intercepts(const Vec<T>& x) {
  Mat<T> d2(x.size(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (i != j) d2(i, j) = x[i] + x[j];
  return SimplexMetric<T>(std::move(d2));
}

}  // namespace orthant
