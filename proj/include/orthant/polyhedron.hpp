#pragma once

/**
 * Polyhedra in H-representation {x : a_i·x >= b_i}, recession cones, and
 * generators for the standard families.
 *
 * Rows are stored as given (not normalized).
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "orthant/numeric.hpp"
#include "orthant/simplex.hpp"

namespace orthant {

template <Scalar T>
class Polyhedron {
 public:
  Polyhedron(Mat<T> a, Vec<T> b) : a_(std::move(a)), b_(std::move(b)) {
    if (a_.rows() == 0 || a_.cols() == 0) throw ShapeMismatch("polyhedron needs at least one row and column");
    if (b_.size() != a_.rows()) throw ShapeMismatch("offset vector length differs from row count");
    for (std::size_t i = 0; i < a_.rows(); ++i)
      if (is_zero_vector<T>(a_.row(i))) throw ShapeMismatch("zero normal in row " + std::to_string(i));
  }

  static Polyhedron from_rows(const std::vector<Vec<T>>& normals, Vec<T> offsets) {
    return Polyhedron(Mat<T>::from_rows(normals), std::move(offsets));
  }

  [[nodiscard]] std::size_t dim() const noexcept { return a_.cols(); }
  [[nodiscard]] std::size_t facets() const noexcept { return a_.rows(); }
  [[nodiscard]] const Mat<T>& normals() const noexcept { return a_; }
  [[nodiscard]] const Vec<T>& offsets() const noexcept { return b_; }
  [[nodiscard]] std::span<const T> normal(std::size_t i) const { return a_.row(i); }
  [[nodiscard]] const T& offset(std::size_t i) const { return b_[i]; }

  [[nodiscard]] T slack(std::size_t i, std::span<const T> x) const { return dot<T>(a_.row(i), x) - b_[i]; }

  [[nodiscard]] bool contains(std::span<const T> x) const {
    if (x.size() != dim()) throw DimensionMismatch("point dimension differs from polyhedron dimension");
    for (std::size_t i = 0; i < facets(); ++i)
      if (is_negative(slack(i, x))) return false;
    return true;
  }
  [[nodiscard]] bool contains(const Vec<T>& x) const { return contains(std::span<const T>(x)); }

  [[nodiscard]] Polyhedron select(std::span<const std::size_t> rows) const {
    Vec<T> b;
    for (auto r : rows) b.push_back(b_[r]);
    return Polyhedron(a_.select_rows(rows), std::move(b));
  }

  friend bool operator==(const Polyhedron& p, const Polyhedron& q) { return p.a_ == q.a_ && p.b_ == q.b_; }

 private:
  Mat<T> a_;
  Vec<T> b_;
};

template <Scalar T>
struct Cone {
  std::size_t dim = 0;
  std::vector<Vec<T>> rays;
};

template <Scalar T>
bool is_nondegenerate(const Polyhedron<T>& p) {
  return rank(p.normals()) == p.dim();
}

namespace detail {

// min f·x over {a_r·x >= b_r : r in rows}; nullopt when unbounded below.
// Throws EmptyPolyhedron when the rows are infeasible.
template <Scalar T>
std::optional<LpOptimal<T>> minimize_over(const Polyhedron<T>& p, std::span<const std::size_t> rows,
                                          std::span<const T> f) {
  const std::size_t n = p.dim(), k = rows.size();
  LpProblem<T> lp;
  lp.objective.assign(n + k, T(0));
  for (std::size_t j = 0; j < n; ++j) lp.objective[j] = -f[j];
  lp.eq_lhs = Mat<T>(k, n + k);
  lp.eq_rhs.resize(k);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t j = 0; j < n; ++j) lp.eq_lhs(r, j) = p.normal(rows[r])[j];
    lp.eq_lhs(r, n + r) = T(-1);
    lp.eq_rhs[r] = p.offset(rows[r]);
  }
  lp.lower_bounds.assign(n, std::nullopt);
  lp.lower_bounds.resize(n + k, T(0));
  auto res = solve(lp);
  if (std::holds_alternative<LpInfeasible<T>>(res)) throw EmptyPolyhedron();
  if (std::holds_alternative<LpUnbounded<T>>(res)) return std::nullopt;
  auto opt = std::get<LpOptimal<T>>(std::move(res));
  opt.x.resize(n);
  opt.value = dot<T>(f, std::span<const T>(opt.x));
  return opt;
}

inline std::vector<std::size_t> iota(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

// Calls fn(indices) for every k-subset of {0..n-1} in lexicographic order;
// stops early when fn returns false.
template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx = iota(k);
  for (;;) {
    if (!fn(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Minimum of f·x over P; nullopt when unbounded below.
template <Scalar T>
std::optional<T> functional_min(const Polyhedron<T>& p, const Vec<T>& f) {
  if (f.size() != p.dim()) throw DimensionMismatch("functional dimension differs from polyhedron dimension");
  const auto rows = detail::iota(p.facets());
  auto opt = detail::minimize_over<T>(p, rows, f);
  if (!opt) return std::nullopt;
  return opt->value;
}

template <Scalar T>
struct InteriorPoint {
  Vec<T> point;
  /// Largest common slack, capped at 1.
  T margin;
};

/**
 * Point maximizing min_i (a_i·x - b_i), capped at 1. Throws
 * EmptyOrLowerDimensional when that maximum is not positive.
 */
template <Scalar T>
InteriorPoint<T> interior_point(const Polyhedron<T>& p) {
  const std::size_t n = p.dim(), m = p.facets();
  // Variables: x (free), eps (free), s (m, >= 0), r (>= 0).
  const std::size_t eps = n, r = n + 1 + m;
  LpProblem<T> lp;
  lp.objective.assign(n + m + 2, T(0));
  lp.objective[eps] = T(1);
  lp.eq_lhs = Mat<T>(m + 1, n + m + 2);
  lp.eq_rhs.assign(m + 1, T(0));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) lp.eq_lhs(i, j) = p.normal(i)[j];
    lp.eq_lhs(i, eps) = T(-1);
    lp.eq_lhs(i, n + 1 + i) = T(-1);
    lp.eq_rhs[i] = p.offset(i);
  }
  lp.eq_lhs(m, eps) = T(1);
  lp.eq_lhs(m, r) = T(1);
  lp.eq_rhs[m] = T(1);
  lp.lower_bounds.assign(n + 1, std::nullopt);
  lp.lower_bounds.resize(n + m + 2, T(0));
  const auto res = solve(lp);
  if (!std::holds_alternative<LpOptimal<T>>(res)) throw EmptyOrLowerDimensional();
  const auto& opt = std::get<LpOptimal<T>>(res);
  if (!is_positive(opt.value)) throw EmptyOrLowerDimensional();
  return {Vec<T>(opt.x.begin(), opt.x.begin() + static_cast<std::ptrdiff_t>(n)), opt.value};
}

/**
 * Sub-system with the same point set in which every row is facet-defining.
 * Rows are examined from last to first, so among duplicates the first
 * listed survives. Surviving rows keep their original order.
 */
template <Scalar T>
Polyhedron<T> remove_redundant(const Polyhedron<T>& p) {
  interior_point(p);
  std::vector<bool> keep(p.facets(), true);
  for (std::size_t i = p.facets(); i-- > 0;) {
    std::vector<std::size_t> others;
    for (std::size_t r = 0; r < p.facets(); ++r)
      if (r != i && keep[r]) others.push_back(r);
    if (others.empty()) continue;
    const auto opt = detail::minimize_over<T>(p, others, p.normal(i));
    if (opt && !is_negative(T(opt->value - p.offset(i)))) keep[i] = false;
  }
  std::vector<std::size_t> rows;
  for (std::size_t r = 0; r < p.facets(); ++r)
    if (keep[r]) rows.push_back(r);
  return p.select(rows);
}

inline constexpr std::size_t kMaxRecessionDim = 6;

/**
 * Extreme rays of {d : A d >= 0}, one primitive representative each,
 * sorted lexicographically in decreasing order.
 */
template <Scalar T>
Cone<T> recession_rays(const Polyhedron<T>& p) {
  const std::size_t n = p.dim();
  if (n > kMaxRecessionDim) throw DimensionTooLarge("recession cone enumeration limited to dimension 6");
  if (!is_nondegenerate(p)) throw DegeneratePolyhedron();
  Cone<T> cone{n, {}};
  auto admit = [&](const Vec<T>& d) {
    const Vec<T> ad = multiply(p.normals(), d);
    for (const auto& x : ad)
      if (is_negative(x)) return;
    const Vec<T> ray = primitive(d);
    for (const auto& r : cone.rays)
      if (proportional(r, ray) && is_positive(dot(r, ray))) return;
    cone.rays.push_back(ray);
  };
  detail::for_each_subset(p.facets(), n - 1, [&](std::span<const std::size_t> rows) {
    const Mat<T> sub = p.normals().select_rows(rows);
    if (rank(sub) != n - 1) return true;
    const auto basis = kernel_basis(sub.rows() == 0 ? Mat<T>(0, n) : sub);
    Vec<T> d = basis.front();
    admit(d);
    for (auto& x : d) x = -x;
    admit(d);
    return true;
  });
  std::sort(cone.rays.begin(), cone.rays.end(), [](const Vec<T>& u, const Vec<T>& w) { return w < u; });
  return cone;
}

template <Scalar T>
bool is_bounded(const Polyhedron<T>& p) {
  return recession_rays(p).rays.empty();
}

/// Vertices by enumeration of n-subsets of rows, sorted lexicographically.
template <Scalar T>
std::vector<Vec<T>> vertices(const Polyhedron<T>& p) {
  const std::size_t n = p.dim();
  std::vector<Vec<T>> out;
  detail::for_each_subset(p.facets(), n, [&](std::span<const std::size_t> rows) {
    const Mat<T> sub = p.normals().select_rows(rows);
    if (rank(sub) != n) return true;
    Vec<T> rhs;
    for (auto r : rows) rhs.push_back(p.offset(r));
    const auto x = solve_linear(sub, rhs);
    if (!x || !p.contains(*x)) return true;
    for (const auto& v : out) {
      bool equal = true;
      for (std::size_t k = 0; k < n && equal; ++k) equal = same(v[k], (*x)[k]);
      if (equal) return true;
    }
    out.push_back(*x);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

/// Unit cube [0,1]^n: rows x_i >= 0 for all i, then -x_i >= -1.
template <Scalar T>
Polyhedron<T> cube(std::size_t n) {
  if (n == 0) throw ShapeMismatch("dimension must be positive");
  Mat<T> a(2 * n, n);
  Vec<T> b(2 * n, T(0));
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = T(1);
    a(n + i, i) = T(-1);
    b[n + i] = T(-1);
  }
  return {std::move(a), std::move(b)};
}

/// Rows ±x_1 ± ... ± x_n >= -1; bit k of the row index flips the sign of x_{k+1}.
template <Scalar T>
Polyhedron<T> cross_polytope(std::size_t n) {
  if (n == 0) throw ShapeMismatch("dimension must be positive");
  if (n > 20) throw DimensionTooLarge();
  const std::size_t m = std::size_t{1} << n;
  Mat<T> a(m, n);
  for (std::size_t mask = 0; mask < m; ++mask)
    for (std::size_t k = 0; k < n; ++k) a(mask, k) = (mask >> k) & 1U ? T(-1) : T(1);
  return {std::move(a), Vec<T>(m, T(-1))};
}

/**
 * For each pair i < j: x_i - x_j >= -1, x_j - x_i >= -1, x_i + x_j >= -1;
 * then x_i >= -2/3 for each i. Its Bang matrix has full rank n(n+1)/2.
 */
template <Scalar T>
Polyhedron<T> endgo(std::size_t n) {
  if (n < 2) throw ShapeMismatch("endgo needs dimension at least 2");
  std::vector<Vec<T>> rows;
  Vec<T> b;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Vec<T> r(n, T(0));
      r[i] = T(1);
      r[j] = T(-1);
      rows.push_back(r);
      r[i] = T(-1);
      r[j] = T(1);
      rows.push_back(r);
      r[i] = T(1);
      r[j] = T(1);
      rows.push_back(r);
      b.insert(b.end(), 3, T(-1));
    }
  for (std::size_t i = 0; i < n; ++i) {
    Vec<T> r(n, T(0));
    r[i] = T(1);
    rows.push_back(r);
    b.push_back(fraction<T>(-2, 3));
  }
  return Polyhedron<T>::from_rows(rows, std::move(b));
}

/**
 * The simplex with vertices alpha_i e_i in R^{k}, k = alphas.size(),
 * written in an orthonormal frame of its affine hull with the first vertex
 * at the origin. Row i is x_i >= 0 restricted to the hull. Exact backend
 * throws NotExactlyRepresentable when the frame needs irrational entries.
 */
template <Scalar T>
Polyhedron<T> simplex_from_alphas(const Vec<T>& alphas) {
  const std::size_t k = alphas.size();
  if (k < 2) throw ShapeMismatch("simplex needs at least two vertices");
  for (const auto& a : alphas)
    if (!is_positive(a)) throw ShapeMismatch("simplex parameters must be positive");
  // Edge directions alpha_j e_j - alpha_0 e_0 span the hull's direction space.
  std::vector<Vec<T>> edges;
  for (std::size_t j = 1; j < k; ++j) {
    Vec<T> e(k, T(0));
    e[0] = -alphas[0];
    e[j] = alphas[j];
    edges.push_back(e);
  }
  const auto frame = orthonormalize(edges);
  if (!frame) throw NotExactlyRepresentable("simplex frame is irrational; use the float backend");
  // x = alpha_0 e_0 + Σ_c y_c w_c, so x_i >= 0 reads Σ_c (w_c)_i y_c >= -alpha_0 [i = 0].
  Mat<T> a(k, k - 1);
  Vec<T> b(k, T(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t c = 0; c + 1 < k; ++c) a(i, c) = (*frame)[c][i];
  b[0] = -alphas[0];
  return {std::move(a), std::move(b)};
}

/**
 * Random bounded full-dimensional polytope with small integer normals,
 * minimal, containing the origin in its interior.
 */
template <Scalar T>
Polyhedron<T> random_polytope(std::size_t n, std::size_t max_facets, std::uint64_t seed) {
  if (n == 0) throw ShapeMismatch("dimension must be positive");
  if (max_facets < n + 1) throw ShapeMismatch("a bounded polytope needs at least n+1 facets");
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> coeff(-3, 3), offset(1, 4);
  for (;;) {
    std::vector<Vec<T>> rows;
    Vec<T> b;
    std::uniform_int_distribution<std::size_t> count(n + 1, max_facets);
    const std::size_t m = count(gen);
    while (rows.size() < m) {
      Vec<T> r(n);
      bool nonzero = false;
      for (auto& x : r) {
        const int c = coeff(gen);
        x = T(c);
        nonzero = nonzero || c != 0;
      }
      if (!nonzero) continue;
      rows.push_back(r);
      b.push_back(T(-offset(gen)));
    }
    auto p = Polyhedron<T>::from_rows(rows, b);
    if (!is_nondegenerate(p) || !is_bounded(p)) continue;
    return remove_redundant(p);
  }
}

}  // namespace orthant
