#pragma once

/**
 * Rank-stratified structure: basic orthant subhedgehogs (as many needles as
 * Bang rank, positive solution), decomposition of an orthant hedgehog into
 * them, and reductions to lower dimension.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "orthant/bang.hpp"
#include "orthant/hedgehog.hpp"
#include "orthant/positivity.hpp"

namespace orthant {

inline constexpr std::size_t kMaxDecomposeNeedles = 12;

namespace detail {

template <Scalar T>
BangSystem<T> needle_system(const std::vector<Vec<T>>& needles) {
  return build_bang_system(Mat<T>::from_rows(needles));
}

// Bang system for needles lying in a subspace with orthogonal projector `proj`:
// sum t_i a_i a_iᵀ = proj. Orthant within the subspace iff positive.
template <Scalar T>
BangSystem<T> subspace_system(const std::vector<Vec<T>>& needles, const Mat<T>& proj) {
  auto s = needle_system(needles);
  for (std::size_t r = 0; r < s.pairs.size(); ++r) s.c[r] = proj(s.pairs[r].first, s.pairs[r].second);
  return s;
}

template <Scalar T>
Mat<T> complement_projector(const Vec<T>& normal) {
  const std::size_t n = normal.size();
  const T n2 = dot(normal, normal);
  Mat<T> p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p(i, j) = (i == j ? T(1) : T(0)) - normal[i] * normal[j] / n2;
  return p;
}

}  // namespace detail

/// Basic orthant: needle count equals Bang rank and the Bang system is positive.
template <Scalar T>
bool is_basic_orthant(const Hedgehog<T>& h) {
  const auto s = detail::needle_system(h.needles);
  return poly_rank(s) == h.size() && decide_positive(s).positive();
}

/// Evaluated on the reduced hedgehog, so parallel facets count once.
template <Scalar T>
bool is_basic_orthant(const Polyhedron<T>& p) {
  return is_basic_orthant(reduce(p).hedgehog);
}

template <Scalar T>
struct Decomposition {
  /// Needle indices of each basic orthant subhedgehog, in discovery order.
  std::vector<std::vector<std::size_t>> subsets;
  /// Positive Bang solution of each subset's own system.
  std::vector<Vec<T>> witnesses;
  /// Bang rank of the union of the subsets; equals the full rank.
  std::size_t union_rank = 0;
};

/**
 * Basic orthant subhedgehogs whose union has full Bang rank, found by
 * scanning subsets by size then lexicographically and keeping each one that
 * raises the union rank. Nothing exactly when the hedgehog is not orthant.
 */
template <Scalar T>
std::optional<Decomposition<T>> find_basic_decomposition(const Hedgehog<T>& h) {
  const std::size_t m = h.size();
  if (m > kMaxDecomposeNeedles) throw TooManyFacets("decomposition search is capped at 12 needles");
  const auto full = detail::needle_system(h.needles);
  const std::size_t target = poly_rank(full);
  const std::size_t max_size = std::min(m, full.equations());

  Decomposition<T> out;
  std::vector<std::size_t> covered;
  for (std::size_t k = 1; k <= max_size && out.union_rank < target; ++k) {
    detail::for_each_subset(m, k, [&](std::span<const std::size_t> idx) {
      const auto sub = restrict_columns(full, idx);
      if (poly_rank(sub) != k) return true;
      const auto res = decide_positive(sub);
      if (!res.positive()) return true;
      std::vector<std::size_t> merged = covered;
      merged.insert(merged.end(), idx.begin(), idx.end());
      std::sort(merged.begin(), merged.end());
      merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
      const std::size_t r = poly_rank(restrict_columns(full, merged));
      if (r > out.union_rank) {
        out.subsets.emplace_back(idx.begin(), idx.end());
        out.witnesses.push_back(*res.witness);
        out.union_rank = r;
        covered = std::move(merged);
      }
      return out.union_rank < target;
    });
  }
  if (out.union_rank < target) return std::nullopt;
  return out;
}

template <Scalar T>
std::optional<Decomposition<T>> find_basic_decomposition(const Polyhedron<T>& p) {
  return find_basic_decomposition(reduce(p).hedgehog);
}

template <Scalar T>
struct Split {
  Vec<T> u, v;
  /// Zero coordinates of u and of v; both nonempty and disjoint.
  std::vector<std::size_t> zeros_u, zeros_v;
};

/**
 * The line through a positive solution t along the first kernel vector d
 * leaves the positive orthant at u = t + λ⁺d and v = t + λ⁻d.
 */
template <Scalar T>
Split<T> split_solution(const BangSystem<T>& s, const Vec<T>& t) {
  PositivityOutcome<T> claim;
  claim.verdict = Verdict::Positive;
  claim.witness = t;
  if (t.size() != s.unknowns() || !verify_outcome(s, claim)) throw InvalidWitness();
  const auto kernel = kernel_basis(s.q);
  if (kernel.empty()) throw NoKernel();
  const Vec<T>& d = kernel.front();

  // Every column has a positive diagonal entry, so d has both signs.
  std::optional<T> up, down;
  std::size_t up_at = 0, down_at = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (is_negative(d[i])) {
      const T l = t[i] / -d[i];
      if (!up || l < *up) up = l, up_at = i;
    } else if (is_positive(d[i])) {
      const T l = t[i] / d[i];
      if (!down || l < *down) down = l, down_at = i;
    }
  }
  if (!up || !down) throw Error("kernel direction of a Bang system has a single sign");

  Split<T> out;
  out.u = t;
  out.v = t;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.u[i] += *up * d[i];
    out.v[i] -= *down * d[i];
  }
  out.u[up_at] = T(0);
  out.v[down_at] = T(0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (is_zero(out.u[i])) out.zeros_u.push_back(i);
    if (is_zero(out.v[i])) out.zeros_v.push_back(i);
  }
  return out;
}

template <Scalar T>
struct Peel {
  /// The needle off the hyperplane spanned by the others.
  std::size_t peeled = 0;
  std::vector<std::size_t> coplanar;
  /// Orthonormal basis of the hyperplane, one row per vector.
  std::vector<Vec<T>> frame;
  bool perpendicular = false;
  /// Coplanar needles in frame coordinates, offsets -1.
  Polyhedron<T> sub;
};

/**
 * When all needles but one span a hyperplane α, the hedgehog is orthant iff
 * the odd needle is perpendicular to α and the rest are orthant within α.
 * Picks the last such needle; nothing when there is none or n < 2. Throws
 * NotExactlyRepresentable when α has no rational orthonormal basis.
 */
template <Scalar T>
std::optional<Peel<T>> peel_hyperplane(const Hedgehog<T>& h) {
  const std::size_t n = h.dim, m = h.size();
  if (n < 2 || m < 2 || rank(Mat<T>::from_rows(h.needles)) != n) return std::nullopt;
  for (std::size_t k = m; k-- > 0;) {
    std::vector<Vec<T>> others;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (i != k) others.push_back(h.needles[i]), idx.push_back(i);
    const auto others_mat = Mat<T>::from_rows(others);
    if (rank(others_mat) != n - 1) continue;

    const Vec<T> normal = kernel_basis(others_mat).at(0);
    std::optional<std::vector<Vec<T>>> frame = orthonormalize(kernel_basis(Mat<T>::from_rows({normal})));
    if (!frame) {
      std::vector<Vec<T>> basis;
      for (const auto& v : others) {
        basis.push_back(v);
        if (rank(Mat<T>::from_rows(basis)) < basis.size()) basis.pop_back();
      }
      frame = orthonormalize(basis);
    }
    if (!frame) throw NotExactlyRepresentable("hyperplane has no rational orthonormal basis");

    std::vector<Vec<T>> coords;
    for (const auto& a : others) {
      Vec<T> c;
      for (const auto& f : *frame) c.push_back(dot(f, a));
      coords.push_back(std::move(c));
    }
    return Peel<T>{k, idx, *frame, proportional(h.needles[k], normal),
                   Polyhedron<T>::from_rows(coords, Vec<T>(coords.size(), T(-1)))};
  }
  return std::nullopt;
}

/// Needle indices refer to the merged, canonical needles of P's rows.
template <Scalar T>
std::optional<Peel<T>> peel_hyperplane(const Polyhedron<T>& p) {
  std::vector<Vec<T>> rows;
  for (std::size_t i = 0; i < p.facets(); ++i) rows.push_back(p.normals().row_vec(i));
  return peel_hyperplane(Hedgehog<T>::from_needles(p.dim(), rows));
}

/**
 * Facets j meeting facet k in a ridge that lies on no third facet: the
 * face {a_k·x = b_k, a_j·x = b_j} keeps positive slack on every other row.
 */
template <Scalar T>
std::vector<std::size_t> facet_ridges(const Polyhedron<T>& p, std::size_t k) {
  const std::size_t n = p.dim(), m = p.facets();
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == k || proportional(p.normal(j), p.normal(k))) continue;
    // Variables: x (free), s (free), slacks (m - 2, >= 0), r (>= 0); s + r = 1.
    const std::size_t s = n, r = n + 1 + (m - 2);
    LpProblem<T> lp;
    lp.objective.assign(r + 1, T(0));
    lp.objective[s] = T(1);
    lp.eq_lhs = Mat<T>(m + 1, r + 1);
    lp.eq_rhs.assign(m + 1, T(0));
    std::size_t slack = n + 1;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t c = 0; c < n; ++c) lp.eq_lhs(i, c) = p.normal(i)[c];
      lp.eq_rhs[i] = p.offset(i);
      if (i != j && i != k) {
        lp.eq_lhs(i, s) = T(-1);
        lp.eq_lhs(i, slack++) = T(-1);
      }
    }
    lp.eq_lhs(m, s) = T(1);
    lp.eq_lhs(m, r) = T(1);
    lp.eq_rhs[m] = T(1);
    lp.lower_bounds.assign(n + 1, std::nullopt);
    lp.lower_bounds.resize(r + 1, T(0));
    const auto res = solve(lp);
    if (const auto* opt = std::get_if<LpOptimal<T>>(&res); opt && is_positive(opt->value)) out.push_back(j);
  }
  return out;
}

/**
 * Orthantness of facet k as a polyhedron in its own hyperplane: the other
 * normals projected onto the hyperplane, solved against its projector.
 */
template <Scalar T>
PositivityOutcome<T> facet_positivity(const Polyhedron<T>& p, std::size_t k, const std::vector<std::size_t>& ridges) {
  const Vec<T> a = p.normals().row_vec(k);
  const Mat<T> proj = detail::complement_projector(a);
  std::vector<Vec<T>> projected;
  for (auto j : ridges) projected.push_back(multiply(proj, p.normals().row_vec(j)));
  return decide_positive(detail::subspace_system(projected, proj));
}

}  // namespace orthant
