#pragma once

/**
 * Strict positivity of Q t = c, with a checkable answer either way.
 *
 * Positive: a witness t > 0 with Q t = c.
 * NotPositive: y with yᵀQ >= 0, yᵀc <= 0 and (yᵀQ, yᵀc) != 0. For any
 * t > 0 with Q t = c we would get 0 >= yᵀc = (yᵀQ) t, forcing yᵀQ = 0
 * and then yᵀc = 0, a contradiction.
 * Inconsistent: Q t = c has no solution at all; y has yᵀQ = 0, yᵀc < 0.
 */

#include <optional>
#include <string_view>

#include "orthant/bang.hpp"
#include "orthant/numeric.hpp"
#include "orthant/simplex.hpp"

namespace orthant {

enum class Verdict { Positive, NotPositive, Inconsistent };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Positive:
      return "Positive";
    case Verdict::NotPositive:
      return "NotPositive";
    case Verdict::Inconsistent:
      return "Inconsistent";
  }
  return "?";
}

template <Scalar T>
struct PositivityOutcome {
  Verdict verdict = Verdict::NotPositive;
  std::optional<Vec<T>> witness;
  std::optional<Vec<T>> certificate;
  /// max over solutions of min_i t_i, capped at 1; absent when inconsistent.
  std::optional<T> margin;
  /// Float backend only: the margin fell within tolerance of zero.
  bool numeric_marginal = false;

  [[nodiscard]] bool positive() const noexcept { return verdict == Verdict::Positive; }
};

namespace detail {

// Max eps subject to Q(eps·1 + s) = c, s >= 0, eps + r = 1, r >= 0.
// Variables: s (m), eps (free), r.
template <Scalar T>
LpProblem<T> max_min_problem(const Mat<T>& q, const Vec<T>& c) {
  const std::size_t k = q.rows(), m = q.cols();
  LpProblem<T> lp;
  lp.objective.assign(m + 2, T(0));
  lp.objective[m] = T(1);
  lp.eq_lhs = Mat<T>(k + 1, m + 2);
  lp.eq_rhs = c;
  lp.eq_rhs.push_back(T(1));
  for (std::size_t r = 0; r < k; ++r) {
    T row_sum(0);
    for (std::size_t i = 0; i < m; ++i) {
      lp.eq_lhs(r, i) = q(r, i);
      row_sum += q(r, i);
    }
    lp.eq_lhs(r, m) = row_sum;
  }
  lp.eq_lhs(k, m) = T(1);
  lp.eq_lhs(k, m + 1) = T(1);
  lp.lower_bounds.assign(m + 2, T(0));
  lp.lower_bounds[m] = std::nullopt;
  return lp;
}

// y with yᵀ[Q | -c] >= 0 and Σ of those entries = 1; exists exactly when
// no positive solution does.
template <Scalar T>
std::optional<Vec<T>> alternative_certificate(const Mat<T>& q, const Vec<T>& c) {
  const std::size_t k = q.rows(), m = q.cols();
  // Variables: y (k, free), w (m + 1, >= 0). Rows: Mᵀy - w = 0; Σ w = 1.
  LpProblem<T> lp;
  lp.objective.assign(k + m + 1, T(0));
  lp.eq_lhs = Mat<T>(m + 2, k + m + 1);
  lp.eq_rhs.assign(m + 2, T(0));
  for (std::size_t i = 0; i <= m; ++i) {
    for (std::size_t r = 0; r < k; ++r) lp.eq_lhs(i, r) = i < m ? q(r, i) : T(-c[r]);
    lp.eq_lhs(i, k + i) = T(-1);
    lp.eq_lhs(m + 1, k + i) = T(1);
  }
  lp.eq_rhs[m + 1] = T(1);
  lp.lower_bounds.assign(k, std::nullopt);
  lp.lower_bounds.resize(k + m + 1, T(0));
  const auto res = solve(lp);
  if (!std::holds_alternative<LpOptimal<T>>(res)) return std::nullopt;
  const auto& x = std::get<LpOptimal<T>>(res).x;
  return primitive(Vec<T>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k)));
}

// y with yᵀQ = 0 and yᵀc = -1, when Q t = c is inconsistent.
template <Scalar T>
std::optional<Vec<T>> inconsistency_certificate(const Mat<T>& q, const Vec<T>& c) {
  Mat<T> sys(q.cols() + 1, q.rows());
  for (std::size_t r = 0; r < q.rows(); ++r) {
    for (std::size_t i = 0; i < q.cols(); ++i) sys(i, r) = q(r, i);
    sys(q.cols(), r) = c[r];
  }
  Vec<T> rhs(q.cols() + 1, T(0));
  rhs.back() = T(-1);
  auto y = solve_linear(sys, rhs);
  if (!y) return std::nullopt;
  return primitive(*y);
}

}  // namespace detail

/**
 * Decides whether Q t = c has a solution with every t_i > 0 by maximizing
 * the smallest coordinate. The witness is that max-min solution.
 */
template <Scalar T>
PositivityOutcome<T> decide_positive(const Mat<T>& q, const Vec<T>& c) {
  if (c.size() != q.rows()) throw ShapeMismatch("right-hand side length differs from equation count");
  PositivityOutcome<T> out;
  const std::size_t m = q.cols();
  const auto lp = detail::max_min_problem(q, c);
  const auto res = solve(lp);
  if (std::holds_alternative<LpInfeasible<T>>(res)) {
    out.verdict = Verdict::Inconsistent;
    out.certificate = detail::inconsistency_certificate(q, c);
    return out;
  }
  // The cap eps <= 1 keeps the problem bounded.
  const auto& opt = std::get<LpOptimal<T>>(res);
  const T eps = opt.x[m];
  out.margin = eps;
  if (is_positive(eps)) {
    out.verdict = Verdict::Positive;
    Vec<T> t(m);
    for (std::size_t i = 0; i < m; ++i) t[i] = eps + opt.x[i];
    out.witness = std::move(t);
    return out;
  }
  out.verdict = Verdict::NotPositive;
  out.numeric_marginal = !is_exact_v<T> && is_zero(eps);
  out.certificate = detail::alternative_certificate(q, c);
  return out;
}

template <Scalar T>
PositivityOutcome<T> decide_positive(const BangSystem<T>& s) {
  return decide_positive(s.q, s.c);
}

/// Re-checks an outcome from scratch against Q and c.
template <Scalar T>
bool verify_outcome(const Mat<T>& q, const Vec<T>& c, const PositivityOutcome<T>& out) {
  if (c.size() != q.rows()) return false;
  if (out.verdict == Verdict::Positive) {
    if (!out.witness || out.certificate || out.witness->size() != q.cols()) return false;
    for (const auto& t : *out.witness)
      if (!is_positive(t)) return false;
    const Vec<T> qt = multiply(q, *out.witness);
    for (std::size_t r = 0; r < qt.size(); ++r)
      if (!same(qt[r], c[r])) return false;
    return true;
  }
  if (!out.certificate || out.witness || out.certificate->size() != q.rows()) return false;
  const Vec<T>& y = *out.certificate;
  const Vec<T> yq = left_multiply(y, q);
  const T yc = dot(y, c);
  if (out.verdict == Verdict::Inconsistent) return is_zero_vector(yq) && is_negative(yc);
  for (const auto& v : yq)
    if (is_negative(v)) return false;
  if (is_positive(yc)) return false;
  return !(is_zero_vector(yq) && is_zero(yc));
}

template <Scalar T>
bool verify_outcome(const BangSystem<T>& s, const PositivityOutcome<T>& out) {
  return verify_outcome(s.q, s.c, out);
}

}  // namespace orthant
