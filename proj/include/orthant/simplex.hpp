#pragma once

/**
 * Two-phase primal simplex over a Scalar backend with Bland's rule.
 *
 * Problem form: maximize objective·x subject to eq_lhs x = eq_rhs, with
 * x_j >= lower_bounds[j] when a bound is given and x_j free otherwise.
 * Every outcome carries the data needed to check it independently:
 * an optimal point with its dual, a Farkas ray, or an improving ray.
 */

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "orthant/numeric.hpp"

namespace orthant {

template <Scalar T>
struct LpProblem {
  Vec<T> objective;
  Mat<T> eq_lhs;
  Vec<T> eq_rhs;
  std::vector<std::optional<T>> lower_bounds;

  [[nodiscard]] std::size_t variables() const { return objective.size(); }
  [[nodiscard]] std::size_t constraints() const { return eq_rhs.size(); }
};

template <Scalar T>
struct LpOptimal {
  Vec<T> x;
  T value;
  /// Multipliers of the equality rows; dual feasible and value = dual·rhs.
  Vec<T> dual;
};

/**
 * Farkas ray y: yᵀA_j >= 0 for bounded variables, yᵀA_j = 0 for free ones,
 * and yᵀ(b - Σ_j A_j l_j) < 0.
 */
template <Scalar T>
struct LpInfeasible {
  Vec<T> ray;
};

/// Feasible point plus a direction d with A d = 0, d_j >= 0 on bounded
/// variables, and objective·d > 0.
template <Scalar T>
struct LpUnbounded {
  Vec<T> point;
  Vec<T> direction;
};

template <Scalar T>
using LpResult = std::variant<LpOptimal<T>, LpInfeasible<T>, LpUnbounded<T>>;

namespace detail {

template <Scalar T>
class Tableau {
 public:
  // Standard form columns: for each original variable one column (shifted by
  // its bound) or two (x+ and x-) when free, then one artificial per row.
  explicit Tableau(const LpProblem<T>& p) : p_(p) {
    const std::size_t n = p.variables();
    rows_ = p.constraints();
    for (std::size_t j = 0; j < n; ++j) {
      plus_col_.push_back(cols_++);
      if (!p.lower_bounds[j]) {
        minus_col_.push_back(cols_++);
      } else {
        minus_col_.push_back(npos);
      }
    }
    structural_ = cols_;
    cols_ += rows_;
    width_ = cols_ + 1;
    t_.assign(rows_ * width_, T(0));
    row_sign_.assign(rows_, 1);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      T rhs = p.eq_rhs[i];
      for (std::size_t j = 0; j < n; ++j)
        if (p.lower_bounds[j]) rhs -= p.eq_lhs(i, j) * *p.lower_bounds[j];
      const int s = is_negative(rhs) ? -1 : 1;
      row_sign_[i] = s;
      const T fs(s);
      for (std::size_t j = 0; j < n; ++j) {
        at(i, plus_col_[j]) = fs * p.eq_lhs(i, j);
        if (minus_col_[j] != npos) at(i, minus_col_[j]) = -(fs * p.eq_lhs(i, j));
      }
      at(i, structural_ + i) = T(1);
      at(i, cols_) = fs * rhs;
      basis_[i] = structural_ + i;
    }
  }

  LpResult<T> run() {
    // Phase 1: maximize -Σ artificials.
    cost_.assign(cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) cost_[structural_ + i] = T(-1);
    iterate(/*allow_artificial=*/true);  // bounded above by zero
    if (is_negative(objective_value())) return LpInfeasible<T>{farkas_ray()};
    drive_out_artificials();

    cost_.assign(cols_, T(0));
    for (std::size_t j = 0; j < p_.variables(); ++j) {
      cost_[plus_col_[j]] = p_.objective[j];
      if (minus_col_[j] != npos) cost_[minus_col_[j]] = -p_.objective[j];
    }
    if (auto entering = iterate(/*allow_artificial=*/false)) return LpUnbounded<T>{point(), ray(*entering)};
    LpOptimal<T> opt;
    opt.x = point();
    opt.value = dot(p_.objective, opt.x);
    opt.dual = duals();
    return opt;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  T& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

  T objective_value() const {
    T v(0);
    for (std::size_t i = 0; i < rows_; ++i) v += cost_[basis_[i]] * at(i, cols_);
    return v;
  }

  // y_i = Σ_k c_{B_k} (B⁻¹)_{k i}; B⁻¹ sits in the artificial columns.
  Vec<T> simplex_multipliers() const {
    Vec<T> y(rows_, T(0));
    for (std::size_t k = 0; k < rows_; ++k) {
      const T& cb = cost_[basis_[k]];
      if (is_zero(cb)) continue;
      for (std::size_t i = 0; i < rows_; ++i) y[i] += cb * at(k, structural_ + i);
    }
    return y;
  }

  // Returns the entering column when the objective is unbounded.
  std::optional<std::size_t> iterate(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? cols_ : structural_;
    std::vector<bool> in_basis(cols_, false);
    for (;;) {
      std::fill(in_basis.begin(), in_basis.end(), false);
      for (auto b : basis_) in_basis[b] = true;
      // Reduced costs from the tableau: d_j = c_j - Σ_k c_{B_k} t_{kj}.
      std::size_t entering = npos;
      for (std::size_t j = 0; j < limit && entering == npos; ++j) {
        if (in_basis[j]) continue;
        T d = cost_[j];
        for (std::size_t k = 0; k < rows_; ++k)
          if (!is_zero(cost_[basis_[k]]) && !is_zero(at(k, j))) d -= cost_[basis_[k]] * at(k, j);
        if (is_positive(d)) entering = j;
      }
      if (entering == npos) return std::nullopt;
      std::size_t leave = npos;
      T best_ratio(0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!is_positive(at(i, entering))) continue;
        const T ratio = at(i, cols_) / at(i, entering);
        if (leave == npos) {
          leave = i;
          best_ratio = ratio;
          continue;
        }
        const int cmp = sign(T(ratio - best_ratio));
        if (cmp < 0 || (cmp == 0 && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == npos) return entering;
      pivot(leave, entering);
      if (++pivots_ > kPivotLimit) throw Error("simplex pivot limit exceeded");
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const T inv = T(1) / at(r, c);
    for (std::size_t j = 0; j < width_; ++j)
      if (!is_zero(at(r, j))) at(r, j) *= inv;
    at(r, c) = T(1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      const T f = at(i, c);
      if (is_zero(f)) {
        at(i, c) = T(0);
        continue;
      }
      for (std::size_t j = 0; j < width_; ++j)
        if (!is_zero(at(r, j))) at(i, j) -= f * at(r, j);
      at(i, c) = T(0);
      if constexpr (!is_exact_v<T>)
        for (std::size_t j = 0; j < width_; ++j)
          if (is_zero(at(i, j))) at(i, j) = T(0);
    }
    basis_[r] = c;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structural_) continue;
      for (std::size_t j = 0; j < structural_; ++j) {
        if (is_zero(at(i, j))) continue;
        bool basic = false;
        for (auto b : basis_) basic = basic || b == j;
        if (basic) continue;
        pivot(i, j);
        break;
      }
    }
  }

  Vec<T> standard_point() const {
    Vec<T> z(cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) z[basis_[i]] = at(i, cols_);
    return z;
  }

  Vec<T> point() const {
    const Vec<T> z = standard_point();
    Vec<T> x(p_.variables(), T(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (p_.lower_bounds[j]) {
        x[j] = *p_.lower_bounds[j] + z[plus_col_[j]];
      } else {
        x[j] = z[plus_col_[j]] - z[minus_col_[j]];
      }
    }
    return x;
  }

  Vec<T> ray(std::size_t entering) const {
    Vec<T> d(cols_, T(0));
    d[entering] = T(1);
    for (std::size_t i = 0; i < rows_; ++i) d[basis_[i]] = -at(i, entering);
    Vec<T> x(p_.variables(), T(0));
    for (std::size_t j = 0; j < x.size(); ++j)
      x[j] = p_.lower_bounds[j] ? d[plus_col_[j]] : T(d[plus_col_[j]] - d[minus_col_[j]]);
    return x;
  }

  Vec<T> duals() const {
    Vec<T> y = simplex_multipliers();
    for (std::size_t i = 0; i < rows_; ++i)
      if (row_sign_[i] < 0) y[i] = -y[i];
    return y;
  }

  Vec<T> farkas_ray() const {
    // Phase-1 multipliers satisfy yᵀA' >= 0 and yᵀb' < 0 for the flipped
    // rows; undo the flips.
    return duals();
  }

  static constexpr std::size_t kPivotLimit = 200000;

  const LpProblem<T>& p_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t structural_ = 0;
  std::size_t width_ = 0;
  std::vector<std::size_t> plus_col_;
  std::vector<std::size_t> minus_col_;
  std::vector<int> row_sign_;
  std::vector<T> t_;
  std::vector<T> cost_;
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

}  // namespace detail

template <Scalar T>
void check_shape(const LpProblem<T>& p) {
  if (p.eq_lhs.cols() != p.variables() || p.eq_lhs.rows() != p.constraints() ||
      p.lower_bounds.size() != p.variables())
    throw ShapeMismatch("inconsistent LP shapes");
}

template <Scalar T>
LpResult<T> solve(const LpProblem<T>& p) {
  check_shape(p);
  return detail::Tableau<T>(p).run();
}

/// Feasibility of x with respect to the equalities and bounds.
template <Scalar T>
bool is_feasible(const LpProblem<T>& p, const Vec<T>& x) {
  if (x.size() != p.variables()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (p.lower_bounds[j] && is_negative(T(x[j] - *p.lower_bounds[j]))) return false;
  const Vec<T> ax = multiply(p.eq_lhs, x);
  for (std::size_t i = 0; i < ax.size(); ++i)
    if (!same(ax[i], p.eq_rhs[i])) return false;
  return true;
}

/// Primal feasibility, dual feasibility and equal objective values.
template <Scalar T>
bool verify_optimal(const LpProblem<T>& p, const LpOptimal<T>& o) {
  if (!is_feasible(p, o.x) || o.dual.size() != p.constraints()) return false;
  if (!same(o.value, dot(p.objective, o.x))) return false;
  const Vec<T> yA = left_multiply(o.dual, p.eq_lhs);
  T dual_value = dot(o.dual, p.eq_rhs);
  for (std::size_t j = 0; j < p.variables(); ++j) {
    const T reduced = p.objective[j] - yA[j];
    if (p.lower_bounds[j]) {
      if (is_positive(reduced)) return false;
      dual_value += reduced * *p.lower_bounds[j];
    } else if (!is_zero(reduced)) {
      return false;
    }
  }
  return same(dual_value, o.value);
}

template <Scalar T>
bool verify_infeasible(const LpProblem<T>& p, const LpInfeasible<T>& inf) {
  if (inf.ray.size() != p.constraints()) return false;
  const Vec<T> yA = left_multiply(inf.ray, p.eq_lhs);
  T rhs = dot(inf.ray, p.eq_rhs);
  for (std::size_t j = 0; j < p.variables(); ++j) {
    if (p.lower_bounds[j]) {
      if (is_negative(yA[j])) return false;
      rhs -= yA[j] * *p.lower_bounds[j];
    } else if (!is_zero(yA[j])) {
      return false;
    }
  }
  return is_negative(rhs);
}

template <Scalar T>
bool verify_unbounded(const LpProblem<T>& p, const LpUnbounded<T>& u) {
  if (!is_feasible(p, u.point) || u.direction.size() != p.variables()) return false;
  if (!is_zero_vector<T>(multiply(p.eq_lhs, u.direction))) return false;
  for (std::size_t j = 0; j < p.variables(); ++j)
    if (p.lower_bounds[j] && is_negative(u.direction[j])) return false;
  return is_positive(dot(p.objective, u.direction));
}

template <Scalar T>
bool verify(const LpProblem<T>& p, const LpResult<T>& r) {
  return std::visit(
      [&](const auto& o) {
        using O = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<O, LpOptimal<T>>) return verify_optimal(p, o);
        else if constexpr (std::is_same_v<O, LpInfeasible<T>>) return verify_infeasible(p, o);
        else return verify_unbounded(p, o);
      },
      r);
}

}  // namespace orthant
