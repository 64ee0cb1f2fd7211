#pragma once

/**
 * Scalar backends and dense linear algebra.
 *
 * Two backends share one generic interface through scalar_traits:
 *
 * - Rational: arbitrary-precision exact rationals (GMP). Every verdict
 *   computed on this backend is certified.
 * - Real: a double carrying the tolerance under which its sign is read.
 *   |x| <= tolerance counts as zero.
 *
 * All algorithms in the library are templates over a type satisfying the
 * Scalar concept.
 */

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "orthant/errors.hpp"

namespace orthant {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr double kDefaultTolerance = 1e-9;

/**
 * Float backend value. The tolerance travels with the value; binary
 * operations keep the larger of the two. A tolerance of 0 means "not set"
 * and resolves to kDefaultTolerance when a sign is read.
 */
class Real {
 public:
  Real() = default;
  Real(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Real(int value) : value_(value) {}     // NOLINT(google-explicit-constructor)
  Real(double value, double tolerance) : value_(value), tolerance_(tolerance) {}

  [[nodiscard]] double value() const noexcept { return value_; }
  [[nodiscard]] double tolerance() const noexcept {
    return tolerance_ > 0 ? tolerance_ : kDefaultTolerance;
  }
  [[nodiscard]] double raw_tolerance() const noexcept { return tolerance_; }

  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend Real operator+(const Real& a, const Real& b) { return {a.value_ + b.value_, join(a, b)}; }
  friend Real operator-(const Real& a, const Real& b) { return {a.value_ - b.value_, join(a, b)}; }
  friend Real operator*(const Real& a, const Real& b) { return {a.value_ * b.value_, join(a, b)}; }
  friend Real operator/(const Real& a, const Real& b) { return {a.value_ / b.value_, join(a, b)}; }
  friend Real operator-(const Real& a) { return {-a.value_, a.tolerance_}; }

  // Ordering compares raw values; sign decisions go through scalar_traits.
  friend bool operator<(const Real& a, const Real& b) { return a.value_ < b.value_; }
  friend bool operator>(const Real& a, const Real& b) { return a.value_ > b.value_; }
  friend bool operator<=(const Real& a, const Real& b) { return a.value_ <= b.value_; }
  friend bool operator>=(const Real& a, const Real& b) { return a.value_ >= b.value_; }
  friend bool operator==(const Real& a, const Real& b) { return a.value_ == b.value_; }

 private:
  static double join(const Real& a, const Real& b) { return std::max(a.tolerance_, b.tolerance_); }

  double value_ = 0.0;
  double tolerance_ = 0.0;
};

template <class T>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "exact";

  static int sign(const Rational& x) { return x.sign(); }
  static Rational abs(const Rational& x) { return x.sign() < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }

  static std::optional<Rational> sqrt(const Rational& x) {
    if (x.sign() < 0) return std::nullopt;
    const Integer num = boost::multiprecision::numerator(x);
    const Integer den = boost::multiprecision::denominator(x);
    Integer rn = boost::multiprecision::sqrt(num);
    Integer rd = boost::multiprecision::sqrt(den);
    if (rn * rn != num || rd * rd != den) return std::nullopt;
    return Rational(rn, rd);
  }

  static std::string format(const Rational& x) {
    const Integer den = boost::multiprecision::denominator(x);
    if (den == 1) return boost::multiprecision::numerator(x).str();
    return boost::multiprecision::numerator(x).str() + "/" + den.str();
  }

  static Rational parse(std::string_view text, double /*tolerance*/ = 0.0);
};

template <>
struct scalar_traits<Real> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "float";

  static int sign(const Real& x) {
    if (std::abs(x.value()) <= x.tolerance()) return 0;
    return x.value() > 0 ? 1 : -1;
  }
  static Real abs(const Real& x) { return {std::abs(x.value()), x.raw_tolerance()}; }
  static double to_double(const Real& x) { return x.value(); }
  static std::optional<Real> sqrt(const Real& x) {
    if (sign(x) < 0) return std::nullopt;
    return Real(std::sqrt(std::max(0.0, x.value())), x.raw_tolerance());
  }

  static std::string format(const Real& x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x.value());
    return buf;
  }

  static Real parse(std::string_view text, double tolerance = 0.0);
};

template <class T>
concept Scalar = requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  { scalar_traits<T>::sign(a) } -> std::convertible_to<int>;
  { scalar_traits<T>::format(a) } -> std::convertible_to<std::string>;
  T(0);
  T(1);
};

template <Scalar T>
int sign(const T& x) {
  return scalar_traits<T>::sign(x);
}
template <Scalar T>
bool is_zero(const T& x) {
  return sign(x) == 0;
}
template <Scalar T>
bool is_positive(const T& x) {
  return sign(x) > 0;
}
template <Scalar T>
bool is_negative(const T& x) {
  return sign(x) < 0;
}
/// Equality under the backend's sign rule.
template <Scalar T>
bool same(const T& a, const T& b) {
  return is_zero(T(a - b));
}
template <Scalar T>
T abs_value(const T& x) {
  return scalar_traits<T>::abs(x);
}
template <Scalar T>
double to_double(const T& x) {
  return scalar_traits<T>::to_double(x);
}
template <Scalar T>
std::string format(const T& x) {
  return scalar_traits<T>::format(x);
}
template <Scalar T>
T parse_scalar(std::string_view text, double tolerance = 0.0) {
  return scalar_traits<T>::parse(text, tolerance);
}
template <Scalar T>
T fraction(long p, long q) {
  return T(static_cast<int>(p)) / T(static_cast<int>(q));
}
template <Scalar T>
constexpr bool is_exact_v = scalar_traits<T>::exact;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline Integer parse_integer(std::string_view s, bool allow_sign) {
  std::string_view digits = s;
  bool negative = false;
  if (allow_sign && !digits.empty() && (digits.front() == '+' || digits.front() == '-')) {
    negative = digits.front() == '-';
    digits.remove_prefix(1);
  }
  if (!all_digits(digits)) throw ParseError("malformed integer literal '" + std::string(s) + "'");
  // A leading 0 would select octal in the string constructor.
  while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
  Integer v{std::string(digits)};
  return negative ? Integer(-v) : v;
}

// [sign] digits [. digits] [(e|E) [sign] digits], converted without rounding.
inline Rational parse_decimal(std::string_view s) {
  std::string_view rest = s;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  std::string_view exponent_part;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    exponent_part = rest.substr(e + 1);
    rest = rest.substr(0, e);
  }
  std::string_view int_part = rest;
  std::string_view frac_part;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    int_part = rest.substr(0, dot);
    frac_part = rest.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw ParseError("malformed number '" + std::string(s) + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("malformed number '" + std::string(s) + "'");
  long exponent = 0;
  if (!exponent_part.empty() || s.find_first_of("eE") != std::string_view::npos) {
    Integer e = parse_integer(exponent_part, true);
    if (e > 4096 || e < -4096) throw ParseError("exponent out of range in '" + std::string(s) + "'");
    exponent = e.convert_to<long>();
  }
  const Integer mantissa = parse_integer(std::string(int_part) + std::string(frac_part), false);
  exponent -= static_cast<long>(frac_part.size());
  Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(std::labs(exponent)));
  Rational value = exponent >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
  return negative ? Rational(-value) : value;
}

}  // namespace detail

inline Rational scalar_traits<Rational>::parse(std::string_view text, double) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty scalar literal");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = detail::parse_integer(s.substr(0, slash), true);
    Integer den = detail::parse_integer(s.substr(slash + 1), false);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return detail::parse_decimal(s);
  return Rational(detail::parse_integer(s, true));
}

inline Real scalar_traits<Real>::parse(std::string_view text, double tolerance) {
  const std::string_view s = detail::trim(text);
  if (s.empty()) throw ParseError("empty scalar literal");
  if (s.find('/') != std::string_view::npos) {
    const Rational q = scalar_traits<Rational>::parse(s);
    return {q.convert_to<double>(), tolerance};
  }
  const std::string buf(s);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw ParseError("malformed float literal '" + buf + "'");
  return {v, tolerance};
}

template <Scalar T>
using Vec = std::vector<T>;

/** Dense row-major matrix. */
template <Scalar T>
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Mat from_rows(const std::vector<Vec<T>>& rows, std::size_t cols_if_empty = 0) {
    const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
    Mat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw ShapeMismatch("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  [[nodiscard]] std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  [[nodiscard]] Vec<T> row_vec(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  [[nodiscard]] Vec<T> column(std::size_t c) const {
    Vec<T> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
  }

  [[nodiscard]] Mat transpose() const {
    Mat t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  [[nodiscard]] Mat select_rows(std::span<const std::size_t> idx) const {
    Mat m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) std::copy(row(idx[i]).begin(), row(idx[i]).end(), m.row(i).begin());
    return m;
  }

  [[nodiscard]] Mat select_columns(std::span<const std::size_t> idx) const {
    Mat m(rows_, idx.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < idx.size(); ++j) m(r, j) = (*this)(r, idx[j]);
    return m;
  }

  /// Appends `extra` as additional columns.
  [[nodiscard]] Mat augment(const Vec<T>& extra) const {
    if (extra.size() != rows_) throw ShapeMismatch("augmenting column has wrong length");
    Mat m(rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::copy(row(r).begin(), row(r).end(), m.row(r).begin());
      m(r, cols_) = extra[r];
    }
    return m;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw ShapeMismatch("matrix product shape mismatch");
    Mat out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (is_exact_v<T> && sign(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
T dot(std::span<const T> a, std::span<const T> b) {
  if (a.size() != b.size()) throw ShapeMismatch("dot product length mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
template <Scalar T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  return dot<T>(std::span<const T>(a), std::span<const T>(b));
}

template <Scalar T>
Vec<T> multiply(const Mat<T>& m, std::span<const T> x) {
  if (x.size() != m.cols()) throw ShapeMismatch("matrix-vector shape mismatch");
  Vec<T> out(m.rows(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r) out[r] = dot<T>(m.row(r), x);
  return out;
}
template <Scalar T>
Vec<T> multiply(const Mat<T>& m, const Vec<T>& x) {
  return multiply<T>(m, std::span<const T>(x));
}

/// yᵀ M as a row vector.
template <Scalar T>
Vec<T> left_multiply(const Vec<T>& y, const Mat<T>& m) {
  if (y.size() != m.rows()) throw ShapeMismatch("vector-matrix shape mismatch");
  Vec<T> out(m.cols(), T(0));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (is_zero(y[r])) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) out[c] += y[r] * m(r, c);
  }
  return out;
}

template <Scalar T>
bool is_zero_vector(std::span<const T> v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return is_zero(x); });
}
template <Scalar T>
bool is_zero_vector(const Vec<T>& v) {
  return is_zero_vector<T>(std::span<const T>(v));
}

namespace detail {

// Each row scaled by the lcm of its denominators; rank and determinant sign
// are unaffected, the determinant scales by the product of the factors.
inline std::vector<std::vector<Integer>> integer_rows(const Mat<Rational>& m, Rational* scale_product) {
  std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
  Rational product(1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Integer l(1);
    for (const auto& x : m.row(r)) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const Rational& x = m(r, c);
      out[r][c] = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
    }
    product *= Rational(l);
  }
  if (scale_product) *scale_product = product;
  return out;
}

struct BareissResult {
  std::size_t rank = 0;
  bool odd_swaps = false;
  Integer last_pivot{1};
};

// Fraction-free elimination in place. Every division is exact by Sylvester's
// identity, also when pivot-free columns are skipped.
inline BareissResult bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols) {
  BareissResult res;
  Integer prev(1);
  const std::size_t rows = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      std::swap(a[piv], a[r]);
      res.odd_swaps = !res.odd_swaps;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        a[i][j] = v / prev;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  res.rank = r;
  res.last_pivot = prev;
  return res;
}

}  // namespace detail

/**
 * Rank. Exact backend: fraction-free elimination over the integers after
 * clearing row denominators. Float backend: partial pivoting, pivots within
 * tolerance count as zero.
 */
template <Scalar T>
std::size_t rank(const Mat<T>& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  if constexpr (is_exact_v<T>) {
    auto rows = detail::integer_rows(m, nullptr);
    return detail::bareiss(rows, m.cols()).rank;
  } else {
    Mat<T> a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
      std::size_t best = r;
      for (std::size_t i = r + 1; i < a.rows(); ++i)
        if (std::abs(to_double(a(i, c))) > std::abs(to_double(a(best, c)))) best = i;
      if (is_zero(a(best, c))) continue;
      if (best != r)
        for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(best, j), a(r, j));
      for (std::size_t i = r + 1; i < a.rows(); ++i) {
        const T f = a(i, c) / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
      }
      ++r;
    }
    return r;
  }
}

/** Determinant of a square matrix (Bareiss on the exact backend). */
template <Scalar T>
T determinant(const Mat<T>& m) {
  if (m.rows() != m.cols()) throw ShapeMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if constexpr (is_exact_v<T>) {
    Rational scale;
    auto rows = detail::integer_rows(m, &scale);
    const auto res = detail::bareiss(rows, n);
    if (res.rank < n) return T(0);
    Rational det(res.last_pivot);
    if (res.odd_swaps) det = -det;
    return det / scale;
  } else {
    Mat<T> a = m;
    T det(1);
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t best = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (std::abs(to_double(a(i, c))) > std::abs(to_double(a(best, c)))) best = i;
      if (a(best, c).value() == 0.0) return T(0);
      if (best != c) {
        for (std::size_t j = 0; j < n; ++j) std::swap(a(best, j), a(c, j));
        det = -det;
      }
      det *= a(c, c);
      for (std::size_t i = c + 1; i < n; ++i) {
        const T f = a(i, c) / a(c, c);
        for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
      }
    }
    return det;
  }
}

template <Scalar T>
struct Echelon {
  Mat<T> reduced;
  std::vector<std::size_t> pivot_cols;
};

/**
 * Reduced row echelon form. Exact backend pivots on the first row with a
 * nonzero entry in the leftmost unresolved column; the float backend takes
 * the largest entry in that column and snaps sub-tolerance residue to zero.
 */
template <Scalar T>
Echelon<T> reduced_echelon(Mat<T> a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t piv = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i) {
      if (is_zero(a(i, c))) continue;
      if constexpr (is_exact_v<T>) {
        piv = i;
        break;
      } else {
        if (piv == a.rows() || std::abs(to_double(a(i, c))) > std::abs(to_double(a(piv, c)))) piv = i;
      }
    }
    if (piv == a.rows()) {
      if constexpr (!is_exact_v<T>)
        for (std::size_t i = r; i < a.rows(); ++i) a(i, c) = T(0);
      continue;
    }
    if (piv != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(r, j));
    const T inv = T(1) / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    a(r, c) = T(1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || is_zero(a(i, c))) {
        if (i != r) a(i, c) = T(0);
        continue;
      }
      const T f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
      a(i, c) = T(0);
    }
    pivots.push_back(c);
    ++r;
  }
  if constexpr (!is_exact_v<T>)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (is_zero(a(i, j))) a(i, j) = T(0);
  return {std::move(a), std::move(pivots)};
}

/**
 * One solution of M x = rhs, or nothing when the system is inconsistent.
 * Free variables are set to zero.
 */
template <Scalar T>
std::optional<Vec<T>> solve_linear(const Mat<T>& m, const Vec<T>& rhs) {
  if (rhs.size() != m.rows()) throw ShapeMismatch("right-hand side length differs from row count");
  const auto ech = reduced_echelon(m.augment(rhs));
  if (!ech.pivot_cols.empty() && ech.pivot_cols.back() == m.cols()) return std::nullopt;
  Vec<T> x(m.cols(), T(0));
  for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) x[ech.pivot_cols[i]] = ech.reduced(i, m.cols());
  return x;
}

/**
 * Kernel basis read off the reduced echelon form: one vector per free
 * column, in increasing column order.
 */
template <Scalar T>
std::vector<Vec<T>> kernel_basis(const Mat<T>& m) {
  const auto ech = reduced_echelon(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<Vec<T>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec<T> v(m.cols(), T(0));
    v[f] = T(1);
    for (std::size_t i = 0; i < ech.pivot_cols.size(); ++i) v[ech.pivot_cols[i]] = -ech.reduced(i, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

/**
 * Canonical positive multiple of v. Exact: an integer vector with content 1.
 * Float: largest magnitude entry scaled to 1.
 */
template <Scalar T>
Vec<T> primitive(const Vec<T>& v) {
  if constexpr (is_exact_v<T>) {
    Integer l(1);
    for (const auto& x : v) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    std::vector<Integer> ints;
    ints.reserve(v.size());
    Integer g(0);
    for (const auto& x : v) {
      ints.push_back(boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x)));
      g = boost::multiprecision::gcd(g, ints.back());
    }
    if (g == 0) return v;
    Vec<T> out;
    out.reserve(v.size());
    for (const auto& k : ints) out.emplace_back(k / g);
    return out;
  } else {
    double mx = 0;
    for (const auto& x : v) mx = std::max(mx, std::abs(to_double(x)));
    if (mx == 0) return v;
    Vec<T> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x / T(mx));
    return out;
  }
}

/// True when u and w are parallel (all 2x2 minors vanish).
template <Scalar T>
bool proportional(std::span<const T> u, std::span<const T> w) {
  if (u.size() != w.size()) return false;
  if constexpr (is_exact_v<T>) {
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (!is_zero(T(u[i] * w[j] - u[j] * w[i]))) return false;
    return true;
  } else {
    // Compare unit directions; raw minors scale with the vector lengths.
    double nu = 0, nw = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      nu += to_double(u[i]) * to_double(u[i]);
      nw += to_double(w[i]) * to_double(w[i]);
    }
    nu = std::sqrt(nu);
    nw = std::sqrt(nw);
    if (nu == 0 || nw == 0) return nu == nw;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j)
        if (!is_zero(T(u[i] * w[j] - u[j] * w[i]) / T(nu * nw))) return false;
    return true;
  }
}

template <Scalar T>
bool proportional(const Vec<T>& u, const Vec<T>& w) {
  return proportional<T>(std::span<const T>(u), std::span<const T>(w));
}

/**
 * Gram-Schmidt orthonormalization of linearly independent vectors. On the
 * exact backend this succeeds only when every norm met along the way is a
 * rational square; otherwise nothing is returned.
 */
template <Scalar T>
std::optional<std::vector<Vec<T>>> orthonormalize(const std::vector<Vec<T>>& vectors) {
  std::vector<Vec<T>> out;
  for (const auto& v : vectors) {
    Vec<T> w = v;
    for (const auto& u : out) {
      const T c = dot(w, u);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * u[k];
    }
    const auto norm = scalar_traits<T>::sqrt(dot(w, w));
    if (!norm || is_zero(*norm)) return std::nullopt;
    for (auto& x : w) x /= *norm;
    out.push_back(std::move(w));
  }
  return out;
}

inline std::size_t choose2(std::size_t n) { return n * (n - 1) / 2; }

}  // namespace orthant
