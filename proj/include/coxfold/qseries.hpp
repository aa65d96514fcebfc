#ifndef COXFOLD_QSERIES_HPP
#define COXFOLD_QSERIES_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coxfold/errors.hpp"

namespace coxfold {

using Integer = boost::multiprecision::cpp_int;

/// Signed monomial ±a^i b^j q^k. Negative q exponents are allowed only as
/// substitution values (see substitute()).
struct Monomial {
  int sign = 1;
  int a_exp = 0;
  int b_exp = 0;
  int q_exp = 0;

  static Monomial constant(int sign = 1) { return {sign, 0, 0, 0}; }
  static Monomial q(int e = 1, int sign = 1) { return {sign, 0, 0, e}; }
  bool q_only() const { return a_exp == 0 && b_exp == 0; }

  friend Monomial operator*(Monomial x, Monomial y) {
    return {x.sign * y.sign, x.a_exp + y.a_exp, x.b_exp + y.b_exp, x.q_exp + y.q_exp};
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// ---------------------------------------------------------------------------
// Univariate series

/// Integer polynomial in q, either exact or known only up to degree order().
class QSeries {
 public:
  /// The zero polynomial.
  QSeries() = default;

  static QSeries exact(std::vector<Integer> coeffs) {
    QSeries s;
    s.coeffs_ = std::move(coeffs);
    s.trim();
    return s;
  }
  static QSeries truncated(std::vector<Integer> coeffs, std::size_t order) {
    QSeries s;
    s.coeffs_ = std::move(coeffs);
    s.order_ = order;
    s.coeffs_.resize(order + 1);
    return s;
  }
  static QSeries one() { return exact({Integer(1)}); }
  static QSeries monomial(Integer c, std::size_t degree) {
    std::vector<Integer> v(degree + 1);
    v[degree] = std::move(c);
    return exact(std::move(v));
  }
  /// 1 - c q^d, the shape of every denominator in the product formulas.
  static QSeries one_minus(std::size_t degree, int c = 1) {
    return one() - monomial(Integer(c), degree);
  }

  bool is_exact() const { return !order_.has_value(); }
  std::optional<std::size_t> order() const { return order_; }

  /// Stored coefficients. Exact values carry no trailing zeros; truncated ones
  /// have exactly order()+1 entries.
  const std::vector<Integer>& coeffs() const { return coeffs_; }

  Integer coeff(std::size_t d) const {
    if (order_ && d > *order_) throw InvalidParameters("coefficient beyond truncation order");
    return d < coeffs_.size() ? coeffs_[d] : Integer(0);
  }

  /// Degree of an exact polynomial (-1 for zero).
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }

  /// Same series known only up to q^L (never extends an existing order).
  QSeries truncate(std::size_t L) const {
    const std::size_t order = order_ ? std::min(*order_, L) : L;
    return truncated(std::vector<Integer>(coeffs_.begin(), coeffs_.begin() + std::min(coeffs_.size(), order + 1)),
                     order);
  }

  Integer evaluate(const Integer& x) const {
    if (!is_exact()) throw InvalidParameters("evaluating a truncated series");
    Integer acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Integer coefficient_sum() const {
    Integer s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  /// q -> c q^k for a sign c and k >= 1.
  QSeries scale_variable(int sign, std::size_t k) const {
    std::vector<Integer> v(coeffs_.empty() ? 0 : (coeffs_.size() - 1) * k + 1);
    for (std::size_t d = 0; d < coeffs_.size(); ++d) v[d * k] = (sign < 0 && d % 2 == 1) ? Integer(-coeffs_[d]) : coeffs_[d];
    if (order_) return truncated(std::move(v), (*order_ + 1) * k - 1);
    return exact(std::move(v));
  }

  QSeries operator-() const {
    QSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend QSeries operator+(const QSeries& x, const QSeries& y) {
    QSeries r;
    r.order_ = min_order(x.order_, y.order_);
    const std::size_t n = r.order_ ? *r.order_ + 1 : std::max(x.coeffs_.size(), y.coeffs_.size());
    r.coeffs_.assign(n, Integer(0));
    for (std::size_t d = 0; d < n; ++d) {
      if (d < x.coeffs_.size()) r.coeffs_[d] += x.coeffs_[d];
      if (d < y.coeffs_.size()) r.coeffs_[d] += y.coeffs_[d];
    }
    if (!r.order_) r.trim();
    return r;
  }
  friend QSeries operator-(const QSeries& x, const QSeries& y) { return x + (-y); }

  friend QSeries operator*(const QSeries& x, const QSeries& y) {
    QSeries r;
    r.order_ = min_order(x.order_, y.order_);
    if (x.coeffs_.empty() || y.coeffs_.empty()) {
      if (r.order_) r.coeffs_.assign(*r.order_ + 1, Integer(0));
      return r;
    }
    std::size_t n = x.coeffs_.size() + y.coeffs_.size() - 1;
    if (r.order_) n = *r.order_ + 1;
    r.coeffs_.assign(n, Integer(0));
    for (std::size_t i = 0; i < x.coeffs_.size() && i < n; ++i) {
      if (x.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.coeffs_.size() && i + j < n; ++j) r.coeffs_[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
    if (!r.order_) r.trim();
    return r;
  }
  QSeries& operator*=(const QSeries& y) { return *this = *this * y; }
  QSeries& operator+=(const QSeries& y) { return *this = *this + y; }

  /// Equality up to the smaller truncation order (exactly, when both exact).
  friend bool operator==(const QSeries& x, const QSeries& y) { return !first_mismatch(x, y).has_value(); }

  /// Lowest degree at which the two series provably differ.
  friend std::optional<std::size_t> first_mismatch(const QSeries& x, const QSeries& y) {
    const auto order = min_order(x.order_, y.order_);
    const std::size_t n = order ? *order + 1 : std::max(x.coeffs_.size(), y.coeffs_.size());
    for (std::size_t d = 0; d < n; ++d) {
      const Integer a = d < x.coeffs_.size() ? x.coeffs_[d] : Integer(0);
      const Integer b = d < y.coeffs_.size() ? y.coeffs_[d] : Integer(0);
      if (a != b) return d;
    }
    return std::nullopt;
  }

  /// "1 + q + 2q^3 + O(q^7)".
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t d = 0; d < coeffs_.size(); ++d) {
      const Integer& c = coeffs_[d];
      if (c.is_zero()) continue;
      Integer mag = c < 0 ? Integer(-c) : c;
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      if (d == 0 || mag != 1) os << mag;
      if (d >= 1) os << "q";
      if (d >= 2) os << "^" << d;
    }
    if (first) os << "0";
    if (order_) os << " + O(q^" << (*order_ + 1) << ")";
    return os.str();
  }

 private:
  static std::optional<std::size_t> min_order(std::optional<std::size_t> a, std::optional<std::size_t> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
  }
  void trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
  std::optional<std::size_t> order_;
};

inline std::ostream& operator<<(std::ostream& os, const QSeries& s) { return os << s.to_string(); }

/// a / d for a unit d (constant term +-1), truncated at the smaller order. Exact
/// division is attempted when both operands are exact polynomials.
inline QSeries divide_by_unit(const QSeries& a, const QSeries& d) {
  const auto& dc = d.coeffs();
  if (dc.empty() || (dc[0] != 1 && dc[0] != -1))
    throw NonUnitDivisor("divisor " + d.to_string() + " has no invertible constant term");
  const Integer u = dc[0];  // its own inverse
  std::size_t order;
  if (a.is_exact() && d.is_exact()) {
    // Exact polynomial long division; the quotient must come out exact.
    if (a.coeffs().empty()) return a;
    std::vector<Integer> rem = a.coeffs();
    if (rem.size() < dc.size()) throw NonUnitDivisor("exact division leaves a remainder");
    std::vector<Integer> quot(rem.size() - dc.size() + 1);
    for (std::size_t k = 0; k < quot.size(); ++k) {
      quot[k] = rem[k] * u;
      for (std::size_t j = 0; j < dc.size(); ++j) rem[k + j] -= quot[k] * dc[j];
    }
    for (const auto& r : rem)
      if (!r.is_zero()) throw NonUnitDivisor("exact division leaves a remainder");
    return QSeries::exact(std::move(quot));
  }
  if (a.order() && d.order())
    order = std::min(*a.order(), *d.order());
  else
    order = a.order() ? *a.order() : *d.order();
  std::vector<Integer> q(order + 1);
  for (std::size_t k = 0; k <= order; ++k) {
    Integer acc = k < a.coeffs().size() ? a.coeffs()[k] : Integer(0);
    for (std::size_t j = 1; j <= k && j < dc.size(); ++j) acc -= dc[j] * q[k - j];
    q[k] = acc * u;
  }
  return QSeries::truncated(std::move(q), order);
}

/// a / d for a unit d, as a series truncated at L.
inline QSeries divide_by_unit(const QSeries& a, const QSeries& d, std::size_t L) {
  return divide_by_unit(a.truncate(L), d.truncate(L));
}

namespace detail {

inline void check_q_base(const Monomial& base) {
  if (!base.q_only() || (base.sign != 1 && base.sign != -1) || base.q_exp < 1)
    throw InvalidBase("q-analogue base must be +-q^j with j >= 1");
}

}  // namespace detail

/// [k]_base = 1 + base + ... + base^(k-1), exact.
inline QSeries q_integer(int k, Monomial base = Monomial::q()) {
  detail::check_q_base(base);
  if (k < 1) throw InvalidParameters("q-integer needs k >= 1");
  std::vector<Integer> v(static_cast<std::size_t>(base.q_exp) * (k - 1) + 1);
  for (int i = 0; i < k; ++i)
    v[static_cast<std::size_t>(base.q_exp) * i] = (base.sign < 0 && i % 2 == 1) ? -1 : 1;
  return QSeries::exact(std::move(v));
}

/// [1]_base [2]_base ... [n]_base, exact; truncated at L when given.
inline QSeries q_factorial(int n, Monomial base = Monomial::q(), std::optional<std::size_t> L = std::nullopt) {
  QSeries r = QSeries::one();
  if (L) r = r.truncate(*L);
  for (int k = 1; k <= n; ++k) r *= q_integer(k, base);
  return r;
}

/// (x; step)_n = prod_{k<n} (1 - step^k x) for q-only x and step with
/// non-negative exponents; exact unless L is given.
inline QSeries q_pochhammer(Monomial x, Monomial step, int n, std::optional<std::size_t> L = std::nullopt) {
  if (!x.q_only() || !step.q_only() || x.q_exp < 0 || step.q_exp < 0)
    throw InvalidBase("univariate Pochhammer needs q-only arguments with non-negative exponents");
  QSeries r = QSeries::one();
  if (L) r = r.truncate(*L);
  Monomial t = x;
  for (int k = 0; k < n; ++k) {
    r *= QSeries::one() - QSeries::monomial(Integer(t.sign), static_cast<std::size_t>(t.q_exp));
    t = t * step;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Trivariate series in (a, b, q), truncated in q

struct StatExponent {
  int q = 0;
  int a = 0;
  int b = 0;
  friend auto operator<=>(const StatExponent&, const StatExponent&) = default;
};

class StatSeries {
 public:
  explicit StatSeries(std::size_t q_order) : q_order_(q_order) {}

  static StatSeries one(std::size_t q_order) {
    StatSeries s(q_order);
    s.add(0, 0, 0, 1);
    return s;
  }
  /// A single signed monomial with non-negative exponents.
  static StatSeries from_monomial(const Monomial& m, std::size_t q_order) {
    if (m.a_exp < 0 || m.b_exp < 0 || m.q_exp < 0) throw NegativeDegree("monomial with negative exponent");
    StatSeries s(q_order);
    s.add(m.a_exp, m.b_exp, m.q_exp, m.sign);
    return s;
  }

  std::size_t q_order() const { return q_order_; }
  const std::map<StatExponent, Integer>& terms() const { return terms_; }

  Integer coeff(int a, int b, int q) const {
    auto it = terms_.find({q, a, b});
    return it == terms_.end() ? Integer(0) : it->second;
  }

  void add(int a, int b, int q, const Integer& c) {
    if (a < 0 || b < 0 || q < 0) throw NegativeDegree("stat series exponents must be >= 0");
    if (static_cast<std::size_t>(q) > q_order_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(StatExponent{q, a, b}, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  StatSeries truncate(std::size_t L) const {
    StatSeries r(std::min(L, q_order_));
    for (const auto& [e, c] : terms_) r.add(e.a, e.b, e.q, c);
    return r;
  }

  friend StatSeries operator+(const StatSeries& x, const StatSeries& y) {
    StatSeries r(std::min(x.q_order_, y.q_order_));
    for (const auto& [e, c] : x.terms_) r.add(e.a, e.b, e.q, c);
    for (const auto& [e, c] : y.terms_) r.add(e.a, e.b, e.q, c);
    return r;
  }
  StatSeries operator-() const {
    StatSeries r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
  }
  friend StatSeries operator-(const StatSeries& x, const StatSeries& y) { return x + (-y); }

  friend StatSeries operator*(const StatSeries& x, const StatSeries& y) {
    StatSeries r(std::min(x.q_order_, y.q_order_));
    for (const auto& [e, c] : x.terms_) {
      if (static_cast<std::size_t>(e.q) > r.q_order_) break;  // terms are ordered by q first
      for (const auto& [f, d] : y.terms_) {
        if (static_cast<std::size_t>(e.q + f.q) > r.q_order_) break;
        r.add(e.a + f.a, e.b + f.b, e.q + f.q, c * d);
      }
    }
    return r;
  }
  StatSeries& operator*=(const StatSeries& y) { return *this = *this * y; }

  /// Equality of all terms with q-degree up to the smaller order.
  friend bool operator==(const StatSeries& x, const StatSeries& y) {
    const auto order = std::min(x.q_order_, y.q_order_);
    return x.truncate(order).terms_ == y.truncate(order).terms_;
  }

  /// Terms with no a (the a = 0 specialization).
  StatSeries at_a_zero() const {
    StatSeries r(q_order_);
    for (const auto& [e, c] : terms_)
      if (e.a == 0) r.add(0, e.b, e.q, c);
    return r;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      os << (first ? "" : " + ");
      first = false;
      os << c;
      if (e.a) os << "*a^" << e.a;
      if (e.b) os << "*b^" << e.b;
      if (e.q) os << "*q^" << e.q;
    }
    if (first) os << "0";
    os << " + O(q^" << (q_order_ + 1) << ")";
    return os.str();
  }

 private:
  std::map<StatExponent, Integer> terms_;
  std::size_t q_order_;
};

/// x / d for a unit d: constant term +-1 and every other term of q-degree >= 1.
inline StatSeries divide_by_unit(const StatSeries& x, const StatSeries& d) {
  const Integer u = d.coeff(0, 0, 0);
  if (u != 1 && u != -1) throw NonUnitDivisor("stat series divisor has no unit constant term");
  StatSeries rest(d.q_order());  // d - u
  for (const auto& [e, c] : d.terms()) {
    if (e.q == 0 && (e.a != 0 || e.b != 0)) throw NonUnitDivisor("divisor term of q-degree 0 besides the constant");
    if (e.q > 0) rest.add(e.a, e.b, e.q, c);
  }
  // 1/d = u * sum_k (-u * rest)^k; each power raises the q-degree.
  const auto order = std::min(x.q_order(), d.q_order());
  StatSeries neg = rest;
  neg = StatSeries::from_monomial(Monomial::constant(u == 1 ? -1 : 1), order) * neg;
  StatSeries inv = StatSeries::one(order);
  StatSeries power = StatSeries::one(order);
  for (std::size_t k = 1; k <= order; ++k) {
    power *= neg;
    if (power.terms().empty()) break;
    inv = inv + power;
  }
  if (u == -1) inv = -inv;
  return x.truncate(order) * inv;
}

/// (x; step)_n with x a monomial in a, b, q and step a positive power of q.
inline StatSeries stat_pochhammer(const Monomial& x, int step_q, int n, std::size_t L) {
  StatSeries r = StatSeries::one(L);
  Monomial t = x;
  for (int k = 0; k < n; ++k) {
    StatSeries f = StatSeries::one(L);
    f.add(t.a_exp, t.b_exp, t.q_exp, -t.sign);
    r *= f;
    t.q_exp += step_q;
  }
  return r;
}

/// Specializes a -> a_val, b -> b_val, q -> q_val and truncates at L.
/// Substitution values may carry negative q exponents as long as every term
/// still lands in degree >= 0; otherwise NegativeDegree is thrown. The result
/// order is the largest degree fully determined by the input's q-order.
inline QSeries substitute(const StatSeries& s, Monomial a_val, Monomial b_val, Monomial q_val, std::size_t L) {
  for (const auto* m : {&a_val, &b_val, &q_val})
    if (!m->q_only()) throw InvalidBase("substitution values must be monomials in q");
  if (q_val.q_exp < 1) throw InvalidBase("q must map to a positive power of q");
  // A dropped term has q-degree > q_order; its image has degree at least
  // (q_order+1) * (e_q + min(0, e_a, e_b)) when a, b appear at most as often
  // as q does, which holds for every Reiner distribution.
  const int low = std::min({0, a_val.q_exp, b_val.q_exp});
  const long determined = static_cast<long>(s.q_order() + 1) * (q_val.q_exp + low) - 1;
  std::size_t order = L;
  if (determined < static_cast<long>(L)) {
    if (determined < 0) throw NegativeDegree("substitution leaves no determined coefficients");
    order = static_cast<std::size_t>(determined);
  }
  std::vector<Integer> v(order + 1);
  for (const auto& [e, c] : s.terms()) {
    const long deg = static_cast<long>(e.a) * a_val.q_exp + static_cast<long>(e.b) * b_val.q_exp +
                     static_cast<long>(e.q) * q_val.q_exp;
    if (deg < 0)
      throw NegativeDegree("term a^" + std::to_string(e.a) + " b^" + std::to_string(e.b) + " q^" +
                           std::to_string(e.q) + " maps to negative degree");
    if (deg > static_cast<long>(order)) continue;
    int sign = 1;
    if (a_val.sign < 0 && e.a % 2) sign = -sign;
    if (b_val.sign < 0 && e.b % 2) sign = -sign;
    if (q_val.sign < 0 && e.q % 2) sign = -sign;
    v[static_cast<std::size_t>(deg)] += sign * c;
  }
  return QSeries::truncated(std::move(v), order);
}

}  // namespace coxfold

#endif  // COXFOLD_QSERIES_HPP
