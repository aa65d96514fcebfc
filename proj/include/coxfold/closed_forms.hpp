#ifndef COXFOLD_CLOSED_FORMS_HPP
#define COXFOLD_CLOSED_FORMS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "coxfold/errors.hpp"
#include "coxfold/folding.hpp"
#include "coxfold/qseries.hpp"

namespace coxfold {

/// One entry of the formula catalog.
struct FormulaInfo {
  std::string tag;
  std::string params;  // "n" or "n,m"
  int min_n;
  std::string kind;    // polynomial | series | stat-series | identity
  std::string expression;
};

/// Every closed form the library evaluates. Tags equal to a family name give
/// that family's unfolding series.
inline const std::vector<FormulaInfo>& formula_catalog() {
  static const std::vector<FormulaInfo> catalog = {
      {"Bn-A2n-1", "n", 2, "polynomial", "prod_{k=1}^{2n} [k]_{(-1)^k q}"},
      {"Bn-A2n", "n", 2, "polynomial", "prod_{k=1}^{2n+1} [k]_{(-1)^k q}"},
      {"Bn-Dn+1", "n", 2, "polynomial", "[2]_q [3]_{-q} [4]_q prod_{k=3}^{n} ([2k+1]_q - q^k)"},
      {"I2-An", "n", 2, "polynomial",
       "n=2m: [2]_{q^m} [n+1]_{q^m};  n=2m-1: [2]_{q^{m-1}} [2]_{q^m} [m]_{q^n}"},
      {"affA-affA", "n,m", 2, "series", "prod_{k=2}^{n} [k]_{q^m} / (1 - q^{(k-1)m})"},
      {"affA-affA-literal", "n,m", 2, "series", "prod_{k=1}^{n} [k]_{q^m} / (1 - q^{(k-1)m})"},
      {"affB-affDn+1", "n", 3, "series",
       "[2]_q [3]_{-q} [4]_q / ((1-q)(1-q^3)(1+q^n)) prod_{k=3}^{n} ([2k+1]_q - q^k) / (1 - q^{2k-1})"},
      {"affB-affD2n", "n", 3, "series",
       "prod_{k=1}^{2n} [k]_{(-1)^k q} prod_{k=2}^{n} (1 + q^{2(k-1)}) / prod_{k=1}^{n} (1 - q^{2(n+k)-3})"},
      {"affB-affD2n-literal", "n", 3, "series",
       "prod_{k=1}^{2n} [k]_{(-1)^k q} prod_{k=1}^{n} (1 + q^{2(k-1)}) / (1 - q^{2(n+k)-3})"},
      {"affB-affD2n+1", "n", 3, "series",
       "prod_{k=1}^{2n+1} [k]_{(-1)^k q} prod_{k=2}^{n} (1 + q^{2(k-1)}) / prod_{k=1}^{n} (1 - q^{2(n+k)-1})"},
      {"affB-affD2n+1-literal", "n", 3, "series",
       "prod_{k=1}^{2n+1} [k]_{(-1)^k q} prod_{k=1}^{n} (1 + q^{2(k-1)}) / (1 - q^{2(n+k)-1})"},
      {"affC-affA2n+1", "n", 2, "series",
       "[n+1]_{-q} [n+1]_{(-1)^{n+1} q} prod_{k=1, k!=n+1}^{2n+1} [k]_{(-1)^k q} / (1 + (-q)^k)"},
      {"affC-affA2n+1-literal", "n", 2, "series",
       "[n+1]_{-q} [n+1]_{(-1)^n q} prod_{k=1, k!=n+1}^{2n+1} [k]_{(-1)^k q} / (1 + (-q)^k)"},
      {"affC-affA2n", "n", 2, "series", "prod_{k=1}^{2n} [k+1]_{(-1)^{k+1} q} / (1 + (-q)^k)"},
      {"affC-affA2n-1", "n", 2, "series", "prod_{k=2}^{2n} [k]_{(-1)^k q} / (1 + (-q)^{k-1})"},
      {"affC-affBn+1", "n", 2, "series",
       "[2]_q [3]_{-q} [4]_q [2]_{-q^{n+1}} / ((1-q)(1-q^3)(1-q^5)) prod_{k=3}^{n} ([2k+1]_q - q^k) / (1 - q^{2k+1})"},
      {"affC-affDn+2", "n", 2, "series",
       "[2]_q [3]_{-q} [4]_q prod_{k=3}^{n} ([2k+1]_q - q^k) prod_{k=1}^{n} (1 + q^{k+1}) / (1 - q^{n+k+2})"},
      {"affC-affC2n+1", "n", 2, "series",
       "prod_{k=1}^{2n+1} [k]_{(-1)^k q} prod_{k=1}^{n} (1 + q^{2k}) / (1 - q^{2(n+k)+1})"},
      {"affC-affC2n", "n", 2, "series",
       "prod_{k=1}^{2n} [k]_{(-1)^k q} prod_{k=1}^{n} (1 + q^{2k}) / (1 - q^{2(n+k)-1})"},
      {"poincare-A", "n", 1, "polynomial", "[1]_q [2]_q ... [n+1]_q"},
      {"poincare-B", "n", 2, "polynomial", "[2]_q [4]_q ... [2n]_q"},
      {"poincare-affA", "n", 1, "series", "prod_{k=2}^{n+1} [k]_q / (1 - q^{k-1})"},
      {"reiner-affB", "n", 3, "stat-series", "(-aq;q)_n (-q;q)_{n-1} [n]_q! / (aq^n;q)_n"},
      {"reiner-affC", "n", 2, "stat-series", "(-aq;q)_n (-bq;q)_n [n]_q! / (abq^{n+1};q)_n"},
      {"length-identity", "n", 3, "identity",
       "B_m(-q) U(q) = A_n(-q) B_m(q), m = floor((n+1)/2), U the unfolding of B_m in A_n"},
      {"coset-factor", "part,n", 2, "polynomial",
       "part 1: [2n-1]_{-q} [2n]_q;  part 2: [2n]_q [2n+1]_{-q};  part 3: [2n+1]_q - q^n"},
  };
  return catalog;
}

inline const FormulaInfo& formula_info(std::string_view tag) {
  for (const auto& f : formula_catalog())
    if (f.tag == tag) return f;
  throw InvalidParameters("unknown formula tag '" + std::string(tag) + "'");
}

namespace cf {

/// [k]_{sign q^e}
inline QSeries qint(int k, int sign = 1, int e = 1) { return q_integer(k, Monomial::q(e, sign)); }

/// [k]_{(-1)^k q}
inline QSeries alt(int k) { return qint(k, k % 2 == 0 ? 1 : -1); }

/// 1 + c q^d
inline QSeries binom(int c, int d) {
  return QSeries::one() + QSeries::monomial(Integer(c), static_cast<std::size_t>(d));
}

/// [2k+1]_q - q^k
inline QSeries type_d_factor(int k) { return qint(2 * k + 1) - QSeries::monomial(1, static_cast<std::size_t>(k)); }

/// Multiplies `acc` by num/den, keeping everything truncated at L.
inline void times_ratio(QSeries& acc, const QSeries& num, const QSeries& den, std::size_t L) {
  acc = divide_by_unit(acc.truncate(L) * num, den, L);
}

inline QSeries prod_alt(int from, int to) {
  QSeries r = QSeries::one();
  for (int k = from; k <= to; ++k) r *= alt(k);
  return r;
}

}  // namespace cf

/// Poincare polynomial of A_n.
inline QSeries poincare_a(int n) { return q_factorial(n + 1); }

/// Poincare polynomial of B_n.
inline QSeries poincare_b(int n) {
  QSeries r = QSeries::one();
  for (int k = 1; k <= n; ++k) r *= cf::qint(2 * k);
  return r;
}

/// Poincare series of affine A_n truncated at L (Bott's product).
inline QSeries poincare_affine_a(int n, std::size_t L) {
  QSeries r = QSeries::one().truncate(L);
  for (int k = 2; k <= n + 1; ++k) cf::times_ratio(r, cf::qint(k), QSeries::one_minus(k - 1), L);
  return r;
}

/// Generating polynomial of the unfolded minimal coset representatives of B_n
/// for the parabolic subgroup omitting r_1, for the foldings into A_{2n-1}
/// (part 1), A_{2n} (part 2) and D_{n+1} (part 3).
inline QSeries coset_factor(int part, int n) {
  if (n < 2 || (part == 3 && n < 3)) throw InvalidParameters("coset factor needs n >= 2 (n >= 3 for part 3)");
  switch (part) {
    case 1: return cf::qint(2 * n - 1, -1) * cf::qint(2 * n);
    case 2: return cf::qint(2 * n) * cf::qint(2 * n + 1, -1);
    case 3: return cf::type_d_factor(n);
    default: throw InvalidParameters("coset factor part must be 1, 2 or 3");
  }
}

/// Evaluates a catalog formula. Finite families give exact polynomials and
/// ignore L; series need L.
inline QSeries closed_form(std::string_view tag, int n, int m = 0, std::optional<std::size_t> L = std::nullopt) {
  const auto& info = formula_info(tag);
  if (n < info.min_n) throw InvalidParameters(info.tag + " needs n >= " + std::to_string(info.min_n));
  if (info.params == "n,m" && m < 2) throw InvalidParameters(info.tag + " needs m >= 2");
  if (info.kind == "series" && !L) throw InvalidParameters(info.tag + " is a series and needs a truncation order");
  using namespace cf;
  const std::string t(tag);

  if (t == "Bn-A2n-1") return prod_alt(1, 2 * n);
  if (t == "Bn-A2n") return prod_alt(1, 2 * n + 1);
  if (t == "Bn-Dn+1") {
    QSeries r = qint(2) * qint(3, -1) * qint(4);
    for (int k = 3; k <= n; ++k) r *= type_d_factor(k);
    return r;
  }
  if (t == "I2-An") {
    if (n % 2 == 0) return qint(2, 1, n / 2) * qint(n + 1, 1, n / 2);
    const int mm = (n + 1) / 2;
    return qint(2, 1, mm - 1) * qint(2, 1, mm) * qint(mm, 1, n);
  }
  if (t == "poincare-A") return poincare_a(n);
  if (t == "poincare-B") return poincare_b(n);

  const std::size_t order = *L;
  QSeries r = QSeries::one().truncate(order);
  if (t == "poincare-affA") return poincare_affine_a(n, order);
  if (t == "affA-affA" || t == "affA-affA-literal") {
    // The k = 1 factor has denominator 1 - q^0 = 0.
    for (int k = (t == "affA-affA" ? 2 : 1); k <= n; ++k)
      times_ratio(r, qint(k, 1, m), QSeries::one_minus(static_cast<std::size_t>((k - 1) * m)), order);
    return r;
  }
  if (t == "affB-affDn+1") {
    times_ratio(r, qint(2) * qint(3, -1) * qint(4), QSeries::one_minus(1) * QSeries::one_minus(3) * binom(1, n), order);
    for (int k = 3; k <= n; ++k) times_ratio(r, type_d_factor(k), QSeries::one_minus(2 * k - 1), order);
    return r;
  }
  if (t == "affB-affD2n" || t == "affB-affD2n-literal" || t == "affB-affD2n+1" || t == "affB-affD2n+1-literal") {
    const bool odd = t.rfind("affB-affD2n+1", 0) == 0;
    const bool literal = t.size() > 8 && t.substr(t.size() - 8) == "-literal";
    r = prod_alt(1, odd ? 2 * n + 1 : 2 * n).truncate(order);
    for (int k = literal ? 1 : 2; k <= n; ++k) r = (r * binom(1, 2 * (k - 1))).truncate(order);
    for (int k = 1; k <= n; ++k)
      times_ratio(r, QSeries::one(), QSeries::one_minus(odd ? 2 * (n + k) - 1 : 2 * (n + k) - 3), order);
    return r;
  }
  if (t == "affC-affA2n+1" || t == "affC-affA2n+1-literal") {
    const bool literal = t != "affC-affA2n+1";
    const int second_sign = (n % 2 == 0) == literal ? 1 : -1;  // (-1)^{n+1}, or (-1)^n when literal
    r = (qint(n + 1, -1) * qint(n + 1, second_sign)).truncate(order);
    for (int k = 1; k <= 2 * n + 1; ++k)
      if (k != n + 1) times_ratio(r, alt(k), binom(k % 2 ? -1 : 1, k), order);
    return r;
  }
  if (t == "affC-affA2n") {
    for (int k = 1; k <= 2 * n; ++k) times_ratio(r, qint(k + 1, k % 2 ? 1 : -1), binom(k % 2 ? -1 : 1, k), order);
    return r;
  }
  if (t == "affC-affA2n-1") {
    for (int k = 2; k <= 2 * n; ++k) times_ratio(r, alt(k), binom((k - 1) % 2 ? -1 : 1, k - 1), order);
    return r;
  }
  if (t == "affC-affBn+1") {
    times_ratio(r, qint(2) * qint(3, -1) * qint(4) * qint(2, -1, n + 1),
                QSeries::one_minus(1) * QSeries::one_minus(3) * QSeries::one_minus(5), order);
    for (int k = 3; k <= n; ++k) times_ratio(r, type_d_factor(k), QSeries::one_minus(2 * k + 1), order);
    return r;
  }
  if (t == "affC-affDn+2") {
    r = (qint(2) * qint(3, -1) * qint(4)).truncate(order);
    for (int k = 3; k <= n; ++k) r = (r * type_d_factor(k)).truncate(order);
    for (int k = 1; k <= n; ++k) times_ratio(r, binom(1, k + 1), QSeries::one_minus(n + k + 2), order);
    return r;
  }
  if (t == "affC-affC2n+1" || t == "affC-affC2n") {
    const bool odd = t == "affC-affC2n+1";
    r = prod_alt(1, odd ? 2 * n + 1 : 2 * n).truncate(order);
    for (int k = 1; k <= n; ++k)
      times_ratio(r, binom(1, 2 * k), QSeries::one_minus(odd ? 2 * (n + k) + 1 : 2 * (n + k) - 1), order);
    return r;
  }
  throw InvalidParameters(info.tag + " is not a univariate closed form");
}

/// Reiner's distribution of (r_0 count, r_n count, length) over affine B_n
/// (b unused) or affine C_n, truncated at q-degree L.
inline StatSeries reiner_distribution(ReinerType type, int n, std::size_t L) {
  const int floor = type == ReinerType::affB ? 3 : 2;
  if (n < floor) throw InvalidParameters(to_string(type) + " needs n >= " + std::to_string(floor));
  StatSeries fact(L);
  {
    const auto f = q_factorial(n, Monomial::q(), L);
    for (std::size_t d = 0; d < f.coeffs().size(); ++d) fact.add(0, 0, static_cast<int>(d), f.coeffs()[d]);
  }
  if (type == ReinerType::affB) {
    const StatSeries num = stat_pochhammer({-1, 1, 0, 1}, 1, n, L) * stat_pochhammer({-1, 0, 0, 1}, 1, n - 1, L) * fact;
    return divide_by_unit(num, stat_pochhammer({1, 1, 0, n}, 1, n, L));
  }
  const StatSeries num = stat_pochhammer({-1, 1, 0, 1}, 1, n, L) * stat_pochhammer({-1, 0, 1, 1}, 1, n, L) * fact;
  return divide_by_unit(num, stat_pochhammer({1, 1, 1, n + 1}, 1, n, L));
}

/// Values substituted for (a, b, q) in Reiner's distribution to obtain the
/// unfolding series of an affine B or C family; each comes from the length
/// relation l(phi(w)) = (q exponent) l(w) + (a exponent) r(w) + (b exponent) s(w).
struct ReinerSubstitution {
  ReinerType type;
  Monomial a, b, q;
};

inline std::optional<ReinerSubstitution> reiner_substitution(std::string_view family) {
  const auto q = [](int e) { return Monomial::q(e); };
  const std::string f(family);
  using R = ReinerType;
  if (f == "affB-affDn+1") return ReinerSubstitution{R::affB, q(1), q(0), q(1)};
  if (f == "affB-affD2n") return ReinerSubstitution{R::affB, q(-1), q(0), q(2)};
  if (f == "affB-affD2n+1") return ReinerSubstitution{R::affB, q(1), q(0), q(2)};
  if (f == "affC-affA2n+1") return ReinerSubstitution{R::affC, q(1), q(1), q(2)};
  if (f == "affC-affA2n") return ReinerSubstitution{R::affC, q(1), q(-1), q(2)};
  if (f == "affC-affA2n-1") return ReinerSubstitution{R::affC, q(-1), q(-1), q(2)};
  if (f == "affC-affBn+1") return ReinerSubstitution{R::affC, q(0), q(1), q(1)};
  if (f == "affC-affDn+2") return ReinerSubstitution{R::affC, q(1), q(1), q(1)};
  if (f == "affC-affC2n+1") return ReinerSubstitution{R::affC, q(0), q(1), q(2)};
  if (f == "affC-affC2n") return ReinerSubstitution{R::affC, q(0), q(-1), q(2)};
  return std::nullopt;
}

/// Unfolding series of an affine B or C family obtained by specializing
/// Reiner's distribution.
inline QSeries reiner_route(const FamilyId& family, std::size_t L) {
  const auto sub = reiner_substitution(family.name);
  if (!sub) throw InvalidParameters(family.name + " has no Reiner specialization");
  return substitute(reiner_distribution(sub->type, family.n, L), sub->a, sub->b, sub->q, L);
}

/// The product formula for a registered family.
inline QSeries unfolding_closed_form(const FamilyId& family, std::optional<std::size_t> L = std::nullopt) {
  if (is_affine_family(family.name) && !L) throw InvalidParameters(family.name + " needs a truncation order");
  if (family.name == "affC-affC2n+1-literal") return closed_form("affC-affC2n+1", family.n, family.m, L);
  return closed_form(family.name, family.n, family.m, is_affine_family(family.name) ? L : std::nullopt);
}

/// Both sides B_m(-q) U(q) and A_n(-q) B_m(q) of the length identity for B_m
/// folded into A_n, m = floor((n+1)/2), as exact polynomials.
inline std::pair<QSeries, QSeries> corollary_identity(int n) {
  if (n < 3) throw InvalidParameters("length identity needs n >= 3");
  const int m = (n + 1) / 2;
  const QSeries u = closed_form(n % 2 == 1 ? "Bn-A2n-1" : "Bn-A2n", m);
  return {poincare_b(m).scale_variable(-1, 1) * u, poincare_a(n).scale_variable(-1, 1) * poincare_b(m)};
}

}  // namespace coxfold

#endif  // COXFOLD_CLOSED_FORMS_HPP
