#ifndef COXFOLD_SERIALIZE_HPP
#define COXFOLD_SERIALIZE_HPP

#include <cstdint>
#include <sstream>
#include <string>

#include <json.hpp>

#include "coxfold/errors.hpp"
#include "coxfold/qseries.hpp"

namespace coxfold {

using Json = nlohmann::ordered_json;

// Coefficients are JSON integers while they fit in 64 bits and decimal strings
// beyond that.

inline Json integer_to_json(const Integer& c) {
  if (c >= std::numeric_limits<std::int64_t>::min() && c <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(c));
  return Json(c.str());
}

inline Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) return Integer(j.get<std::string>());
  throw InvalidParameters("coefficient must be an integer or a decimal string");
}

/// {"order": L | "exact", "coeffs": [...]}
inline Json to_json(const QSeries& s) {
  Json j;
  if (s.order())
    j["order"] = *s.order();
  else
    j["order"] = "exact";
  Json c = Json::array();
  for (const auto& x : s.coeffs()) c.push_back(integer_to_json(x));
  j["coeffs"] = std::move(c);
  return j;
}

inline QSeries qseries_from_json(const Json& j) {
  std::vector<Integer> c;
  for (const auto& x : j.at("coeffs")) c.push_back(integer_from_json(x));
  const auto& order = j.at("order");
  if (order.is_string()) {
    if (order.get<std::string>() != "exact") throw InvalidParameters("order must be an integer or \"exact\"");
    return QSeries::exact(std::move(c));
  }
  return QSeries::truncated(std::move(c), order.get<std::size_t>());
}

/// {"q_order": L, "terms": [[a, b, q, coeff], ...]} with terms ordered by (q, a, b).
inline Json to_json(const StatSeries& s) {
  Json j;
  j["q_order"] = s.q_order();
  Json t = Json::array();
  for (const auto& [e, c] : s.terms()) t.push_back(Json::array({e.a, e.b, e.q, integer_to_json(c)}));
  j["terms"] = std::move(t);
  return j;
}

inline StatSeries statseries_from_json(const Json& j) {
  StatSeries s(j.at("q_order").get<std::size_t>());
  for (const auto& t : j.at("terms"))
    s.add(t.at(0).get<int>(), t.at(1).get<int>(), t.at(2).get<int>(), integer_from_json(t.at(3)));
  return s;
}

/// Rows "degree,coeff".
inline std::string to_csv(const QSeries& s) {
  std::ostringstream os;
  os << "degree,coeff\n";
  for (std::size_t d = 0; d < s.coeffs().size(); ++d) os << d << ',' << s.coeffs()[d] << '\n';
  return os.str();
}

/// Rows "a,b,q,coeff".
inline std::string to_csv(const StatSeries& s) {
  std::ostringstream os;
  os << "a,b,q,coeff\n";
  for (const auto& [e, c] : s.terms()) os << e.a << ',' << e.b << ',' << e.q << ',' << c << '\n';
  return os.str();
}

}  // namespace coxfold

#endif  // COXFOLD_SERIALIZE_HPP
