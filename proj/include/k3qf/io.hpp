#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "k3qf/arith.hpp"
#include "k3qf/linalg.hpp"

namespace k3qf::io {

using Json = nlohmann::ordered_json;

/// Accepts a JSON integer, or a string "p", "-p", "p/q" with q != 0. Result is in lowest terms.
inline Rational parse_rational(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
    return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  }
  if (!j.is_string()) throw Error(Errc::parse, "expected an integer or a \"p/q\" string, got " + j.dump());
  const std::string s = j.get<std::string>();
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && t.find_first_not_of("0123456789") == std::string_view::npos;
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den.front() == '-' || den.front() == '+')
    throw Error(Errc::parse, "malformed rational \"" + s + "\"");
  auto to_int = [](const std::string& t) { return Integer(t.front() == '+' ? t.substr(1) : t, 10); };
  const Integer d = to_int(den);
  if (d == 0) throw Error(Errc::parse, "zero denominator in \"" + s + "\"");
  return make_rational(to_int(num), d);
}

inline Integer parse_integer(const Json& j) {
  Rational q = parse_rational(j);
  if (q.get_den() != 1) throw Error(Errc::parse, "expected an integer, got " + j.dump());
  return q.get_num();
}

/// Bare JSON integer when it fits in 64 bits, otherwise a string; non-integers as "p/q".
inline Json to_json(const Integer& n) {
  if (mpz_fits_slong_p(n.get_mpz_t())) return Json(static_cast<std::int64_t>(n.get_si()));
  return Json(to_string(n));
}

inline Json to_json(const Rational& q) {
  if (q.get_den() == 1) return to_json(q.get_num());
  return Json(to_string(q));
}

template <class T>
Json to_json(const std::vector<T>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

template <class T>
Json to_json(const Matrix<T>& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row_vector(i)));
  return a;
}

inline RatVector parse_vector(const Json& j) {
  if (!j.is_array()) throw Error(Errc::parse, "expected an array");
  RatVector v;
  for (const auto& x : j) v.push_back(parse_rational(x));
  return v;
}

inline RatMatrix parse_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) throw Error(Errc::parse, "expected a nonempty array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) rows.push_back(parse_vector(r));
  for (const auto& r : rows)
    if (r.size() != rows.size()) throw Error(Errc::parse, "Gram matrix must be square");
  return RatMatrix::from_rows(rows);
}

struct GramDocument {
  RatMatrix gram;
};

struct PeriodDocument {
  RatVector u, v;
};

struct ConstraintsDocument {
  std::vector<LocalClassConstraint> constraints;
};

using InputDocument = std::variant<GramDocument, PeriodDocument, ConstraintsDocument>;

inline Place parse_place(const Json& j) {
  if (j.is_string() && (j == "inf" || j == "oo" || j == "infinity")) return Place::infinity();
  Integer p = parse_integer(j);
  if (!is_prime(p)) throw Error(Errc::parse, "place " + j.dump() + " is not a prime");
  return Place::prime(p);
}

/// Exactly one of {"gram"}, {"u","v"}, {"constraints"}.
inline InputDocument parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::parse, e.what());
  }
  if (!j.is_object()) throw Error(Errc::parse, "input document must be a JSON object");
  auto keys_are = [&](std::initializer_list<const char*> ks) {
    if (j.size() != ks.size()) return false;
    for (const char* k : ks)
      if (!j.contains(k)) return false;
    return true;
  };
  if (keys_are({"gram"})) return GramDocument{parse_matrix(j["gram"])};
  if (keys_are({"u", "v"})) return PeriodDocument{parse_vector(j["u"]), parse_vector(j["v"])};
  if (keys_are({"constraints"})) {
    if (!j["constraints"].is_array()) throw Error(Errc::parse, "constraints must be an array");
    ConstraintsDocument doc;
    for (const auto& c : j["constraints"]) {
      if (!c.is_array() || c.size() != 2) throw Error(Errc::parse, "constraint must be [place, class]");
      Integer cls = parse_integer(c[1]);
      if (!is_squarefree(cls)) throw Error(Errc::parse, "class " + c[1].dump() + " is not squarefree");
      doc.constraints.push_back({parse_place(c[0]), SquareClass(cls)});
    }
    return doc;
  }
  throw Error(Errc::parse, "unrecognized document shape; expected gram, u/v, or constraints");
}

}  // namespace k3qf::io
