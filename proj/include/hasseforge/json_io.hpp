#ifndef HASSEFORGE_JSON_IO_HPP
#define HASSEFORGE_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "hasseforge/linalg.hpp"

// JSON wire formats.  Field descriptors carry the modulus so that F_{p^k}
// values stay portable; rationals serialize as exact strings because JSON
// numbers cannot hold arbitrary precision.

namespace hf {

using Json = nlohmann::ordered_json;

inline Json to_json(const GF& f) {
  Json j;
  j["char"] = f.characteristic();
  j["ext_degree"] = f.ext_degree();
  j["modulus"] = f.modulus();
  return j;
}

inline Json to_json(const Rationals&) {
  Json j;
  j["char"] = 0;
  return j;
}

template <class C>
Json to_json(const FunField<C>& f) {
  Json j = to_json(f.coeff_field());
  j["generator"] = std::string(1, f.gen_name());
  return j;
}

inline GF gf_from_json(const Json& j) {
  require(j.is_object() && j.contains("char"), Err::ConfigInvalid, "field descriptor: missing char");
  std::uint64_t p = j.at("char").get<std::uint64_t>();
  require(p != 0, Err::ConfigInvalid, "finite field descriptor has char 0");
  if (j.contains("modulus") && !j.at("modulus").is_null())
    return GF(p, j.at("modulus").get<std::vector<std::uint64_t>>());
  return GF(p);
}

inline Json to_json(const GFElem& e) {
  if (e.desc()->k == 1) return Json(e.residue());
  return Json(e.coeffs());
}
inline GFElem elem_from_json(const GF& f, const Json& j) {
  if (j.is_number()) return f.from_int(j.get<long long>());
  return f.element(j.get<std::vector<std::uint64_t>>());
}

inline Json to_json(const QQ& e) { return Json(e.str()); }
inline QQ elem_from_json(const Rationals&, const Json& j) {
  if (j.is_number_integer()) return QQ(j.get<long long>());
  require(j.is_string(), Err::ConfigInvalid, "rational must be an integer or a string like \"2/3\"");
  std::string s = j.get<std::string>();
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return QQ(BigRat(BigInt(s)));
    return QQ(BigRat(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1))));
  } catch (const std::exception&) {
    fail(Err::ConfigInvalid, "cannot parse rational '" + s + "'");
  }
}

template <class C>
Json to_json(const Poly<C>& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
  return arr;
}
template <class C>
Poly<C> poly_from_json(const C& field, const Json& j) {
  require(j.is_array(), Err::ConfigInvalid, "polynomial must be an array of coefficients");
  std::vector<typename C::Elem> c;
  c.reserve(j.size());
  for (const auto& e : j) c.push_back(elem_from_json(field, e));
  return Poly<C>(field, std::move(c));
}

template <class C>
Json to_json(const RatFunc<C>& f) {
  Json j;
  j["num"] = to_json(f.num());
  j["den"] = to_json(f.den());
  return j;
}
template <class C>
RatFunc<C> ratfunc_from_json(const C& field, const Json& j) {
  if (j.is_array()) return RatFunc<C>(poly_from_json(field, j));  // plain polynomial
  require(j.is_object() && j.contains("num"), Err::ConfigInvalid,
          "rational function must be {\"num\": [...], \"den\": [...]} or an array");
  Poly<C> num = poly_from_json(field, j.at("num"));
  Poly<C> den = j.contains("den") ? poly_from_json(field, j.at("den")) : Poly<C>::one(field);
  return RatFunc<C>(std::move(num), std::move(den));
}

template <class C>
Json to_json_vec(const std::vector<RatFunc<C>>& v) {
  Json arr = Json::array();
  for (const auto& e : v) arr.push_back(to_json(e));
  return arr;
}

template <class F>
Json to_json(const Mat<F>& m) {
  Json rows = Json::array();
  for (unsigned i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (unsigned j = 0; j < m.cols(); ++j) row.push_back(to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace hf

#endif
