#pragma once

// JSON encoding of the library's results and decoding of module files.
// Integers that do not fit in 64 bits are written as decimal strings.

#include "kcone/assocvar.hpp"

#include "json.hpp"

#include <string>

namespace kcone {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json integer_json(Integer const& v) {
  if (fits_int64(v)) return Json(static_cast<std::int64_t>(v));
  return Json(v.str());
}

inline Integer integer_from_json(Json const& j, char const* what) {
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (std::exception const&) {
    }
  }
  throw ParseError(std::string("expected an integer for '") + what + "'");
}

inline Weight weight_from_json(Json const& j, int rank, char const* what) {
  if (!j.is_array()) throw ParseError(std::string("expected an integer array for '") + what + "'");
  if (static_cast<int>(j.size()) != rank)
    throw ParseError(std::string("'") + what + "' has " + std::to_string(j.size()) + " entries, rank is " +
                     std::to_string(rank));
  Weight w(static_cast<std::size_t>(rank));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) throw ParseError(std::string("non-integer entry in '") + what + "'");
    w.coords[i] = j[i].get<std::int64_t>();
  }
  return w;
}

}  // namespace detail

inline Json to_json(Weight const& w) { return Json(w.coords); }

inline Json to_json(KClass const& k) {
  Json coeffs = Json::array();
  for (auto const& [w, c] : k.coeffs) coeffs.push_back({{"weight", to_json(w)}, {"coef", detail::integer_json(c)}});
  return {{"coeffs", std::move(coeffs)}, {"rank", k.rank ? detail::integer_json(*k.rank) : Json(nullptr)}};
}

inline KClass kclass_from_json(RootDatum const& rd, Json const& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw ParseError("kclass must be an object with a 'coeffs' array");
  KClass k;
  for (auto const& term : j["coeffs"]) {
    if (!term.is_object() || !term.contains("weight") || !term.contains("coef"))
      throw ParseError("kclass terms need 'weight' and 'coef'");
    k.add(rd, detail::weight_from_json(term["weight"], rd.rank, "weight"),
          detail::integer_from_json(term["coef"], "coef"));
  }
  if (j.contains("rank") && !j["rank"].is_null()) k.rank = detail::integer_from_json(j["rank"], "rank");
  return k;
}

inline Json orbits_json(std::vector<NilpotentOrbit> const& orbits, ClosurePoset const& poset) {
  Json out = Json::array();
  for (auto const& o : orbits)
    out.push_back({{"id", o.id},
                   {"label", o.label},
                   {"dynkin_marks", o.dynkin_marks},
                   {"dimension", o.dimension},
                   {"covers", poset.covers[o.id]}});
  return out;
}

inline Json to_json(GeometricBasisVector const& v) {
  Json comb = Json::array();
  for (auto const& [phi, c] : v.combination) comb.push_back({{"levi_weight", to_json(phi)}, {"coef", detail::integer_json(c)}});
  return {{"orbit", v.orbit_id},
          {"index", v.index},
          {"certified", v.certified},
          {"rank", detail::integer_json(v.rank)},
          {"combination", std::move(comb)},
          {"kclass", to_json(v.kclass)}};
}

/// The basis with its truncation metadata; `orbit` restricts the vectors
/// to one stratum.
inline Json basis_json(GeometricBasis const& b, std::optional<int> orbit = std::nullopt) {
  Json terms = Json::array();
  for (auto const& [sq, n] : b.norm_constant.terms) terms.push_back({{"root_norm_sq", to_string(sq)}, {"count", n}});
  Json vectors = Json::array();
  for (auto const& s : b.strata) {
    if (orbit && s.orbit_id != *orbit) continue;
    for (auto const& v : s.vectors) vectors.push_back(to_json(v));
  }
  return {{"type", b.type_label},
          {"bound_sq", to_string(b.bound_sq)},
          {"norm_constant", {{"terms", std::move(terms)}, {"approx", b.norm_constant.approx()}}},
          {"window_sq", detail::integer_json(b.window_sq)},
          {"window2_sq", detail::integer_json(b.norm_constant.window_sq(b.bound_sq, 2))},
          {"orbits", orbits_json(b.orbits, b.poset)},
          {"vectors", std::move(vectors)}};
}

inline Json to_json(AssociatedCycle const& c, GeometricBasis const& b) {
  Json cycle = Json::array();
  for (auto const& comp : c.components)
    cycle.push_back({{"orbit", comp.orbit_id},
                     {"label", b.orbits[comp.orbit_id].label},
                     {"multiplicity", detail::integer_json(comp.multiplicity)}});
  return {{"variety", c.variety}, {"cycle", std::move(cycle)}};
}

/// Parses a module file: {"standards":[...]} or {"kclass":{...}} (both allowed).
inline VirtualModule module_from_json(RootDatum const& rd, Json const& j) {
  if (!j.is_object()) throw ParseError("module file must contain a JSON object");
  if (!j.contains("standards") && !j.contains("kclass"))
    throw ParseError("module file needs 'standards' or 'kclass'");
  VirtualModule m;
  if (j.contains("standards")) {
    if (!j["standards"].is_array()) throw ParseError("'standards' must be an array");
    for (auto const& t : j["standards"]) {
      if (!t.is_object() || !t.contains("lambda_l") || !t.contains("lambda_r"))
        throw ParseError("standard terms need 'lambda_l' and 'lambda_r'");
      StandardTerm st;
      st.coef = t.contains("coef") ? detail::integer_from_json(t["coef"], "coef") : Integer(1);
      st.lambda_l = detail::weight_from_json(t["lambda_l"], rd.rank, "lambda_l");
      st.lambda_r = detail::weight_from_json(t["lambda_r"], rd.rank, "lambda_r");
      m.standards.push_back(std::move(st));
    }
  }
  if (j.contains("kclass")) m.kclass = kclass_from_json(rd, j["kclass"]);
  return m;
}

inline VirtualModule parse_module(RootDatum const& rd, std::string const& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (Json::parse_error const& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return module_from_json(rd, j);
}

}  // namespace kcone
