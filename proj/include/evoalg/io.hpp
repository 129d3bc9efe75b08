#ifndef EVOALG_IO_HPP_
#define EVOALG_IO_HPP_

// JSON encodings.
//
//   field    {"kind":"Q"} | {"kind":"GF","p":5,"k":1} | {"kind":"GF","p":2,"k":2,"modulus":[1,1,1]}
//   element  Q: "n/d" or "n"; GF(p^k): array of k integers [c0,...,c_{k-1}]
//            (GF(p) input also takes a bare integer or an "n/d" string)
//   algebra  {"field":...,"msc":[a,b,c,d]} or {"field":...,"msc8":[[...4...],[...4...]]}
//   matrix   [[m11,m12],[m21,m22]]
//   key      {"label":"E1","params":[...]}

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "evoalg/aut.hpp"
#include "evoalg/classify.hpp"
#include "evoalg/der.hpp"
#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/oracle.hpp"
#include "evoalg/poly.hpp"
#include "evoalg/tensor.hpp"

namespace evoalg::io {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void bad(const std::string& what) { throw Error(Errc::parse_error, what); }

inline Json field_to_json(const Field& f) {
  if (!f.is_finite()) return Json{{"kind", "Q"}};
  Json j{{"kind", "GF"}, {"p", f.characteristic()}, {"k", f.degree()}};
  if (f.degree() > 1) j["modulus"] = f.modulus();
  return j;
}

inline Field field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) bad("field needs a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "Q") return Field::rationals();
  if (kind != "GF") bad("unknown field kind \"" + kind + "\"");
  if (!j.contains("p") || !j["p"].is_number_unsigned()) bad("GF field needs a positive integer \"p\"");
  const std::uint64_t p = j["p"].get<std::uint64_t>();
  unsigned k = 1;
  if (j.contains("k")) {
    if (!j["k"].is_number_unsigned()) bad("\"k\" must be a positive integer");
    k = j["k"].get<unsigned>();
  }
  if (!j.contains("modulus")) return Field::galois(p, k);
  if (!j["modulus"].is_array()) bad("\"modulus\" must be an array");
  std::vector<std::uint32_t> mod;
  for (const auto& c : j["modulus"]) {
    if (!c.is_number_unsigned()) bad("modulus coefficients must be non-negative integers");
    mod.push_back(c.get<std::uint32_t>());
  }
  return Field::extension(p, k, std::move(mod));
}

// "Q", "GF(7)" or "GF(2^2)", or a JSON field descriptor.
inline Field field_from_text(const std::string& text) {
  if (text == "Q") return Field::rationals();
  if (text.rfind("GF(", 0) == 0 && text.size() > 4 && text.back() == ')') {
    const std::string body = text.substr(3, text.size() - 4);
    const auto caret = body.find('^');
    try {
      std::size_t used = 0;
      const unsigned long p = std::stoul(body.substr(0, caret), &used);
      if (used != body.substr(0, caret).size()) bad("malformed field \"" + text + "\"");
      unsigned k = 1;
      if (caret != std::string::npos) {
        const std::string ks = body.substr(caret + 1);
        k = static_cast<unsigned>(std::stoul(ks, &used));
        if (used != ks.size()) bad("malformed field \"" + text + "\"");
      }
      return Field::galois(p, k);
    } catch (const std::logic_error&) {
      bad("malformed field \"" + text + "\"");
    }
  }
  try {
    return field_from_json(Json::parse(text));
  } catch (const Json::exception& e) {
    bad("malformed field descriptor: " + std::string(e.what()));
  }
}

inline Json fel_to_json(const Fel& x) {
  if (!x.field().is_finite()) return x.to_string();
  return x.coeffs();
}

inline Fel fel_from_json(const Json& j, const Field& f) {
  if (!f.is_finite()) {
    if (j.is_number_integer()) return f.from_int(j.get<long long>());
    if (!j.is_string()) bad("rational elements are written as \"n/d\" strings");
    const std::string s = j.get<std::string>();
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0) bad("malformed rational \"" + s + "\"");
    if (sgn(v.get_den()) == 0) throw Error(Errc::division_by_zero, "zero denominator in \"" + s + "\"");
    return f.from_rational(v);
  }
  if (j.is_number_integer()) {
    if (f.degree() != 1) bad("GF(p^k) elements are arrays of k integers");
    return f.from_int(j.get<long long>());
  }
  if (j.is_string()) {
    if (f.degree() != 1) bad("GF(p^k) elements are arrays of k integers");
    const std::string s = j.get<std::string>();
    mpq_class v;
    if (s.empty() || v.set_str(s, 10) != 0) bad("malformed integer \"" + s + "\"");
    if (sgn(v.get_den()) == 0) throw Error(Errc::division_by_zero, "zero denominator in \"" + s + "\"");
    v.canonicalize();
    return f.from_rational(v);
  }
  if (!j.is_array()) bad("malformed field element");
  std::vector<long long> cs;
  for (const auto& c : j) {
    if (!c.is_number_integer()) bad("element coefficients must be integers");
    cs.push_back(c.get<long long>());
  }
  return f.from_coeffs(cs);
}

inline Json mat_to_json(const Mat2& m) {
  return Json::array({Json::array({fel_to_json(m.m[0]), fel_to_json(m.m[1])}),
                      Json::array({fel_to_json(m.m[2]), fel_to_json(m.m[3])})});
}

inline Mat2 mat_from_json(const Json& j, const Field& f) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2) {
    bad("a matrix is [[m11,m12],[m21,m22]]");
  }
  return Mat2::of(fel_from_json(j[0][0], f), fel_from_json(j[0][1], f), fel_from_json(j[1][0], f),
                  fel_from_json(j[1][1], f));
}

inline Json msc_to_json(const Msc& a) {
  Json rows = Json::array();
  for (int r = 0; r < 2; ++r) {
    Json row = Json::array();
    for (int c = 0; c < 4; ++c) row.push_back(fel_to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json evolution_to_json(const EvolutionMsc& e) {
  return Json::array({fel_to_json(e.a), fel_to_json(e.b), fel_to_json(e.c), fel_to_json(e.d)});
}

struct Algebra {
  Field field;
  Msc msc;
  std::optional<EvolutionMsc> evolution;  // set when the MSC has evolution form
};

inline Algebra algebra_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("field")) bad("algebra needs a \"field\"");
  Algebra out;
  out.field = field_from_json(j["field"]);
  const Field& f = out.field;
  if (j.contains("msc")) {
    const Json& m = j["msc"];
    if (!m.is_array() || m.size() != 4) bad("\"msc\" is [a,b,c,d]");
    out.evolution = EvolutionMsc{fel_from_json(m[0], f), fel_from_json(m[1], f), fel_from_json(m[2], f),
                                 fel_from_json(m[3], f)};
    out.msc = out.evolution->to_msc();
    return out;
  }
  if (!j.contains("msc8")) bad("algebra needs \"msc\" or \"msc8\"");
  const Json& m = j["msc8"];
  if (!m.is_array() || m.size() != 2) bad("\"msc8\" is a 2x4 array");
  for (int r = 0; r < 2; ++r) {
    if (!m[r].is_array() || m[r].size() != 4) bad("\"msc8\" is a 2x4 array");
    for (int c = 0; c < 4; ++c) out.msc(r, c) = fel_from_json(m[r][c], f);
  }
  out.evolution = EvolutionMsc::from_msc(out.msc);
  return out;
}

inline Json algebra_to_json(const Algebra& a) {
  Json j{{"field", field_to_json(a.field)}};
  if (a.evolution) j["msc"] = evolution_to_json(*a.evolution);
  else j["msc8"] = msc_to_json(a.msc);
  return j;
}

inline Json key_to_json(const CanonicalKey& k) {
  Json params = Json::array();
  for (const Fel& p : k.params) params.push_back(fel_to_json(p));
  return Json{{"label", label_name(k.label)}, {"params", params}};
}

inline CanonicalKey key_from_json(const Json& j, const Field& f) {
  if (!j.is_object() || !j.contains("label") || !j["label"].is_string()) bad("key needs a \"label\"");
  const auto label = parse_label(j["label"].get<std::string>());
  if (!label) bad("unknown label");
  std::vector<Fel> ps;
  if (j.contains("params")) {
    if (!j["params"].is_array()) bad("\"params\" must be an array");
    for (const auto& p : j["params"]) ps.push_back(fel_from_json(p, f));
  }
  const std::size_t want = *label == Label::E1 ? 2 : *label == Label::E2 ? 1 : 0;
  if (ps.size() != want) throw Error(Errc::invalid_params, "wrong number of key parameters");
  if (*label == Label::E1) return CanonicalKey::e1(ps[0], ps[1]);
  return CanonicalKey{*label, f, std::move(ps)};
}

// Coefficients lowest degree first.
inline Json poly_to_json(const Poly& p) {
  Json cs = Json::array();
  for (const Fel& c : p.coeffs()) cs.push_back(fel_to_json(c));
  return cs;
}

inline Json classification_to_json(const ClassificationResult& r) {
  Json j{{"key", key_to_json(r.key)}};
  j["witness"] = r.witness ? mat_to_json(r.witness->ginv()) : Json(nullptr);
  j["convention"] = "g_inverse";
  j["witness_field"] = field_to_json(r.witness_field);
  j["needs_extension"] = r.needs_extension ? poly_to_json(*r.needs_extension) : Json(nullptr);
  if (r.needs_extension) j["needs_extension_text"] = r.needs_extension->to_string();
  j["trace"] = r.trace;
  j["lambda"] = r.lambda ? fel_to_json(*r.lambda) : Json(nullptr);
  return j;
}

inline Json family_to_json(const ParamFamily& fam) {
  Json entries = Json::array({Json::array({fam.entries[0].to_string(), fam.entries[1].to_string()}),
                              Json::array({fam.entries[2].to_string(), fam.entries[3].to_string()})});
  Json excluded = Json::array();
  for (const Exclusion& e : fam.excluded) excluded.push_back(e.text);
  return Json{{"entries", entries}, {"excluded", excluded}, {"param_count", fam.param_count}};
}

inline Json aut_to_json(const AutDescription& d) {
  Json finite = Json::array();
  for (const Mat2& m : d.finite) finite.push_back(mat_to_json(m));
  Json families = Json::array();
  for (const ParamFamily& fam : d.families) families.push_back(family_to_json(fam));
  Json j{{"finite", finite}, {"families", families}};
  const auto order = aut_order(d);
  j["order_over_field"] = order ? Json(*order) : Json(nullptr);
  j["key"] = key_to_json(d.key);
  j["char_regime"] = regime_name(d.regime);
  j["finite_field"] = field_to_json(d.finite_field);
  j["needs_extension"] = d.needs_extension ? poly_to_json(*d.needs_extension) : Json(nullptr);
  return j;
}

inline Json der_to_json(const DerBasis& d) {
  Json basis = Json::array();
  for (const Mat2& m : d.basis) basis.push_back(mat_to_json(m));
  return Json{{"dim", d.dim()}, {"basis", basis}};
}

inline Json census_to_json(const CensusReport& r) {
  Json keys = Json::array();
  for (const KeyRecord& k : r.keys) {
    Json orbits = Json::array();
    for (const OrbitRecord& o : k.orbits) {
      orbits.push_back(Json{{"representative", evolution_to_json(o.representative)}, {"size", o.size}});
    }
    keys.push_back(Json{{"key", key_to_json(k.key)},
                        {"count", k.count},
                        {"orbit_representatives", orbits},
                        {"brute_aut_order", k.brute_aut_order},
                        {"closed_form_aut_order", k.closed_aut_order ? Json(*k.closed_aut_order) : Json(nullptr)},
                        {"der_dim", k.der_dim},
                        {"max_witness_degree", k.max_witness_degree}});
  }
  return Json{{"field", field_to_json(r.field)},
              {"max_ext", r.max_ext},
              {"total", r.total},
              {"keys", keys},
              {"consistency_flags",
               {{"keys_vs_orbits_ok", r.flags.keys_vs_orbits_ok},
                {"witnesses_ok", r.flags.witnesses_ok},
                {"aut_closed_form_ok", r.flags.aut_closed_form_ok},
                {"der_closed_form_ok", r.flags.der_closed_form_ok}}},
              {"failures", r.failures}};
}

// One line per key: key, count, aut_order, der_dim.
inline std::string census_to_csv(const CensusReport& r) {
  std::string out = "key,count,aut_order,der_dim\n";
  for (const KeyRecord& k : r.keys) {
    std::string key(label_name(k.key.label));
    if (!k.key.params.empty()) {
      key += "(";
      for (std::size_t i = 0; i < k.key.params.size(); ++i) {
        if (i) key += ";";
        key += k.key.params[i].to_string();
      }
      key += ")";
    }
    out += "\"" + key + "\"," + std::to_string(k.count) + "," + std::to_string(k.brute_aut_order) + "," +
           std::to_string(k.der_dim) + "\n";
  }
  return out;
}

}  // namespace evoalg::io

#endif  // EVOALG_IO_HPP_
