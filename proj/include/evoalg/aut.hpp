#ifndef EVOALG_AUT_HPP_
#define EVOALG_AUT_HPP_

// Automorphism groups of the canonical algebras: g invertible with
// g E = E (g (x) g).

#include <algorithm>
#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "evoalg/classify.hpp"
#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"
#include "evoalg/poly.hpp"
#include "evoalg/tensor.hpp"

namespace evoalg {

// Polynomial in the family parameters t and s with integer coefficients.
class MPoly {
 public:
  struct Term {
    long long coef;
    unsigned t_deg;
    unsigned s_deg;
  };

  MPoly() = default;
  MPoly(std::initializer_list<Term> terms) : terms_(terms) {}

  static MPoly constant(long long c) { return c == 0 ? MPoly{} : MPoly{{c, 0, 0}}; }
  static MPoly t() { return {{1, 1, 0}}; }
  static MPoly s() { return {{1, 0, 1}}; }

  Fel operator()(const Field& f, const Fel& t, const Fel& s) const {
    Fel v = f.zero();
    for (const Term& term : terms_) v += f.from_int(term.coef) * t.pow(term.t_deg) * s.pow(term.s_deg);
    return v;
  }

  bool uses_s() const {
    for (const Term& term : terms_) {
      if (term.s_deg > 0) return true;
    }
    return false;
  }

  // Terms in the order given, e.g. "1-t", "t^2", "s", "0".
  std::string to_string() const {
    std::string out;
    for (const Term& term : terms_) {
      if (term.coef == 0) continue;
      std::string mono;
      auto var = [&](const char* name, unsigned deg) {
        if (deg == 0) return;
        if (!mono.empty()) mono += "*";
        mono += name;
        if (deg > 1) mono += "^" + std::to_string(deg);
      };
      var("t", term.t_deg);
      var("s", term.s_deg);
      const long long mag = term.coef < 0 ? -term.coef : term.coef;
      std::string body = mono.empty() ? std::to_string(mag) : mag == 1 ? mono : std::to_string(mag) + "*" + mono;
      if (out.empty()) out = (term.coef < 0 ? "-" : "") + body;
      else out += (term.coef < 0 ? "-" : "+") + body;
    }
    return out.empty() ? "0" : out;
  }

 private:
  std::vector<Term> terms_;
};

struct Exclusion {
  MPoly poly;        // the family requires poly(t, s) != 0
  std::string text;  // e.g. "t != 1/2"
};

struct ParamFamily {
  std::array<MPoly, 4> entries;  // row-major
  std::vector<Exclusion> excluded;
  unsigned param_count = 1;

  bool admissible(const Field& f, const Fel& t, const Fel& s) const {
    for (const Exclusion& e : excluded) {
      if (e.poly(f, t, s).is_zero()) return false;
    }
    return true;
  }

  Mat2 at(const Field& f, const Fel& t, const Fel& s) const {
    return Mat2::of(entries[0](f, t, s), entries[1](f, t, s), entries[2](f, t, s), entries[3](f, t, s));
  }
};

enum class CharRegime { not2, char2 };

constexpr std::string_view regime_name(CharRegime r) { return r == CharRegime::char2 ? "char2" : "not2"; }

struct AutDescription {
  CanonicalKey key;
  CharRegime regime = CharRegime::not2;
  // Finite elements live in finite_field, which is the base field or the
  // extension holding a root of x^2 + x + 1.
  std::vector<Mat2> finite;
  Field finite_field;
  Embedding embedding;  // base -> finite_field
  std::vector<ParamFamily> families;
  // Over Q when x^2 + x + 1 has no rational root; the elements needing it
  // are then left out.
  std::optional<Poly> needs_extension;
};

inline bool aut_check(const Msc& e, const Mat2& g) {
  require_same_field(e.field(), g.field());
  if (g.det().is_zero()) return false;
  return g * e == e * kron_square(g);
}

inline bool aut_check(const EvolutionMsc& e, const Mat2& g) { return aut_check(e.to_msc(), g); }

inline AutDescription aut_closed_form(const CanonicalKey& key) {
  const Field& f = key.field;
  AutDescription d;
  d.key = key;
  d.regime = f.characteristic() == 2 ? CharRegime::char2 : CharRegime::not2;
  d.finite_field = f;
  d.embedding = Embedding::identity(f);
  const Mat2 id = Mat2::identity(f), swap = Mat2::swap(f);
  const MPoly t = MPoly::t(), s = MPoly::s(), zero, one = MPoly::constant(1);
  const MPoly one_minus_t{{1, 0, 0}, {-1, 1, 0}};
  const MPoly t2{{1, 2, 0}};

  switch (key.label) {
    case Label::E0: throw Error(Errc::unsupported_key, "the zero algebra has no closed form");
    case Label::E1:
      if (key.params.size() != 2 || (key.params[0] * key.params[1]).is_one()) {
        throw Error(Errc::invalid_params, "E1(b,c) requires bc != 1");
      }
      d.finite = {id};
      if (key.params[0] == key.params[1]) d.finite.push_back(swap);
      break;
    case Label::E2:
      if (key.params.size() != 1) throw Error(Errc::invalid_params, "E2 takes one parameter");
      if (!key.params[0].is_zero()) {
        d.finite = {id};
      } else {
        d.families.push_back({{one, zero, t, one_minus_t}, {{MPoly{{1, 0, 0}, {-1, 1, 0}}, "t != 1"}}, 1});
      }
      break;
    case Label::E3: {
      d.finite = {id, swap};
      auto r = try_find_root(Poly::from_ints(f, {1, 1, 1}));
      if (!r) {
        d.needs_extension = Poly::from_ints(f, {1, 1, 1});
        break;
      }
      d.finite_field = r->field;
      d.embedding = r->embedding;
      const Field& w = r->field;
      const Fel& x = r->root;
      const Fel z = w.zero(), x2 = x * x;
      std::vector<Mat2> all = {Mat2::identity(w), Mat2::swap(w), Mat2::diag(x, x2), Mat2::diag(x2, x),
                               Mat2::of(z, x, x2, z),  Mat2::of(z, x2, x, z)};
      // In characteristic 3 the root is 1 and the list collapses.
      d.finite.clear();
      for (const Mat2& m : all) {
        if (std::find(d.finite.begin(), d.finite.end(), m) == d.finite.end()) d.finite.push_back(m);
      }
      break;
    }
    case Label::E4:
      d.finite = {id};
      if (d.regime == CharRegime::not2) d.finite.push_back(Mat2::diag(f.one(), -f.one()));
      break;
    case Label::E5: {
      ParamFamily fam{{t, one_minus_t, one_minus_t, t}, {}, 1};
      if (d.regime == CharRegime::not2) fam.excluded.push_back({MPoly{{2, 1, 0}, {-1, 0, 0}}, "t != 1/2"});
      d.families.push_back(std::move(fam));
      break;
    }
    case Label::E6:
      d.families.push_back({{t2, s, zero, t}, {{t, "t != 0"}}, 2});
      break;
  }
  return d;
}

namespace detail {

inline std::optional<Mat2> restrict_to(const Mat2& m, const Embedding& emb) {
  if (emb.is_identity()) return m;
  Mat2 out;
  for (std::size_t i = 0; i < 4; ++i) {
    auto pre = emb.preimage(m.m[i]);
    if (!pre) return std::nullopt;
    out.m[i] = *pre;
  }
  return out;
}

}  // namespace detail

// All members over the (finite) base field, sorted by Mat2Less.
inline std::vector<Mat2> aut_instantiate(const AutDescription& d) {
  const Field& f = d.key.field;
  if (!f.is_finite()) throw Error(Errc::infinite_field, "cannot instantiate over Q");
  std::set<Mat2, Mat2Less> out;
  for (const Mat2& m : d.finite) {
    if (auto r = detail::restrict_to(m, d.embedding)) out.insert(*r);
  }
  const auto elems = f.elements();
  for (const ParamFamily& fam : d.families) {
    for (const Fel& t : elems) {
      if (fam.param_count == 1) {
        if (fam.admissible(f, t, f.zero())) out.insert(fam.at(f, t, f.zero()));
        continue;
      }
      for (const Fel& s : elems) {
        if (fam.admissible(f, t, s)) out.insert(fam.at(f, t, s));
      }
    }
  }
  return {out.begin(), out.end()};
}

// Group order over the base field; unknown for families over Q.
inline std::optional<std::uint64_t> aut_order(const AutDescription& d) {
  if (d.key.field.is_finite()) return aut_instantiate(d).size();
  if (!d.families.empty()) return std::nullopt;
  return d.finite.size();
}

// Aut(E) over a finite base field for any evolution MSC: Aut of the
// canonical form over the witness field, conjugated back through the
// witness and restricted to the base field.
inline std::vector<Mat2> aut_enumerate(const EvolutionMsc& e) {
  const Field& f = e.field();
  if (!f.is_finite()) throw Error(Errc::infinite_field, "cannot enumerate over Q");
  const ClassificationResult cls = classify(e);
  std::set<Mat2, Mat2Less> out;
  if (cls.key.label == Label::E0) {
    const auto elems = f.elements();
    for (const Fel& a : elems)
      for (const Fel& b : elems)
        for (const Fel& c : elems)
          for (const Fel& x : elems) {
            Mat2 m = Mat2::of(a, b, c, x);
            if (!m.det().is_zero()) out.insert(m);
          }
    return {out.begin(), out.end()};
  }
  CanonicalKey lifted{cls.key.label, cls.witness_field, {}};
  for (const Fel& p : cls.key.params) lifted.params.push_back(cls.embedding(p));
  const Mat2& ginv = cls.witness->ginv();
  const Mat2 g = ginv.inverse();
  for (const Mat2& h : aut_instantiate(aut_closed_form(lifted))) {
    if (auto m = detail::restrict_to(ginv * h * g, cls.embedding)) out.insert(*m);
  }
  return {out.begin(), out.end()};
}

}  // namespace evoalg

#endif  // EVOALG_AUT_HPP_
