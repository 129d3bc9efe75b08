#ifndef EVOALG_CLASSIFY_HPP_
#define EVOALG_CLASSIFY_HPP_

// Classification of 2-dimensional evolution algebras up to isomorphism over
// the algebraic closure. Canonical representatives:
//
//   E1(b,c) = [[1,0,0,b],[c,0,0,1]], bc != 1, E1(b,c) ~ E1(c,b)
//   E2(b)   = [[1,0,0,b],[1,0,0,0]]
//   E3      = [[0,0,0,1],[1,0,0,0]]
//   E4      = [[1,0,0,1],[0,0,0,0]]
//   E5      = [[1,0,0,-1],[-1,0,0,1]]
//   E6      = [[0,0,0,1],[0,0,0,0]]
//
// plus E0 for the zero algebra. The key is always computed with field
// operations of the base field; only the witness may need a square or cube
// root, which finite fields supply through an extension and Q reports as a
// missing root.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"
#include "evoalg/poly.hpp"
#include "evoalg/tensor.hpp"

namespace evoalg {

enum class Label { E0, E1, E2, E3, E4, E5, E6 };

constexpr std::string_view label_name(Label l) noexcept {
  constexpr std::string_view names[] = {"E0", "E1", "E2", "E3", "E4", "E5", "E6"};
  return names[static_cast<int>(l)];
}

inline std::optional<Label> parse_label(std::string_view s) {
  for (int i = 0; i <= 6; ++i) {
    if (label_name(static_cast<Label>(i)) == s) return static_cast<Label>(i);
  }
  return std::nullopt;
}

struct CanonicalKey {
  Label label = Label::E0;
  Field field;
  std::vector<Fel> params;  // E1: pair sorted by canonical_cmp; E2: one element

  static CanonicalKey plain(Label l, const Field& f) { return {l, f, {}}; }

  static CanonicalKey e1(const Fel& b, const Fel& c) {
    if ((b * c).is_one()) throw Error(Errc::invalid_params, "E1(b,c) requires bc != 1");
    std::vector<Fel> ps{b, c};
    if (canonical_cmp(c, b) < 0) std::swap(ps[0], ps[1]);
    return {Label::E1, b.field(), std::move(ps)};
  }

  static CanonicalKey e2(const Fel& b) { return {Label::E2, b.field(), {b}}; }
};

inline bool same_key(const CanonicalKey& x, const CanonicalKey& y) {
  if (!(x.field == y.field)) throw Error(Errc::mixed_fields, "keys over different fields");
  if (x.label != y.label || x.params.size() != y.params.size()) return false;
  if (x.label == Label::E1) {
    return (x.params[0] == y.params[0] && x.params[1] == y.params[1]) ||
           (x.params[0] == y.params[1] && x.params[1] == y.params[0]);
  }
  return x.params == y.params;
}

// Label first, then parameters in canonical order.
struct KeyLess {
  bool operator()(const CanonicalKey& x, const CanonicalKey& y) const {
    if (x.label != y.label) return x.label < y.label;
    return std::lexicographical_compare(x.params.begin(), x.params.end(), y.params.begin(), y.params.end(),
                                        FelLess{});
  }
};

inline EvolutionMsc canonical_msc(const CanonicalKey& key) {
  const Field& f = key.field;
  const Fel z = f.zero(), o = f.one();
  auto need = [&](std::size_t n) {
    if (key.params.size() != n) throw Error(Errc::invalid_params, "wrong number of key parameters");
  };
  switch (key.label) {
    case Label::E0: need(0); return {z, z, z, z};
    case Label::E1:
      need(2);
      if ((key.params[0] * key.params[1]).is_one()) throw Error(Errc::invalid_params, "E1(b,c) requires bc != 1");
      return {o, key.params[0], key.params[1], o};
    case Label::E2: need(1); return {o, key.params[0], o, z};
    case Label::E3: need(0); return {z, o, o, z};
    case Label::E4: need(0); return {o, o, z, z};
    case Label::E5: need(0); return {o, -o, -o, o};
    case Label::E6: need(0); return {z, o, z, z};
  }
  throw Error(Errc::invalid_params, "unknown label");
}

struct ClassificationResult {
  CanonicalKey key;
  // transform(E, *witness) == canonical_msc(key), both taken in witness_field.
  std::optional<BasisChange> witness;
  Field witness_field;
  Embedding embedding;  // base field -> witness_field
  // Set over Q when the witness needs an irrational root of this polynomial.
  std::optional<Poly> needs_extension;
  std::vector<std::string> trace;
  std::optional<Fel> lambda;  // (c,d) = lambda (a,b) when the rows are proportional
};

namespace detail {

// Basis change taking [[1,0,0,0],[0,0,0,0]] to E2(0): f1 = e1 + e2, f2 = -e2.
inline Mat2 split_to_e2_zero(const Field& f) { return Mat2::from_ints(f, 1, 0, 1, -1); }

class WitnessBuilder {
 public:
  explicit WitnessBuilder(ClassificationResult& res, const Field& base) : res_(res) {
    res_.witness_field = base;
    res_.embedding = Embedding::identity(base);
  }

  // Witness with entries in the base field.
  void set(const Mat2& ginv) { res_.witness = BasisChange(ginv); }

  // A root of x^n - v, moving the witness field to an extension when needed.
  // Returns nothing (and records the polynomial) over Q without a rational root.
  std::optional<Fel> root(const Fel& v, unsigned n) {
    Poly p = Poly::pure_power(v, n);
    auto r = try_find_root(p);
    if (!r) {
      res_.needs_extension = std::move(p);
      return std::nullopt;
    }
    res_.witness_field = r->field;
    res_.embedding = r->embedding;
    return r->root;
  }

  Fel lift(const Fel& x) const { return res_.embedding(x); }
  Mat2 lift(const Mat2& m) const { return m.mapped(res_.embedding); }

  void set_lifted(const Mat2& ginv) { res_.witness = BasisChange(ginv); }

 private:
  ClassificationResult& res_;
};

}  // namespace detail

inline ClassificationResult classify(const EvolutionMsc& e) {
  const Field& f = e.field();
  const Fel zero = f.zero(), one = f.one();
  const Fel &a = e.a, &b = e.b, &c = e.c, &d = e.d;
  ClassificationResult res;
  detail::WitnessBuilder wb(res, f);
  const Mat2 swap = Mat2::swap(f);

  if (e.is_zero()) {
    res.key = CanonicalKey::plain(Label::E0, f);
    res.trace = {"zero"};
    wb.set(Mat2::identity(f));
    return res;
  }

  if (!det2x2(e).is_zero()) {
    if (!a.is_zero() && !d.is_zero()) {
      res.trace = {"1.1"};
      const Fel bp = a * b / (d * d), cp = c * d / (a * a);
      res.key = CanonicalKey::e1(bp, cp);
      Mat2 ginv = Mat2::diag(a.inv(), d.inv());
      if (!(res.key.params[0] == bp)) ginv = ginv * swap;
      wb.set(ginv);
    } else if (!a.is_zero()) {
      res.trace = {"1.2"};
      res.key = CanonicalKey::e2(b * c * c / (a * a * a));
      wb.set(Mat2::diag(a.inv(), c / (a * a)));
    } else if (!d.is_zero()) {
      // the swap gives [[d,0,0,c],[b,0,0,0]], then as in the a != 0, d = 0 case
      res.trace = {"1.3"};
      res.key = CanonicalKey::e2(c * b * b / (d * d * d));
      wb.set(swap * Mat2::diag(d.inv(), b / (d * d)));
    } else {
      res.trace = {"1.4"};
      res.key = CanonicalKey::plain(Label::E3, f);
      // diag(xi, c xi^2) works iff b c^2 xi^3 = 1
      if (auto xi = wb.root((b * c * c).inv(), 3)) {
        wb.set_lifted(Mat2::diag(*xi, wb.lift(c) * *xi * *xi));
      }
    }
    return res;
  }

  const bool row1_zero = a.is_zero() && b.is_zero();
  const bool row2_zero = c.is_zero() && d.is_zero();
  if (row1_zero || row2_zero) {
    // Reduce to [[x,0,0,y],[0,0,0,0]], swapping the basis if row 1 is zero.
    Mat2 prefix = Mat2::identity(f);
    Fel x = a, y = b;
    if (row1_zero) {
      res.trace.push_back("2.3");
      prefix = swap;
      x = d;
      y = c;
    }
    if (!x.is_zero() && !y.is_zero()) {
      res.trace.push_back("2.2.1");
      res.key = CanonicalKey::plain(Label::E4, f);
      if (auto eta = wb.root((x * y).inv(), 2)) {
        wb.set_lifted(wb.lift(prefix) * Mat2::diag(wb.lift(x.inv()), *eta));
      }
    } else if (!x.is_zero()) {
      res.trace.push_back("2.2.1");
      res.key = CanonicalKey::e2(zero);
      wb.set(prefix * Mat2::diag(x.inv(), one) * detail::split_to_e2_zero(f));
    } else {
      res.trace.push_back("2.2.2");
      res.key = CanonicalKey::plain(Label::E6, f);
      wb.set(prefix * Mat2::diag(y, one));
    }
    return res;
  }

  // Both rows nonzero and proportional: (c,d) = lambda (a,b).
  const Fel lambda = !a.is_zero() ? c / a : d / b;
  res.lambda = lambda;
  const Fel s = a + b * lambda * lambda;
  if (!s.is_zero()) {
    res.trace = {"2.1.1"};
    if (!a.is_zero() && !b.is_zero()) {
      res.key = CanonicalKey::plain(Label::E4, f);
      // xi2 = lambda xi1, a eta1 + b lambda eta2 = 0, alpha'1 = s xi1 = 1 and
      // alpha'4 = eta1^2 a s^2 / (b lambda^2) = 1.
      if (auto eta1 = wb.root(b * lambda * lambda / (a * s * s), 2)) {
        const Fel xi1 = wb.lift(s.inv());
        const Fel xi2 = wb.lift(lambda) * xi1;
        const Fel eta2 = -wb.lift(a / (b * lambda)) * *eta1;
        wb.set_lifted(Mat2::of(xi1, *eta1, xi2, eta2));
      }
    } else if (a.is_zero()) {
      res.key = CanonicalKey::e2(zero);
      const Fel bl = b * lambda;
      wb.set(Mat2::of((bl * lambda).inv(), one, bl.inv(), zero) * detail::split_to_e2_zero(f));
    } else {
      res.key = CanonicalKey::e2(zero);
      wb.set(Mat2::of(a.inv(), zero, lambda / a, one) * detail::split_to_e2_zero(f));
    }
  } else {
    res.trace = {"2.1.2"};
    res.key = CanonicalKey::plain(Label::E5, f);
    wb.set(Mat2::diag(a.inv(), (b * lambda).inv()));
  }
  return res;
}

// An isomorphism between E and F over a common extension of their base field.
struct IsoWitness {
  BasisChange witness;  // transform(E, witness) == F in `field`
  Field field;
  Embedding embedding;  // base -> field
};

// Witness that E and F are isomorphic, or nothing when their keys differ.
// Throws NeedsExtension over Q when a witness needs an irrational root.
inline std::optional<IsoWitness> iso_test(const EvolutionMsc& e, const EvolutionMsc& f) {
  require_same_field(e.field(), f.field());
  const ClassificationResult re = classify(e), rf = classify(f);
  if (!same_key(re.key, rf.key)) return std::nullopt;
  if (!re.witness) throw NeedsExtension(*re.needs_extension);
  if (!rf.witness) throw NeedsExtension(*rf.needs_extension);

  const Field &fe = re.witness_field, &ff = rf.witness_field;
  Field common = fe;
  if (fe.is_finite()) {
    const unsigned n1 = fe.degree(), n2 = ff.degree();
    if (n1 % n2 == 0) common = fe;
    else if (n2 % n1 == 0) common = ff;
    else common = Field::galois(fe.characteristic(), std::lcm(n1, n2));
  }
  // Both witness fields are lifted compatibly with the default embedding
  // of the base field, so the result reads E and F the usual way.
  const Embedding base_to_c(e.field(), common);
  const Embedding e_to_c = Embedding::extending(fe, common, re.embedding, base_to_c);
  const Embedding f_to_c = Embedding::extending(ff, common, rf.embedding, base_to_c);
  const Mat2 ginv = re.witness->ginv().mapped(e_to_c) * rf.witness->ginv().mapped(f_to_c).inverse();
  return IsoWitness{BasisChange(ginv), common, base_to_c};
}

// Labels of the alternative list of complex 2-dimensional evolution
// algebras, where E5 carries (a,b) and E6 carries c.
enum class AltLabel { E1, E2, E3, E4, E5, E6 };

inline std::optional<AltLabel> parse_alt_label(std::string_view s) {
  if (s == "E1") return AltLabel::E1;
  if (s == "E2") return AltLabel::E2;
  if (s == "E3") return AltLabel::E3;
  if (s == "E4") return AltLabel::E4;
  if (s == "E5" || s == "E5ab") return AltLabel::E5;
  if (s == "E6" || s == "E6c") return AltLabel::E6;
  return std::nullopt;
}

inline std::size_t alt_param_count(AltLabel l) {
  return l == AltLabel::E5 ? 2 : l == AltLabel::E6 ? 1 : 0;
}

// MSC of an algebra in the alternative list.
inline EvolutionMsc alt_msc(AltLabel l, const std::vector<Fel>& params, const Field& f) {
  if (params.size() != alt_param_count(l)) throw Error(Errc::invalid_params, "wrong number of parameters");
  const Fel z = f.zero(), o = f.one();
  switch (l) {
    case AltLabel::E1: return {o, z, z, z};
    case AltLabel::E2: return {o, o, z, z};
    case AltLabel::E3: return {o, -o, o, -o};
    case AltLabel::E4: return {z, z, o, z};
    case AltLabel::E5: return {o, params[1], params[0], o};
    case AltLabel::E6: return {z, o, o, params[0]};
  }
  throw Error(Errc::invalid_params, "unknown label");
}

// Canonical key of an algebra from the alternative list. E6 with c = 0 is
// the algebra E3, which that list does not contain.
inline CanonicalKey alt_to_key(AltLabel l, const std::vector<Fel>& params, const Field& f) {
  if (params.size() != alt_param_count(l)) throw Error(Errc::invalid_params, "wrong number of parameters");
  for (const Fel& p : params) require_same_field(p.field(), f);
  switch (l) {
    case AltLabel::E1: return CanonicalKey::e2(f.zero());
    case AltLabel::E2: return CanonicalKey::plain(Label::E4, f);
    case AltLabel::E3: return CanonicalKey::plain(Label::E5, f);
    case AltLabel::E4: return CanonicalKey::plain(Label::E6, f);
    case AltLabel::E5: return CanonicalKey::e1(params[0], params[1]);
    case AltLabel::E6:
      if (params[0].is_zero()) return CanonicalKey::plain(Label::E3, f);
      return CanonicalKey::e2(params[0].pow(-3));
  }
  throw Error(Errc::invalid_params, "unknown label");
}

}  // namespace evoalg

#endif  // EVOALG_CLASSIFY_HPP_
