#ifndef EVOALG_POLY_HPP_
#define EVOALG_POLY_HPP_

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "evoalg/error.hpp"
#include "evoalg/field.hpp"

namespace evoalg {

// Univariate polynomial over a field, lowest degree first. The leading
// coefficient is nonzero unless the polynomial is zero (empty).
class Poly {
 public:
  Poly() = default;

  Poly(Field f, std::vector<Fel> coeffs) : field_(std::move(f)), coeffs_(std::move(coeffs)) {
    for (const Fel& c : coeffs_) {
      if (!(c.field() == field_)) throw Error(Errc::mixed_fields, "coefficient outside the polynomial's field");
    }
    while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
  }

  static Poly from_ints(const Field& f, const std::vector<long long>& coeffs) {
    std::vector<Fel> cs;
    for (long long c : coeffs) cs.push_back(f.from_int(c));
    return Poly(f, std::move(cs));
  }

  // x^n - v
  static Poly pure_power(const Fel& v, unsigned n) {
    const Field& f = v.field();
    std::vector<Fel> cs(n + 1, f.zero());
    cs[0] = -v;
    cs[n] = f.one();
    return Poly(f, std::move(cs));
  }

  const Field& field() const noexcept { return field_; }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Fel>& coeffs() const noexcept { return coeffs_; }

  Fel operator()(const Fel& x) const {
    Fel v = x.field().zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * x + *it;
    return v;
  }

  Poly mapped(const Embedding& e) const {
    std::vector<Fel> cs;
    cs.reserve(coeffs_.size());
    for (const Fel& c : coeffs_) cs.push_back(e(c));
    return Poly(e.to(), std::move(cs));
  }

  // e.g. "x^3 - 1/18" over Q, "x^2 + x + 1" over GF(5).
  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Fel& c = coeffs_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      std::string mag = c.to_string();
      bool negative = false;
      if (field_.kind() == FieldKind::rationals && sgn(c.rational()) < 0) {
        negative = true;
        mag = (-c).to_string();
      }
      if (!out.empty()) out += negative ? " - " : " + ";
      else if (negative) out += "-";
      const std::string mono = i == 0 ? "" : i == 1 ? "x" : "x^" + std::to_string(i);
      if (mono.empty()) out += mag;
      else if (mag == "1") out += mono;
      else out += mag + mono;
    }
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Field field_;
  std::vector<Fel> coeffs_;
};

// Raised when a root is required over Q but the polynomial has no rational
// root; carries the polynomial whose root is missing.
class NeedsExtension : public Error {
 public:
  explicit NeedsExtension(Poly p)
      : Error(Errc::needs_extension, "no rational root of " + p.to_string()), poly_(std::move(p)) {}
  const Poly& poly() const noexcept { return poly_; }

 private:
  Poly poly_;
};

struct RootResult {
  Field field;          // F itself or a minimal extension containing a root
  Fel root;             // root in `field`
  Embedding embedding;  // F -> field
};

namespace detail {

inline mpz_class eval_int(const std::vector<mpz_class>& c, const mpz_class& y) {
  mpz_class v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
  return v;
}

// Integer zeros of f on [lo, hi], where f is strictly monotone on the
// interval.
inline void monotone_zeros(const std::vector<mpz_class>& c, mpz_class lo, mpz_class hi, std::set<mpz_class>& out) {
  if (lo > hi) return;
  mpz_class flo = eval_int(c, lo), fhi = eval_int(c, hi);
  if (flo == 0) out.insert(lo);
  if (fhi == 0) out.insert(hi);
  if (sgn(flo) * sgn(fhi) >= 0) return;
  while (hi - lo > 1) {
    mpz_class mid = lo + (hi - lo) / 2;
    mpz_class fm = eval_int(c, mid);
    if (fm == 0) {
      out.insert(mid);
      return;
    }
    if (sgn(fm) == sgn(flo)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

inline mpz_class floor_div(const mpz_class& a, long d) {
  mpz_class r;
  mpz_fdiv_q_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(d));
  return r;
}

inline mpz_class ceil_div(const mpz_class& a, long d) {
  mpz_class r;
  mpz_cdiv_q_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(d));
  return r;
}

// All integer roots of a monic integer polynomial of degree 1..3, found by
// bisection on the intervals between (integer brackets of) the critical
// points, inside the Cauchy bound.
inline std::vector<mpz_class> integer_roots(const std::vector<mpz_class>& c) {
  const std::size_t n = c.size() - 1;
  std::set<mpz_class> out;
  if (n == 1) return {mpz_class(-c[0])};
  mpz_class bound = 0;
  for (std::size_t i = 0; i < n; ++i) bound = std::max(bound, mpz_class(abs(c[i])));
  bound += 1;
  const mpz_class lo = -bound, hi = bound;
  auto probe = [&](mpz_class a, const mpz_class& b) {
    for (; a <= b; ++a) {
      if (a >= lo && a <= hi && eval_int(c, a) == 0) out.insert(a);
    }
  };
  if (n == 2) {
    // vertex at -c1/2
    const mpz_class v_lo = floor_div(mpz_class(-c[1]), 2), v_hi = ceil_div(mpz_class(-c[1]), 2);
    monotone_zeros(c, lo, std::min(v_lo, hi), out);
    monotone_zeros(c, std::max(v_hi, lo), hi, out);
  } else {
    // f' = 3y^2 + 2 c2 y + c1, discriminant 4 c2^2 - 12 c1
    const mpz_class disc = 4 * c[2] * c[2] - 12 * c[1];
    if (disc <= 0) {
      monotone_zeros(c, lo, hi, out);
    } else {
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
      const mpz_class m = -2 * c[2];
      const mpz_class l1 = floor_div(mpz_class(m - s - 1), 6), u1 = ceil_div(mpz_class(m - s), 6);
      const mpz_class l2 = floor_div(mpz_class(m + s), 6), u2 = ceil_div(mpz_class(m + s + 1), 6);
      monotone_zeros(c, lo, std::min(l1, hi), out);
      probe(l1, u1);
      monotone_zeros(c, std::max(u1, lo), std::min(l2, hi), out);
      probe(l2, u2);
      monotone_zeros(c, std::max(u2, lo), hi, out);
    }
  }
  return {out.begin(), out.end()};
}

// Rational roots of a polynomial over Q of degree 1..3, ascending by
// canonical order.
inline std::vector<Fel> rational_roots(const Poly& p) {
  const Field& f = p.field();
  const int n = p.degree();
  mpz_class den = 1;
  for (const Fel& c : p.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
  std::vector<mpz_class> a;
  for (const Fel& c : p.coeffs()) a.push_back(mpz_class(c.rational() * den));
  // y = a_n x makes the polynomial monic: coefficient of y^i is a_i a_n^(n-1-i).
  const mpz_class lead = a.back();
  std::vector<mpz_class> monic(a.size());
  for (int i = 0; i <= n; ++i) {
    mpz_class scale = 1;
    for (int j = 0; j < n - 1 - i; ++j) scale *= lead;
    monic[static_cast<std::size_t>(i)] = i == n ? mpz_class(1) : mpz_class(a[static_cast<std::size_t>(i)] * scale);
  }
  std::vector<Fel> roots;
  for (const mpz_class& y : integer_roots(monic)) roots.push_back(f.from_rational(mpq_class(y, lead)));
  std::sort(roots.begin(), roots.end(), FelLess{});
  return roots;
}

}  // namespace detail

// Root of p (degree 1..3) in F or in the smallest extension of F that holds
// one. Over Q only rational roots are found; std::nullopt means an
// extension would be needed.
inline std::optional<RootResult> try_find_root(const Poly& p) {
  const Field& f = p.field();
  if (p.degree() < 1) throw Error(Errc::constant_polynomial, "cannot find a root of " + p.to_string());
  if (p.degree() > 3) throw Error(Errc::degree_mismatch, "root search supports degree <= 3");
  if (f.kind() == FieldKind::rationals) {
    auto roots = detail::rational_roots(p);
    if (roots.empty()) return std::nullopt;
    return RootResult{f, roots.front(), Embedding::identity(f)};
  }
  if (f.size() > kMaxFieldSize) throw Error(Errc::budget_exceeded, "field too large for root scan");
  for (const Fel& x : f.elements()) {
    if (p(x).is_zero()) return RootResult{f, x, Embedding::identity(f)};
  }
  // No root in F: p has no linear factor, so being of degree 2 or 3 it is
  // irreducible and a root lives in the extension of that degree.
  const unsigned ext = static_cast<unsigned>(p.degree());
  Field big = Field::galois(f.characteristic(), f.degree() * ext);
  Embedding emb(f, big);
  const Poly lifted = p.mapped(emb);
  for (const Fel& x : big.elements()) {
    if (lifted(x).is_zero()) return RootResult{big, x, emb};
  }
  throw Error(Errc::reducible_modulus, "irreducible polynomial has no root in its splitting degree");
}

inline RootResult find_root(const Poly& p) {
  auto r = try_find_root(p);
  if (!r) throw NeedsExtension(p);
  return *std::move(r);
}

}  // namespace evoalg

#endif  // EVOALG_POLY_HPP_
