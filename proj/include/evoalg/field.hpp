#ifndef EVOALG_FIELD_HPP_
#define EVOALG_FIELD_HPP_

// Exact scalar fields: the rationals (GMP-backed), prime fields GF(p) and
// extension fields GF(p^k) = GF(p)[x]/(f) with f monic irreducible.
//
// A finite-field element is identified by its integer code
//     code = c_0 + c_1 p + ... + c_{k-1} p^{k-1}
// where (c_0, ..., c_{k-1}) is its coefficient vector in the power basis of
// x. The code order is the canonical total order of the field, so
// elements() of GF(4) = GF(2)[x]/(x^2+x+1) is [0, 1, x, x+1].

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "evoalg/error.hpp"

namespace evoalg {

enum class FieldKind { rationals, prime, extension };

// Largest finite field for which log/antilog tables are built.
inline constexpr std::uint64_t kMaxFieldSize = std::uint64_t{1} << 22;

namespace detail {

// Polynomial over GF(p), lowest degree first, no trailing zeros.
using ModPoly = std::vector<std::uint32_t>;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint32_t inv_mod(std::uint64_t a, std::uint32_t p) {
  std::int64_t r0 = p, r1 = static_cast<std::int64_t>(a % p);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::int64_t r2 = r0 - qt * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t s2 = s0 - qt * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw Error(Errc::division_by_zero, "element is not invertible");
  s0 %= static_cast<std::int64_t>(p);
  if (s0 < 0) s0 += p;
  return static_cast<std::uint32_t>(s0);
}

inline void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline int degree(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

inline ModPoly poly_rem(ModPoly a, const ModPoly& m, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t factor = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::uint64_t sub = factor * m[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

// Digits of `code` in base p, padded to `len`.
inline ModPoly digits(std::uint64_t code, std::uint32_t p, unsigned len) {
  ModPoly out(len, 0);
  for (unsigned i = 0; i < len; ++i) {
    out[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return out;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Irreducibility by trial division with every monic polynomial of degree
// 1..deg/2. For degrees 2 and 3 this is the exhaustive root check.
inline bool is_irreducible(ModPoly f, std::uint32_t p) {
  trim(f);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  for (int d = 1; d <= n / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<unsigned>(d));
    for (std::uint64_t code = 0; code < count; ++code) {
      ModPoly g = digits(code, p, static_cast<unsigned>(d));
      g.push_back(1);
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

// First monic irreducible polynomial of degree n in code order of its
// non-leading coefficients.
inline ModPoly first_irreducible(std::uint32_t p, unsigned n) {
  const std::uint64_t count = ipow(p, n);
  for (std::uint64_t code = 0; code < count; ++code) {
    ModPoly f = digits(code, p, n);
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
  }
  throw Error(Errc::reducible_modulus, "no irreducible polynomial found");
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

struct FieldImpl {
  FieldKind kind = FieldKind::rationals;
  std::uint32_t p = 0;
  unsigned k = 1;
  std::uint32_t q = 0;
  ModPoly modulus;                 // extension only: monic, size k + 1
  std::vector<std::uint32_t> pw;   // p^i, i <= k
  std::vector<std::uint32_t> exp;  // gen^i for i < 2(q-1)
  std::vector<std::uint32_t> log;  // log[code], log[0] unused

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (kind == FieldKind::prime) {
      const std::uint32_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (p == 2) return a ^ b;
    std::uint32_t r = 0;
    for (unsigned i = 0; i < k; ++i) {
      const std::uint32_t s = a % p + b % p;
      r += (s >= p ? s - p : s) * pw[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (kind == FieldKind::prime) return a == 0 ? 0 : p - a;
    if (p == 2) return a;
    std::uint32_t r = 0;
    for (unsigned i = 0; i < k; ++i) {
      const std::uint32_t d = a % p;
      r += (d == 0 ? 0 : p - d) * pw[i];
      a /= p;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (kind == FieldKind::prime) {
      return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
    }
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw Error(Errc::division_by_zero, "inverse of zero");
    if (kind == FieldKind::prime) return inv_mod(a, p);
    return exp[(q - 1 - log[a]) % (q - 1)];
  }

  // Schoolbook product modulo the modulus; only used to build the tables.
  std::uint32_t mul_slow(std::uint32_t a, std::uint32_t b) const {
    const ModPoly da = digits(a, p, k), db = digits(b, p, k);
    ModPoly prod(2 * k, 0);
    for (unsigned i = 0; i < k; ++i) {
      for (unsigned j = 0; j < k; ++j) {
        prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{da[i]} * db[j]) % p);
      }
    }
    const ModPoly r = poly_rem(prod, modulus, p);
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < r.size(); ++i) code += r[i] * pw[i];
    return code;
  }

  std::uint32_t pow_slow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1, b = a;
    while (e > 0) {
      if (e & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
      e >>= 1;
    }
    return r;
  }

  void build_tables() {
    const std::uint64_t order = q - 1;
    const auto factors = prime_factors(order);
    std::uint32_t gen = 0;
    for (std::uint32_t cand = 2; cand < q; ++cand) {
      bool primitive = true;
      for (auto r : factors) {
        if (pow_slow(cand, order / r) == 1) {
          primitive = false;
          break;
        }
      }
      if (primitive) {
        gen = cand;
        break;
      }
    }
    exp.assign(2 * order, 0);
    log.assign(q, 0);
    std::uint32_t cur = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      exp[i] = cur;
      exp[i + order] = cur;
      log[cur] = static_cast<std::uint32_t>(i);
      cur = mul_slow(cur, gen);
    }
  }

  bool same_as(const FieldImpl& o) const {
    return kind == o.kind && p == o.p && k == o.k && modulus == o.modulus;
  }
};

}  // namespace detail

class Fel;

// Handle to an immutable field context. Copies share the same context.
class Field {
 public:
  Field() = default;

  static Field rationals() {
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->kind = FieldKind::rationals;
    return Field(std::move(impl));
  }

  static Field prime(std::uint64_t p) {
    if (!detail::is_prime(p) || p >= (std::uint64_t{1} << 31)) {
      throw Error(Errc::non_prime_modulus, std::to_string(p) + " is not a supported prime");
    }
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->kind = FieldKind::prime;
    impl->p = static_cast<std::uint32_t>(p);
    impl->k = 1;
    impl->q = static_cast<std::uint32_t>(p);
    impl->pw = {1, static_cast<std::uint32_t>(p)};
    return Field(std::move(impl));
  }

  // GF(p)[x]/(modulus); `modulus` lists k + 1 coefficients, constant first.
  static Field extension(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus) {
    if (!detail::is_prime(p) || p >= (std::uint64_t{1} << 31)) {
      throw Error(Errc::non_prime_modulus, std::to_string(p) + " is not a supported prime");
    }
    if (k == 0) throw Error(Errc::degree_mismatch, "extension degree must be at least 1");
    if (k == 1 && modulus.empty()) return prime(p);
    if (modulus.size() != k + 1 || modulus.back() != 1) {
      throw Error(Errc::degree_mismatch, "modulus must be monic of degree " + std::to_string(k));
    }
    for (auto c : modulus) {
      if (c >= p) throw Error(Errc::degree_mismatch, "modulus coefficient out of range");
    }
    if (!detail::is_irreducible(modulus, static_cast<std::uint32_t>(p))) {
      throw Error(Errc::reducible_modulus, "modulus is reducible over GF(" + std::to_string(p) + ")");
    }
    if (k == 1) return prime(p);
    const std::uint64_t q = detail::ipow(p, k);
    if (q > kMaxFieldSize || detail::ipow(p, k - 1) >= kMaxFieldSize) {
      throw Error(Errc::budget_exceeded, "field of size " + std::to_string(p) + "^" + std::to_string(k) +
                                             " is too large");
    }
    auto impl = std::make_shared<detail::FieldImpl>();
    impl->kind = FieldKind::extension;
    impl->p = static_cast<std::uint32_t>(p);
    impl->k = k;
    impl->q = static_cast<std::uint32_t>(q);
    impl->modulus = std::move(modulus);
    impl->pw.resize(k + 1);
    impl->pw[0] = 1;
    for (unsigned i = 1; i <= k; ++i) impl->pw[i] = impl->pw[i - 1] * impl->p;
    impl->build_tables();
    return Field(std::move(impl));
  }

  // GF(p^k) with the first irreducible modulus in code order. Contexts are
  // memoized since extension towers ask for the same fields repeatedly.
  static Field galois(std::uint64_t p, unsigned k) {
    if (k == 1) return prime(p);
    if (!detail::is_prime(p)) {
      throw Error(Errc::non_prime_modulus, std::to_string(p) + " is not prime");
    }
    if (detail::ipow(p, k) > kMaxFieldSize) {
      throw Error(Errc::budget_exceeded, "field of size " + std::to_string(p) + "^" + std::to_string(k) +
                                             " is too large");
    }
    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, unsigned>, Field> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    Field f = extension(p, k, detail::first_irreducible(static_cast<std::uint32_t>(p), k));
    cache.emplace(std::make_pair(p, k), f);
    return f;
  }

  bool valid() const noexcept { return impl_ != nullptr; }
  FieldKind kind() const { return impl_->kind; }
  std::uint32_t characteristic() const { return impl_->p; }
  // Degree over the prime field (1 for the rationals and for GF(p)).
  unsigned degree() const { return impl_->k; }
  bool is_finite() const { return impl_->kind != FieldKind::rationals; }
  // Number of elements, 0 for the rationals.
  std::uint64_t size() const { return impl_->q; }
  const std::vector<std::uint32_t>& modulus() const { return impl_->modulus; }
  const detail::FieldImpl& impl() const { return *impl_; }

  Fel zero() const;
  Fel one() const;
  Fel from_int(long long v) const;
  Fel from_rational(const mpq_class& v) const;
  Fel from_code(std::uint64_t code) const;
  Fel from_coeffs(const std::vector<long long>& coeffs) const;
  // The class of x in GF(p)[x]/(f); throws for other kinds.
  Fel generator() const;

  std::vector<Fel> elements() const;

  // "Q", "GF(7)" or "GF(2^2)".
  std::string name() const {
    switch (impl_->kind) {
      case FieldKind::rationals: return "Q";
      case FieldKind::prime: return "GF(" + std::to_string(impl_->p) + ")";
      case FieldKind::extension:
        return "GF(" + std::to_string(impl_->p) + "^" + std::to_string(impl_->k) + ")";
    }
    return "?";
  }

  friend bool operator==(const Field& a, const Field& b) {
    if (a.impl_ == b.impl_) return true;
    if (!a.impl_ || !b.impl_) return false;
    return a.impl_->same_as(*b.impl_);
  }

 private:
  explicit Field(std::shared_ptr<const detail::FieldImpl> impl) : impl_(std::move(impl)) {}

  std::shared_ptr<const detail::FieldImpl> impl_;
};

// Field element. Over the rationals the value is a normalized GMP rational;
// over finite fields it is the element code.
class Fel {
 public:
  Fel() = default;

  const Field& field() const noexcept { return field_; }

  bool is_zero() const {
    if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 0;
    return sgn(std::get<mpq_class>(value_)) == 0;
  }

  bool is_one() const {
    if (auto c = std::get_if<std::uint32_t>(&value_)) return *c == 1;
    return std::get<mpq_class>(value_) == 1;
  }

  std::uint32_t code() const {
    if (auto c = std::get_if<std::uint32_t>(&value_)) return *c;
    throw Error(Errc::infinite_field, "rational elements have no code");
  }

  const mpq_class& rational() const {
    if (auto r = std::get_if<mpq_class>(&value_)) return *r;
    throw Error(Errc::mixed_fields, "element is not rational");
  }

  // Coefficient vector (c_0, ..., c_{k-1}); finite fields only.
  std::vector<std::uint32_t> coeffs() const {
    const auto& f = field_.impl();
    return detail::digits(code(), f.p, f.k);
  }

  Fel operator-() const {
    if (auto c = std::get_if<std::uint32_t>(&value_)) return Fel(field_, field_.impl().neg(*c));
    return Fel(field_, mpq_class(-std::get<mpq_class>(value_)));
  }

  Fel inv() const {
    if (is_zero()) throw Error(Errc::division_by_zero, "inverse of zero in " + field_.name());
    if (auto c = std::get_if<std::uint32_t>(&value_)) return Fel(field_, field_.impl().inv(*c));
    return Fel(field_, mpq_class(1 / std::get<mpq_class>(value_)));
  }

  Fel pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    Fel result = field_.one();
    Fel base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  Fel& operator+=(const Fel& o) {
    check(o);
    if (auto c = std::get_if<std::uint32_t>(&value_)) {
      *c = field_.impl().add(*c, std::get<std::uint32_t>(o.value_));
    } else {
      std::get<mpq_class>(value_) += std::get<mpq_class>(o.value_);
    }
    return *this;
  }

  Fel& operator-=(const Fel& o) {
    check(o);
    if (auto c = std::get_if<std::uint32_t>(&value_)) {
      *c = field_.impl().sub(*c, std::get<std::uint32_t>(o.value_));
    } else {
      std::get<mpq_class>(value_) -= std::get<mpq_class>(o.value_);
    }
    return *this;
  }

  Fel& operator*=(const Fel& o) {
    check(o);
    if (auto c = std::get_if<std::uint32_t>(&value_)) {
      *c = field_.impl().mul(*c, std::get<std::uint32_t>(o.value_));
    } else {
      std::get<mpq_class>(value_) *= std::get<mpq_class>(o.value_);
    }
    return *this;
  }

  Fel& operator/=(const Fel& o) {
    check(o);
    if (o.is_zero()) throw Error(Errc::division_by_zero, "division by zero in " + field_.name());
    if (auto c = std::get_if<std::uint32_t>(&value_)) {
      const auto& f = field_.impl();
      *c = f.mul(*c, f.inv(std::get<std::uint32_t>(o.value_)));
    } else {
      std::get<mpq_class>(value_) /= std::get<mpq_class>(o.value_);
    }
    return *this;
  }

  friend Fel operator+(Fel a, const Fel& b) { return a += b; }
  friend Fel operator-(Fel a, const Fel& b) { return a -= b; }
  friend Fel operator*(Fel a, const Fel& b) { return a *= b; }
  friend Fel operator/(Fel a, const Fel& b) { return a /= b; }

  // Elements of different fields never compare equal.
  friend bool operator==(const Fel& a, const Fel& b) {
    if (!(a.field_ == b.field_)) return false;
    return a.value_ == b.value_;
  }

  // Compact text: "n/d" or "n" over Q; the residue over GF(p);
  // "[c0,c1,...]" over GF(p^k).
  std::string to_string() const {
    if (auto r = std::get_if<mpq_class>(&value_)) return r->get_str();
    if (field_.degree() == 1) return std::to_string(code());
    std::string out = "[";
    const auto cs = coeffs();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(cs[i]);
    }
    return out + "]";
  }

 private:
  friend class Field;
  Fel(Field f, std::uint32_t code) : field_(std::move(f)), value_(code) {}
  Fel(Field f, mpq_class r) : field_(std::move(f)), value_(std::move(r)) {}

  void check(const Fel& o) const {
    if (!field_.valid() || !(field_ == o.field_)) {
      throw Error(Errc::mixed_fields, "operands belong to different fields");
    }
  }

  Field field_;
  std::variant<std::uint32_t, mpq_class> value_;
};

inline Fel Field::zero() const {
  if (impl_->kind == FieldKind::rationals) return Fel(*this, mpq_class(0));
  return Fel(*this, std::uint32_t{0});
}

inline Fel Field::one() const {
  if (impl_->kind == FieldKind::rationals) return Fel(*this, mpq_class(1));
  return Fel(*this, std::uint32_t{1});
}

inline Fel Field::from_int(long long v) const {
  if (impl_->kind == FieldKind::rationals) return Fel(*this, mpq_class(mpz_class(std::to_string(v))));
  long long r = v % static_cast<long long>(impl_->p);
  if (r < 0) r += impl_->p;
  return Fel(*this, static_cast<std::uint32_t>(r));
}

inline Fel Field::from_rational(const mpq_class& v) const {
  if (impl_->kind == FieldKind::rationals) {
    mpq_class c(v);
    c.canonicalize();
    return Fel(*this, std::move(c));
  }
  auto reduce = [this](const mpz_class& z) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), impl_->p);
    return Fel(*this, static_cast<std::uint32_t>(r.get_ui()));
  };
  return reduce(v.get_num()) / reduce(v.get_den());
}

inline Fel Field::from_code(std::uint64_t code) const {
  if (impl_->kind == FieldKind::rationals) throw Error(Errc::infinite_field, "Q has no element codes");
  if (code >= impl_->q) throw Error(Errc::invalid_params, "element code out of range");
  return Fel(*this, static_cast<std::uint32_t>(code));
}

inline Fel Field::from_coeffs(const std::vector<long long>& coeffs) const {
  if (impl_->kind == FieldKind::rationals) {
    if (coeffs.size() != 1) throw Error(Errc::degree_mismatch, "Q element takes one coefficient");
    return from_int(coeffs[0]);
  }
  if (coeffs.size() != impl_->k) {
    throw Error(Errc::degree_mismatch, "expected " + std::to_string(impl_->k) + " coefficients");
  }
  std::uint32_t code = 0;
  for (unsigned i = 0; i < impl_->k; ++i) {
    long long c = coeffs[i] % static_cast<long long>(impl_->p);
    if (c < 0) c += impl_->p;
    code += static_cast<std::uint32_t>(c) * impl_->pw[i];
  }
  return Fel(*this, code);
}

inline Fel Field::generator() const {
  if (impl_->kind != FieldKind::extension) throw Error(Errc::invalid_params, name() + " has no generator x");
  return Fel(*this, impl_->p);
}

inline std::vector<Fel> Field::elements() const {
  if (impl_->kind == FieldKind::rationals) throw Error(Errc::infinite_field, "cannot enumerate Q");
  std::vector<Fel> out;
  out.reserve(impl_->q);
  for (std::uint32_t c = 0; c < impl_->q; ++c) out.push_back(Fel(*this, c));
  return out;
}

// Total order used for deterministic output: (numerator, denominator)
// lexicographic over Q, element code over finite fields.
inline std::strong_ordering canonical_cmp(const Fel& a, const Fel& b) {
  if (!(a.field() == b.field())) throw Error(Errc::mixed_fields, "cannot compare elements of different fields");
  if (a.field().kind() == FieldKind::rationals) {
    const mpq_class& x = a.rational();
    const mpq_class& y = b.rational();
    int c = cmp(x.get_num(), y.get_num());
    if (c == 0) c = cmp(x.get_den(), y.get_den());
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }
  return a.code() <=> b.code();
}

struct FelLess {
  bool operator()(const Fel& a, const Fel& b) const { return canonical_cmp(a, b) < 0; }
};

// Ring embedding of one field into another of the same characteristic,
// determined by the image of x (a root of the source modulus in the target).
class Embedding {
 public:
  Embedding() = default;

  // Identity when the fields coincide, otherwise the embedding sending x to
  // the first root of the source modulus in the target.
  Embedding(Field from, Field to) : from_(std::move(from)), to_(std::move(to)) {
    check_compatible();
    if (from_.kind() != FieldKind::extension) return;
    if (from_ == to_) {
      root_ = to_.generator();
      return;
    }
    const auto roots = modulus_roots();
    if (roots.empty()) throw Error(Errc::mixed_fields, "no root of the source modulus in " + to_.name());
    root_ = roots.front();
  }

  // The embedding from -> to whose restriction along `sub_from` agrees with
  // `sub_to`, i.e. (*this)(sub_from(y)) == sub_to(y) for every y of the
  // common subfield.
  static Embedding extending(Field from, Field to, const Embedding& sub_from, const Embedding& sub_to) {
    if (!(sub_from.from() == sub_to.from()) || !(sub_from.to() == from) || !(sub_to.to() == to)) {
      throw Error(Errc::mixed_fields, "inconsistent embedding diagram");
    }
    Embedding e;
    e.from_ = std::move(from);
    e.to_ = std::move(to);
    e.check_compatible();
    if (e.from_.kind() != FieldKind::extension) return e;
    const Field& sub = sub_from.from();
    const bool trivial_sub = sub.kind() != FieldKind::extension;
    std::vector<Fel> roots = e.modulus_roots();
    if (e.from_ == e.to_) roots.insert(roots.begin(), e.to_.generator());  // prefer the identity
    for (const Fel& r : roots) {
      e.root_ = r;
      if (trivial_sub || e(sub_from(sub.generator())) == sub_to(sub.generator())) return e;
    }
    throw Error(Errc::mixed_fields, "no compatible embedding exists");
  }

  static Embedding identity(const Field& f) { return Embedding(f, f); }

  const Field& from() const noexcept { return from_; }
  const Field& to() const noexcept { return to_; }
  bool is_identity() const {
    return from_ == to_ && (!root_ || *root_ == to_.generator());
  }

  Fel operator()(const Fel& x) const {
    if (!(x.field() == from_)) throw Error(Errc::mixed_fields, "element is not in the source field");
    if (from_.kind() == FieldKind::rationals) return x;
    if (!root_) return to_.from_code(x.code());
    const auto cs = x.coeffs();
    Fel v = to_.zero();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) v = v * *root_ + to_.from_int(*it);
    return v;
  }

  // Element of the source mapping to y, if any (finite fields, by scan).
  std::optional<Fel> preimage(const Fel& y) const {
    if (from_.kind() == FieldKind::rationals) return y;
    for (const Fel& x : from_.elements()) {
      if ((*this)(x) == y) return x;
    }
    return std::nullopt;
  }

  // First `inner`, then `outer`.
  friend Embedding compose(const Embedding& outer, const Embedding& inner) {
    if (!(inner.to() == outer.from())) throw Error(Errc::mixed_fields, "embeddings do not compose");
    Embedding e;
    e.from_ = inner.from_;
    e.to_ = outer.to_;
    if (e.from_.kind() == FieldKind::extension) e.root_ = outer(inner(e.from_.generator()));
    return e;
  }

 private:
  void check_compatible() const {
    if (from_.kind() == FieldKind::rationals || to_.kind() == FieldKind::rationals) {
      if (!(from_ == to_)) throw Error(Errc::mixed_fields, "Q embeds only into itself");
      return;
    }
    if (from_.characteristic() != to_.characteristic() || to_.degree() % from_.degree() != 0) {
      throw Error(Errc::mixed_fields, from_.name() + " does not embed into " + to_.name());
    }
  }

  std::vector<Fel> modulus_roots() const {
    std::vector<Fel> out;
    const auto& mod = from_.modulus();
    for (const Fel& r : to_.elements()) {
      Fel v = to_.zero();
      for (auto it = mod.rbegin(); it != mod.rend(); ++it) v = v * r + to_.from_int(*it);
      if (v.is_zero()) out.push_back(r);
    }
    return out;
  }

  Field from_, to_;
  std::optional<Fel> root_;
};

}  // namespace evoalg

#endif  // EVOALG_FIELD_HPP_
