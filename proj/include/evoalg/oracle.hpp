#ifndef EVOALG_ORACLE_HPP_
#define EVOALG_ORACLE_HPP_

// Brute-force ground truth over small finite fields: GL(2,q) enumeration,
// isomorphism and automorphism search, derivation search and the census of
// all evolution MSCs over GF(q).
//
// The hot loops work on raw element codes through the field tables and do
// not share code with the transform in tensor.hpp, so the two can check
// each other.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "evoalg/aut.hpp"
#include "evoalg/classify.hpp"
#include "evoalg/der.hpp"
#include "evoalg/error.hpp"
#include "evoalg/field.hpp"
#include "evoalg/linalg.hpp"
#include "evoalg/tensor.hpp"

namespace evoalg {

namespace oracle_detail {

using CMat2 = std::array<std::uint32_t, 4>;
using CMsc = std::array<std::uint32_t, 8>;

class Codes {
 public:
  explicit Codes(const Field& f) : f_(&f.impl()) {
    if (!f.is_finite()) throw Error(Errc::infinite_field, "the oracle needs a finite field");
  }

  std::uint32_t q() const { return f_->q; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return f_->add(a, b); }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return f_->sub(a, b); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return f_->mul(a, b); }
  std::uint32_t inv(std::uint32_t a) const { return f_->inv(a); }

  std::uint32_t det(const CMat2& m) const { return sub(mul(m[0], m[3]), mul(m[1], m[2])); }

  CMat2 inverse(const CMat2& m) const {
    const std::uint32_t di = inv(det(m));
    return {mul(m[3], di), mul(f_->neg(m[1]), di), mul(f_->neg(m[2]), di), mul(m[0], di)};
  }

  // m A for a 2x2 m and 2x4 A.
  CMsc left(const CMat2& m, const CMsc& a) const {
    CMsc out;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 4; ++c) out[4 * r + c] = add(mul(m[2 * r], a[c]), mul(m[2 * r + 1], a[4 + c]));
    return out;
  }

  // A (x (x) y) for 2x2 x, y.
  CMsc right_kron(const CMsc& a, const CMat2& x, const CMat2& y) const {
    std::array<std::uint32_t, 16> k;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int kk = 0; kk < 2; ++kk)
          for (int l = 0; l < 2; ++l) k[4 * (2 * i + j) + 2 * kk + l] = mul(x[2 * i + kk], y[2 * j + l]);
    CMsc out;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 4; ++c) {
        std::uint32_t s = 0;
        for (int i = 0; i < 4; ++i) s = add(s, mul(a[4 * r + i], k[4 * i + c]));
        out[4 * r + c] = s;
      }
    }
    return out;
  }

  CMsc transform(const CMsc& a, const CMat2& g, const CMat2& ginv) const {
    return right_kron(left(g, a), ginv, ginv);
  }

  // E (D (x) I + I (x) D) - D E
  CMsc der_residual(const CMsc& e, const CMat2& d) const {
    const CMat2 id{1, 0, 0, 1};
    const CMsc x = right_kron(e, d, id), y = right_kron(e, id, d), z = left(d, e);
    CMsc out;
    for (std::size_t i = 0; i < 8; ++i) out[i] = sub(add(x[i], y[i]), z[i]);
    return out;
  }

 private:
  const detail::FieldImpl* f_;
};

inline CMat2 to_codes(const Mat2& m) { return {m.m[0].code(), m.m[1].code(), m.m[2].code(), m.m[3].code()}; }

inline CMsc to_codes(const Msc& a) {
  CMsc out;
  for (std::size_t i = 0; i < 8; ++i) out[i] = a.e[i].code();
  return out;
}

inline Mat2 from_codes(const Field& f, const CMat2& m) {
  return Mat2::of(f.from_code(m[0]), f.from_code(m[1]), f.from_code(m[2]), f.from_code(m[3]));
}

inline bool is_zero(const CMsc& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t x) { return x == 0; });
}

struct GlElement {
  CMat2 g, ginv;
};

// Every invertible 2x2 matrix m (taken as g^-1) in lexicographic order of
// its row-major entries, with its inverse.
inline std::vector<GlElement> gl2_codes(const Field& f) {
  const Codes k(f);
  const std::uint32_t q = k.q();
  std::vector<GlElement> out;
  out.reserve(static_cast<std::size_t>(q * q - 1) * (q * q - q));
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c)
        for (std::uint32_t d = 0; d < q; ++d) {
          const CMat2 m{a, b, c, d};
          if (k.det(m) == 0) continue;
          out.push_back({k.inverse(m), m});
        }
  return out;
}

}  // namespace oracle_detail

inline std::vector<BasisChange> gl2_enumerate(const Field& f) {
  std::vector<BasisChange> out;
  for (const auto& el : oracle_detail::gl2_codes(f)) out.emplace_back(oracle_detail::from_codes(f, el.ginv));
  return out;
}

// First g (in gl2_enumerate order over k) carrying e onto f, both read in k
// through the default embedding of their base field.
inline std::optional<BasisChange> brute_iso(const EvolutionMsc& e, const EvolutionMsc& f, const Field& k) {
  require_same_field(e.field(), f.field());
  const oracle_detail::Codes ar(k);
  const Embedding emb(e.field(), k);
  const auto a = oracle_detail::to_codes(e.mapped(emb).to_msc());
  const auto b = oracle_detail::to_codes(f.mapped(emb).to_msc());
  for (const auto& el : oracle_detail::gl2_codes(k)) {
    if (ar.transform(a, el.g, el.ginv) == b) return BasisChange(oracle_detail::from_codes(k, el.ginv));
  }
  return std::nullopt;
}

// All g with g E = E (g (x) g), lexicographic in the entries of g.
inline std::vector<Mat2> brute_aut(const Msc& e) {
  const Field& f = e.field();
  const oracle_detail::Codes ar(f);
  const auto a = oracle_detail::to_codes(e);
  std::vector<Mat2> out;
  for (const auto& el : oracle_detail::gl2_codes(f)) {
    const auto& g = el.ginv;  // enumeration order is on this matrix
    if (ar.left(g, a) == ar.right_kron(a, g, g)) out.push_back(oracle_detail::from_codes(f, g));
  }
  return out;
}

// All D (not only invertible ones) with E (D (x) I + I (x) D) = D E.
inline std::vector<Mat2> brute_der(const Msc& e) {
  const Field& f = e.field();
  const oracle_detail::Codes ar(f);
  const auto a = oracle_detail::to_codes(e);
  const std::uint32_t q = ar.q();
  std::vector<Mat2> out;
  for (std::uint32_t x = 0; x < q; ++x)
    for (std::uint32_t y = 0; y < q; ++y)
      for (std::uint32_t z = 0; z < q; ++z)
        for (std::uint32_t t = 0; t < q; ++t) {
          const oracle_detail::CMat2 d{x, y, z, t};
          if (oracle_detail::is_zero(ar.der_residual(a, d))) out.push_back(oracle_detail::from_codes(f, d));
        }
  return out;
}

// Index of (a,b,c,d) in lexicographic order of codes.
inline std::uint64_t evolution_index(const EvolutionMsc& e, std::uint64_t q) {
  return ((std::uint64_t{e.a.code()} * q + e.b.code()) * q + e.c.code()) * q + e.d.code();
}

inline EvolutionMsc evolution_at(const Field& f, std::uint64_t idx) {
  const std::uint64_t q = f.size();
  const std::uint64_t d = idx % q, c = idx / q % q, b = idx / (q * q) % q, a = idx / (q * q * q);
  return {f.from_code(a), f.from_code(b), f.from_code(c), f.from_code(d)};
}

// Indices of the evolution MSCs with entries in `base` that lie in the
// GL(2,k)-orbit of e (entries mapped into k by `emb`), in increasing order.
inline std::vector<std::uint64_t> evolution_orbit(const EvolutionMsc& e, const Embedding& emb,
                                                  const std::vector<oracle_detail::GlElement>& gl) {
  const Field& base = emb.from();
  const Field& k = emb.to();
  const oracle_detail::Codes ar(k);
  const std::uint64_t q = base.size();
  // code in k -> code in base, or none
  std::vector<std::int64_t> back(k.size(), -1);
  for (const Fel& x : base.elements()) back[emb(x).code()] = x.code();
  const auto a = oracle_detail::to_codes(e.mapped(emb).to_msc());
  std::vector<std::uint64_t> out;
  std::vector<bool> seen(q * q * q * q, false);
  for (const auto& el : gl) {
    const auto b = ar.transform(a, el.g, el.ginv);
    if (b[1] || b[2] || b[5] || b[6]) continue;
    const std::int64_t ca = back[b[0]], cb = back[b[3]], cc = back[b[4]], cd = back[b[7]];
    if (ca < 0 || cb < 0 || cc < 0 || cd < 0) continue;
    const std::uint64_t idx = ((static_cast<std::uint64_t>(ca) * q + cb) * q + cc) * q + cd;
    if (!seen[idx]) {
      seen[idx] = true;
      out.push_back(idx);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct OrbitRecord {
  EvolutionMsc representative;  // smallest member in index order
  std::uint64_t size = 0;       // members among the evolution MSCs
};

struct KeyRecord {
  CanonicalKey key;
  std::vector<OrbitRecord> orbits;
  std::uint64_t count = 0;
  std::uint64_t brute_aut_order = 0;
  std::optional<std::uint64_t> closed_aut_order;  // none for E0
  std::size_t der_dim = 0;
  unsigned max_witness_degree = 1;  // over the base field
};

struct CensusFlags {
  bool keys_vs_orbits_ok = true;
  bool witnesses_ok = true;
  bool aut_closed_form_ok = true;
  bool der_closed_form_ok = true;

  bool all() const { return keys_vs_orbits_ok && witnesses_ok && aut_closed_form_ok && der_closed_form_ok; }
};

struct CensusReport {
  Field field;
  unsigned max_ext = 6;
  std::uint64_t total = 0;
  std::vector<KeyRecord> keys;  // sorted by KeyLess
  CensusFlags flags;
  std::vector<std::string> failures;  // the first few, in deterministic order
};

inline constexpr double kCensusBudget = 5e9;

namespace oracle_detail {

struct Classified {
  CanonicalKey key;
  bool witness_ok = false;
  unsigned degree = 1;
};

inline Classified classify_and_verify(const EvolutionMsc& e, unsigned max_ext) {
  Classified out;
  const ClassificationResult r = classify(e);
  out.key = r.key;
  out.degree = r.witness_field.degree() / e.field().degree();
  if (!r.witness || out.degree > max_ext) return out;
  const Msc lhs = transform(e.mapped(r.embedding).to_msc(), *r.witness);
  out.witness_ok = lhs == canonical_msc(r.key).to_msc().mapped(r.embedding);
  return out;
}

}  // namespace oracle_detail

// Classifies every evolution MSC over the finite field f and checks the
// classification against brute force: (a) MSCs in one GF(q)-orbit share a
// key, (b) every witness verifies in a field of degree <= max_ext over f,
// (c) brute-force Aut equals the closed form, (d) brute-force Der equals the
// solver's span and the closed form.
inline CensusReport census(const Field& f, unsigned max_ext = 6, unsigned jobs = 1) {
  if (!f.is_finite()) throw Error(Errc::infinite_field, "census needs a finite field");
  const std::uint64_t q = f.size();
  const double gl_order = (double(q) * q - 1) * (double(q) * q - q);
  if (double(q) * q * q * q * gl_order > kCensusBudget) {
    throw Error(Errc::budget_exceeded, "census over " + f.name() + " exceeds the budget");
  }
  const std::uint64_t total = q * q * q * q;
  jobs = std::max(1u, jobs);

  CensusReport rep;
  rep.field = f;
  rep.max_ext = max_ext;
  rep.total = total;
  auto fail = [&rep](bool& flag, std::string msg) {
    flag = false;
    if (rep.failures.size() < 20) rep.failures.push_back(std::move(msg));
  };

  // Classification in contiguous chunks; each worker writes its own slots.
  std::vector<oracle_detail::Classified> cls(total);
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (total + jobs - 1) / jobs;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, lo, hi] {
        for (std::uint64_t i = lo; i < hi; ++i) cls[i] = oracle_detail::classify_and_verify(evolution_at(f, i), max_ext);
      });
    }
    for (auto& t : pool) t.join();
  }
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!cls[i].witness_ok) {
      const EvolutionMsc e = evolution_at(f, i);
      fail(rep.flags.witnesses_ok, "witness fails for (" + e.a.to_string() + "," + e.b.to_string() + "," +
                                       e.c.to_string() + "," + e.d.to_string() + ")");
    }
  }

  // GF(q)-orbits, seeded from the smallest unvisited index.
  const auto gl = oracle_detail::gl2_codes(f);
  const Embedding id = Embedding::identity(f);
  std::map<CanonicalKey, KeyRecord, KeyLess> by_key;
  std::vector<bool> visited(total, false);
  for (std::uint64_t i = 0; i < total; ++i) {
    if (visited[i]) continue;
    const EvolutionMsc rep_msc = evolution_at(f, i);
    const auto orbit = evolution_orbit(rep_msc, id, gl);
    for (std::uint64_t j : orbit) {
      visited[j] = true;
      if (!same_key(cls[j].key, cls[i].key)) {
        fail(rep.flags.keys_vs_orbits_ok, "orbit of index " + std::to_string(i) + " mixes keys");
      }
    }
    KeyRecord& rec = by_key[cls[i].key];
    rec.key = cls[i].key;
    rec.orbits.push_back({rep_msc, orbit.size()});
    rec.count += orbit.size();
  }
  for (std::uint64_t i = 0; i < total; ++i) {
    KeyRecord& rec = by_key[cls[i].key];
    rec.max_witness_degree = std::max(rec.max_witness_degree, cls[i].degree);
  }

  // Per-key Aut and Der checks on the canonical representative.
  for (auto& [key, rec] : by_key) {
    const std::string name(label_name(key.label));
    const Msc canon = canonical_msc(key).to_msc();
    const auto brute = brute_aut(canon);
    rec.brute_aut_order = brute.size();
    const auto brute_d = brute_der(canon);
    const DerBasis solved = der_solve(canon);
    rec.der_dim = solved.dim();
    std::uint64_t span_size = 1;
    for (std::size_t k = 0; k < solved.dim(); ++k) span_size *= q;
    if (brute_d.size() != span_size || !(echelon(f, brute_d) == solved)) {
      fail(rep.flags.der_closed_form_ok, name + ": brute-force Der differs from the solver");
    }
    if (key.label == Label::E0) continue;
    const auto closed = aut_instantiate(aut_closed_form(key));
    rec.closed_aut_order = closed.size();
    if (closed != brute) fail(rep.flags.aut_closed_form_ok, name + ": closed-form Aut differs from brute force");
    if (!(der_closed_form(key) == solved)) {
      fail(rep.flags.der_closed_form_ok, name + ": closed-form Der differs from the solver");
    }
  }
  for (auto& [key, rec] : by_key) rep.keys.push_back(std::move(rec));
  return rep;
}

}  // namespace evoalg

#endif  // EVOALG_ORACLE_HPP_
