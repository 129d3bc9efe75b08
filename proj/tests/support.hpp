#ifndef EVOALG_TESTS_SUPPORT_HPP_
#define EVOALG_TESTS_SUPPORT_HPP_

// Random generators for the property tests. Seeds are fixed so failures
// reproduce.

#include <cstdint>
#include <random>

#include "evoalg/evoalg.hpp"

namespace testing {

using namespace evoalg;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long long range(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng_); }

  // Rationals with small numerators and denominators; finite fields
  // uniformly.
  Fel element(const Field& f) {
    if (f.is_finite()) return f.from_code(static_cast<std::uint64_t>(range(0, static_cast<long long>(f.size()) - 1)));
    return f.from_rational(mpq_class(static_cast<long>(range(-9, 9)), static_cast<long>(range(1, 6))));
  }

  Fel nonzero(const Field& f) {
    for (;;) {
      Fel x = element(f);
      if (!x.is_zero()) return x;
    }
  }

  Mat2 matrix(const Field& f) { return Mat2::of(element(f), element(f), element(f), element(f)); }

  Mat2 invertible(const Field& f) {
    for (;;) {
      Mat2 m = matrix(f);
      if (!m.det().is_zero()) return m;
    }
  }

  BasisChange change(const Field& f) { return BasisChange(invertible(f)); }

  Msc msc(const Field& f) {
    Msc m;
    for (auto& x : m.e) x = element(f);
    return m;
  }

  EvolutionMsc evolution(const Field& f) { return {element(f), element(f), element(f), element(f)}; }

 private:
  std::mt19937_64 rng_;
};

// Every evolution MSC over a finite field, in index order.
inline std::vector<EvolutionMsc> all_evolution(const Field& f) {
  std::vector<EvolutionMsc> out;
  const std::uint64_t q = f.size();
  for (std::uint64_t i = 0; i < q * q * q * q; ++i) out.push_back(evolution_at(f, i));
  return out;
}

}  // namespace testing

#endif  // EVOALG_TESTS_SUPPORT_HPP_
