#include <catch_amalgamated.hpp>

#include <set>

#include "evoalg/io.hpp"
#include "support.hpp"

using namespace evoalg;

TEST_CASE("GL(2,q) enumeration") {
  for (const Field& f : {Field::prime(2), Field::prime(3), Field::galois(2, 2), Field::prime(5), Field::prime(7),
                         Field::galois(3, 2)}) {
    const std::uint64_t q = f.size();
    const auto gl = gl2_enumerate(f);
    CHECK(gl.size() == (q * q - 1) * (q * q - q));
    for (std::size_t i = 1; i < gl.size(); ++i) REQUIRE(Mat2Less{}(gl[i - 1].ginv(), gl[i].ginv()));
  }
  CHECK(gl2_enumerate(Field::prime(2)).size() == 6);
  CHECK(gl2_enumerate(Field::prime(3)).size() == 48);
  CHECK(gl2_enumerate(Field::prime(5)).size() == 480);
  CHECK_THROWS_AS(gl2_enumerate(Field::rationals()), Error);
}

TEST_CASE("brute-force isomorphism search") {
  const Field f7 = Field::prime(7);
  testing::Gen gen(71);
  for (int i = 0; i < 20; ++i) {
    const EvolutionMsc e = gen.evolution(f7);
    const auto g = brute_iso(e, e, f7);
    REQUIRE(g.has_value());
    CHECK(transform(e.to_msc(), *g) == e.to_msc());
  }
  const EvolutionMsc a = canonical_msc(CanonicalKey{Label::E1, f7, {f7.from_int(2), f7.from_int(3)}});
  const EvolutionMsc b = canonical_msc(CanonicalKey{Label::E1, f7, {f7.from_int(3), f7.from_int(2)}});
  const auto g = brute_iso(a, b, f7);
  REQUIRE(g.has_value());
  CHECK(g->ginv() == Mat2::swap(f7));
  const Field f5 = Field::prime(5);
  CHECK_FALSE(brute_iso(canonical_msc(CanonicalKey::plain(Label::E4, f5)),
                        canonical_msc(CanonicalKey::plain(Label::E6, f5)), f5)
                  .has_value());

  // (1,3,0,0) over GF(7) needs a square root of 1/3 = 5: E4 only over GF(49)
  const EvolutionMsc e4 = EvolutionMsc::from_ints(f7, 1, 3, 0, 0);
  const EvolutionMsc c4 = canonical_msc(CanonicalKey::plain(Label::E4, f7));
  CHECK_FALSE(brute_iso(e4, c4, f7).has_value());
  const Field f49 = Field::galois(7, 2);
  const auto w = brute_iso(e4, c4, f49);
  REQUIRE(w.has_value());
  const Embedding emb(f7, f49);
  CHECK(transform(e4.mapped(emb).to_msc(), *w) == c4.mapped(emb).to_msc());
}

TEST_CASE("brute-force automorphisms and derivations") {
  const Field f7 = Field::prime(7);
  const auto e4 = brute_aut(canonical_msc(CanonicalKey::plain(Label::E4, f7)).to_msc());
  CHECK(e4 == std::vector<Mat2>{Mat2::identity(f7), Mat2::diag(f7.one(), -f7.one())});
  const Msc e6 = canonical_msc(CanonicalKey::plain(Label::E6, f7)).to_msc();
  const auto a6 = brute_aut(e6);
  CHECK(a6.size() == 42);
  for (const Mat2& g : a6) CHECK(aut_check(e6, g));
  CHECK(brute_aut(canonical_msc(CanonicalKey::plain(Label::E4, Field::galois(2, 2))).to_msc()).size() == 1);
  CHECK_THROWS_AS(brute_aut(Msc::zero(Field::rationals())), Error);
  CHECK_THROWS_AS(brute_der(Msc::zero(Field::rationals())), Error);
}

TEST_CASE("orbit-stabilizer and closure") {
  for (const Field& f : {Field::prime(3), Field::galois(2, 2), Field::prime(5)}) {
    const auto gl = gl2_enumerate(f);
    testing::Gen gen(72);
    for (int i = 0; i < 10; ++i) {
      const Msc e = gen.evolution(f).to_msc();
      std::set<std::vector<std::uint32_t>> orbit;
      for (const BasisChange& g : gl) {
        const Msc m = transform(e, g);
        std::vector<std::uint32_t> codes;
        for (const Fel& x : m.e) codes.push_back(x.code());
        orbit.insert(codes);
      }
      const auto aut = brute_aut(e);
      REQUIRE(orbit.size() * aut.size() == gl.size());
      const std::set<Mat2, Mat2Less> members(aut.begin(), aut.end());
      for (const Mat2& g : aut) {
        REQUIRE(members.count(g.inverse()) == 1);
        for (const Mat2& h : aut) REQUIRE(members.count(g * h) == 1);
      }
    }
  }
}

TEST_CASE("census over GF(3) and GF(4)") {
  for (const Field& f : {Field::prime(3), Field::galois(2, 2)}) {
    INFO(f.name());
    const CensusReport r = census(f, 6, 2);
    CHECK(r.flags.keys_vs_orbits_ok);
    CHECK(r.flags.witnesses_ok);
    CHECK(r.flags.aut_closed_form_ok);
    CHECK(r.flags.der_closed_form_ok);
    CHECK(r.failures.empty());
    std::uint64_t sum = 0, orbit_sum = 0;
    for (const KeyRecord& k : r.keys) {
      sum += k.count;
      for (const OrbitRecord& o : k.orbits) orbit_sum += o.size;
    }
    CHECK(sum == r.total);
    CHECK(orbit_sum == r.total);
    CHECK(r.total == f.size() * f.size() * f.size() * f.size());
    CHECK(r.keys.front().key.label == Label::E0);
    CHECK(r.keys.front().count == 1);
  }
}

TEST_CASE("census output does not depend on the worker count") {
  const Field f = Field::prime(3);
  const std::string one = io::census_to_json(census(f, 6, 1)).dump();
  CHECK(io::census_to_json(census(f, 6, 3)).dump() == one);
  CHECK(io::census_to_json(census(f, 6, 8)).dump() == one);
}

TEST_CASE("census limits") {
  CHECK_THROWS_AS(census(Field::rationals()), Error);
  try {
    census(Field::prime(31));
    FAIL("no error raised");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::budget_exceeded);
  }
  // a tight extension bound makes witnesses fail
  const CensusReport r = census(Field::prime(3), 1);
  CHECK_FALSE(r.flags.witnesses_ok);
  CHECK_FALSE(r.failures.empty());
}
