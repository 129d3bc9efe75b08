#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace evoalg;

namespace {

// Structure constants in the new basis f_i = sum_k ginv[k][i] e_k, computed
// from the products of basis vectors directly.
Msc by_products(const Msc& a, const Mat2& ginv) {
  const Field& f = a.field();
  const Mat2 g = ginv.inverse();
  Msc out = Msc::zero(f);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      // f_i f_j in old coordinates
      std::array<Fel, 2> v{f.zero(), f.zero()};
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          for (int r = 0; r < 2; ++r) v[r] += ginv(k, i) * ginv(l, j) * a(r, 2 * k + l);
      for (int r = 0; r < 2; ++r) out(r, 2 * i + j) = g(r, 0) * v[0] + g(r, 1) * v[1];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("Kronecker square layout") {
  const Field q = Field::rationals();
  const Mat4 id = kron_square(Mat2::identity(q));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(id(r, c) == (r == c ? q.one() : q.zero()));

  const Fel x = q.from_int(2), y = q.from_int(5);
  const Mat4 d = kron_square(Mat2::diag(x, y));
  CHECK(d(0, 0) == x * x);
  CHECK(d(1, 1) == x * y);
  CHECK(d(2, 2) == x * y);
  CHECK(d(3, 3) == y * y);
  CHECK(d(0, 3).is_zero());

  const Mat4 s = kron_square(Mat2::swap(q));
  const int image[4] = {3, 2, 1, 0};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) CHECK(s(r, c) == (c == image[r] ? q.one() : q.zero()));
}

TEST_CASE("transform examples") {
  testing::Gen gen(31);
  const Field q = Field::rationals();
  for (int i = 0; i < 20; ++i) {
    const Msc a = gen.msc(q);
    CHECK(transform(a, BasisChange::identity(q)) == a);
  }

  const Fel c = q.from_int(3);
  const EvolutionMsc e6c{q.zero(), q.one(), q.one(), c};
  const BasisChange g = BasisChange::from_g(Mat2::of(q.zero(), c, c * c, q.zero()));
  CHECK(transform(e6c.to_msc(), g) == EvolutionMsc{q.one(), c.pow(-3), q.one(), q.zero()}.to_msc());

  const EvolutionMsc e3 = EvolutionMsc::from_ints(q, 0, 1, 1, 0);
  CHECK(transform(e3.to_msc(), BasisChange(Mat2::swap(q))) == e3.to_msc());

  CHECK_THROWS_AS(BasisChange(Mat2::from_ints(q, 1, 2, 2, 4)), Error);
  try {
    BasisChange(Mat2::zero(q));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::singular_change);
  }
  CHECK_THROWS_AS(transform(e3.to_msc(), BasisChange::identity(Field::prime(5))), Error);
}

TEST_CASE("closed-form entries") {
  const Field q = Field::rationals();
  const EvolutionMsc e = EvolutionMsc::from_ints(q, 1, 0, 0, 1);
  const TransformedEntries id = transform_evolution(e, BasisChange::identity(q));
  CHECK(id.alpha[0] == e.a);
  CHECK(id.alpha[3] == e.b);
  CHECK(id.beta[0] == e.c);
  CHECK(id.beta[3] == e.d);
  CHECK(id.alpha[1].is_zero());
  CHECK(id.beta[1].is_zero());

  const TransformedEntries t = transform_evolution(e, BasisChange(Mat2::diag(q.from_int(2), q.from_int(3))));
  CHECK(t.alpha[0] == q.from_int(2));
  CHECK(t.alpha[3].is_zero());
  CHECK(t.beta[0].is_zero());
  CHECK(t.beta[3] == q.from_int(3));
}

TEST_CASE("evolution predicate and determinant") {
  const Field q = Field::rationals();
  CHECK(is_evolution(Msc::from_ints(q, {1, 0, 0, 2, 3, 0, 0, 4})));
  CHECK_FALSE(is_evolution(Msc::from_ints(q, {1, 1, 0, 2, 3, 0, 0, 4})));
  const Msc moved = transform(EvolutionMsc::from_ints(q, 1, 1, 0, 0).to_msc(), BasisChange(Mat2::from_ints(q, 1, 1, 0, 1)));
  CHECK_FALSE(is_evolution(moved));
  CHECK_FALSE(moved(0, 1).is_zero());

  CHECK(det2x2(EvolutionMsc::from_ints(q, 1, 0, 0, 1)) == q.one());
  CHECK(det2x2(EvolutionMsc::from_ints(q, 2, 3, 5, 7)) == q.from_int(-1));
  CHECK(det2x2(EvolutionMsc::from_ints(q, 0, 1, 1, 0)) == q.from_int(-1));
}

TEST_CASE("transform agrees with products of the new basis") {
  testing::Gen gen(32);
  for (const Field& f : {Field::rationals(), Field::prime(5), Field::galois(2, 2)}) {
    for (int i = 0; i < 300; ++i) {
      const Msc a = gen.msc(f);
      const BasisChange g = gen.change(f);
      REQUIRE(transform(a, g) == by_products(a, g.ginv()));
    }
  }
}

TEST_CASE("group action axioms") {
  testing::Gen gen(33);
  for (const Field& f : {Field::prime(5), Field::rationals()}) {
    INFO(f.name());
    for (int i = 0; i < 1000; ++i) {
      const Msc a = gen.msc(f);
      const BasisChange g1 = gen.change(f), g2 = gen.change(f);
      REQUIRE(transform(a, BasisChange::identity(f)) == a);
      // g1 then g2 is the product g2 g1 of the g matrices
      const BasisChange both = g1.then(g2);
      REQUIRE(both.g() == g2.g() * g1.g());
      REQUIRE(transform(transform(a, g1), g2) == transform(a, both));
      REQUIRE(transform(transform(a, g1), g1.inverse()) == a);
    }
  }
}

TEST_CASE("closed-form entries agree with the generic transform over GF(3)") {
  const Field f = Field::prime(3);
  const auto gl = gl2_enumerate(f);
  REQUIRE(gl.size() == 48);
  std::size_t pairs = 0;
  for (const EvolutionMsc& e : testing::all_evolution(f)) {
    for (const BasisChange& g : gl) {
      const TransformedEntries t = transform_evolution(e, g);
      REQUIRE(t.to_msc() == transform(e.to_msc(), g));
      REQUIRE(t.alpha[1] == t.alpha[2]);
      REQUIRE(t.beta[1] == t.beta[2]);
      ++pairs;
    }
  }
  CHECK(pairs == 81 * 48);
}

TEST_CASE("singular structure matrices stay singular") {
  const Field f = Field::prime(3);
  const auto gl = gl2_enumerate(f);
  for (const EvolutionMsc& e : testing::all_evolution(f)) {
    if (!det2x2(e).is_zero()) continue;
    for (const BasisChange& g : gl) {
      const TransformedEntries t = transform_evolution(e, g);
      REQUIRE((t.alpha[0] * t.beta[3] - t.alpha[3] * t.beta[0]).is_zero());
    }
  }
}
