#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hasseforge/derivation.hpp"
#include "oracles.hpp"

using namespace hf;

namespace {

FqFun f5t() { return FqFun(GF(5), 't'); }

RatFunc<GF> tpow(const FqFun& F, unsigned m) {
  return RatFunc<GF>(Poly<GF>::monomial(F.coeff_field(), F.coeff_field().one(), m));
}

}  // namespace

TEST_CASE("Hasse closed form: derive(t^m, n) = C(m,n) t^(m-n) for m <= 30") {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    FqFun F(GF(p), 't');
    auto D = hasse_table(F, 30);
    for (unsigned m = 0; m <= 30; ++m) {
      auto tw = D.tower(tpow(F, m), m);
      for (unsigned n = 0; n <= m; ++n) {
        auto expected = tpow(F, m - n).scaled(binomial_in(F.coeff_field(), m, n));
        CHECK(tw[n] == expected);
      }
    }
  }
}

TEST_CASE("Hasse frozen examples over F_5(t)") {
  auto F = f5t();
  auto D = hasse_table(F, 12);
  // C(7,2) = 21 = 1 mod 5
  CHECK(D.derive(tpow(F, 7), 2) == tpow(F, 5));
  // delta^(0) = id
  Rng rng(7);
  for (int i = 0; i < 20; ++i) {
    auto f = F.sample(rng, 5);
    CHECK(D.derive(f, 0) == f);
  }
  // constants die at order >= 1
  CHECK(D.derive(F.from_int(3), 1).is_zero());
  CHECK(D.derive(F.one(), 4).is_zero());
  // delta^(1)(1/t) = -1/t^2 = 4/t^2
  auto inv_t = F.gen().inv();
  auto expected = RatFunc<GF>(Poly<GF>::constant(F.coeff_field(), F.coeff_field().from_int(4)),
                              Poly<GF>::monomial(F.coeff_field(), F.coeff_field().one(), 2));
  CHECK(D.derive(inv_t, 1) == expected);
  // cross-check: delta^(1)(t * 1/t) = 0 by the Leibniz rule
  auto t = F.gen();
  auto leib = D.derive(t, 0) * D.derive(inv_t, 1) + D.derive(t, 1) * D.derive(inv_t, 0);
  CHECK(leib.is_zero());
  // delta^(j)(t^5): 0 for 1 <= j <= 4, 1 at j = 5
  auto t5 = tpow(F, 5);
  for (unsigned j = 1; j <= 4; ++j) CHECK(D.derive(t5, j).is_zero());
  CHECK(D.derive(t5, 5) == F.one());
}

TEST_CASE("fast and general towers agree on random inputs") {
  auto F = f5t();
  auto D = hasse_table(F, 16);
  REQUIRE(D.graded());
  Rng rng(41);
  for (int i = 0; i < 40; ++i) {
    auto f = F.sample(rng, 5);
    auto fast = D.tower(f, 8);
    std::vector<std::vector<RatFunc<GF>>> cache;
    auto gen = D.tower_general_cached(f, 8, cache);
    for (unsigned n = 0; n <= 8; ++n) CHECK(fast[n] == gen[n]);
  }
}

TEST_CASE("axiom suite passes on the Hasse table (fast path)") {
  auto F = f5t();
  auto D = hasse_table(F, 24);
  auto rep = check_iterative_axioms(D, 12, 60, 99);
  CHECK(rep.all_ok());
  CHECK(rep.counterexamples.empty());
  CHECK(rep.orders_checked == 12);
}

TEST_CASE("axiom suite passes on an extension field Hasse table (general path)") {
  FqFun F(GF(2, {1, 1, 1}), 't');  // F_4(t)
  auto D = hasse_table(F, 8);
  auto rep = check_iterative_axioms(D, 4, 12, 100);
  CHECK(rep.all_ok());
}

TEST_CASE("corrupted table entry is caught with a concrete counterexample") {
  auto F = f5t();
  std::vector<RatFunc<GF>> images;
  images.push_back(F.gen());
  images.push_back(F.one());
  images.push_back(F.one());  // delta^(2)(t) corrupted to 1
  for (unsigned i = 3; i <= 8; ++i) images.push_back(F.zero());
  DerivationTable<GF> D(F, 8, std::move(images));
  CHECK(!D.graded());  // exponent pattern broken, so the general engine runs

  // the direct witness: delta^(1)(delta^(1)(t)) = 0 but C(2,1) delta^(2)(t) = 2
  auto lhs = D.derive(D.derive(F.gen(), 1), 1);
  auto rhs = D.derive(F.gen(), 2).scaled(F.coeff_field().from_int(2));
  CHECK(lhs.is_zero());
  CHECK(rhs == F.from_int(2));

  auto rep = check_iterative_axioms(D, 4, 30, 101);
  CHECK(!rep.r3_ok);
  CHECK(!rep.counterexamples.empty());
  CHECK(rep.counterexamples[0].axiom == 3);
}

TEST_CASE("trivial derivation table passes all axioms") {
  auto F = f5t();
  auto D = trivial_table(F, 8);
  auto rep = check_iterative_axioms(D, 4, 25, 102);
  CHECK(rep.all_ok());
}

TEST_CASE("Kummer extension p=5, e=2") {
  auto F = f5t();
  auto DF = hasse_table(F, 20);
  auto DK = extend_to_kummer(DF, 2, 20);
  const auto& K = DK.field();
  CHECK(K.gen_name() == 's');
  // delta^(1)(s) = 3/s  (from 2 s delta^(1)(s) = 1 and 2^(-1) = 3)
  CHECK(DK.image(1) == K.monomial(K.coeff_field().from_int(3), -1));
  // the defining relation: derive(s^2, n) = delta_F^(n)(t) embedded
  Poly<GF> s2 = Poly<GF>::monomial(K.coeff_field(), K.coeff_field().one(), 2);
  auto s2r = RatFunc<GF>(s2);
  for (unsigned n = 0; n <= 20; ++n)
    CHECK(DK.derive(s2r, n) == DF.image(n).substitute(s2));
  // restriction to F on sampled elements
  Rng rng(55);
  for (int i = 0; i < 25; ++i) {
    auto f = F.sample(rng, 4);
    auto fk = f.substitute(s2);
    for (unsigned n : {1u, 2u, 5u, 7u}) {
      CHECK(DK.derive(fk, n) == DF.derive(f, n).substitute(s2));
    }
  }
  // Kummer tables are graded, weight e
  CHECK(DK.graded());
  CHECK(DK.graded_weight() == 2);
  auto rep = check_iterative_axioms(DK, 10, 40, 103);
  CHECK(rep.all_ok());
}

TEST_CASE("Kummer extension p=5, e=4: delta^(1)(s) = 4 s / t") {
  auto F = f5t();
  auto DF = hasse_table(F, 8);
  auto DK = extend_to_kummer(DF, 4, 8);
  const auto& K = DK.field();
  // 4^(-1) = 4 in F_5 and s^(1-4) = s/t
  CHECK(DK.image(1) == K.monomial(K.coeff_field().from_int(4), -3));
}

TEST_CASE("Kummer degree restrictions") {
  auto F = f5t();
  auto DF = hasse_table(F, 8);
  CHECK_THROWS_AS(extend_to_kummer(DF, 5, 8), Error);   // p | e
  CHECK_THROWS_AS(extend_to_kummer(DF, 3, 8), Error);   // 3 does not divide q-1 = 4
  CHECK_NOTHROW(extend_to_kummer(DF, 1, 8));            // degenerate K = F
}

TEST_CASE("filtration membership matches subfield membership") {
  auto F = f5t();
  auto D = hasse_table(F, 30);
  auto t5 = tpow(F, 5);
  CHECK(filtration_membership(D, t5, 1));
  CHECK(!filtration_membership(D, F.gen(), 1));
  CHECK(!filtration_membership(D, t5, 2));  // delta^(5)(t^5) = 1

  Rng rng(66);
  for (int i = 0; i < 80; ++i) {
    auto f = F.sample(rng, 4);
    CHECK(filtration_membership(D, f, 1) == subfield_membership(f, 1));
    // f^5 lands one level deeper: chain property and Frobenius step
    auto f5 = f * f * f * f * f;
    CHECK(filtration_membership(D, f5, 1));
    if (filtration_membership(D, f5, 2)) CHECK(filtration_membership(D, f5, 1));
  }
  // members of level 2 via double Frobenius
  auto g = (F.gen() + F.one()).inv();
  auto g5 = g * g * g * g * g;
  auto g25 = g5 * g5 * g5 * g5 * g5;
  CHECK(filtration_membership(D, g25, 2));
  CHECK(subfield_membership(g25, 2));
}

TEST_CASE("products with inverses are constants: derive(f * 1/f, n) = 0") {
  auto F = f5t();
  auto D = hasse_table(F, 12);
  Rng rng(71);
  for (int i = 0; i < 25; ++i) {
    RatFunc<GF> f = F.zero();
    while (f.is_zero()) f = F.sample(rng, 4);
    auto prod = f * f.inv();
    for (unsigned n = 1; n <= 6; ++n) CHECK(D.derive(prod, n).is_zero());
    // the Leibniz convolution of the two towers also telescopes to zero
    auto tf = D.tower(f, 6);
    auto tg = D.tower(f.inv(), 6);
    for (unsigned n = 1; n <= 6; ++n) {
      RatFunc<GF> acc = F.zero();
      for (unsigned a = 0; a <= n; ++a) acc = acc + tf[a] * tg[n - a];
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("filtration chain: level m membership implies level m-1") {
  auto F = f5t();
  auto D = hasse_table(F, 24);
  Rng rng(72);
  for (int i = 0; i < 40; ++i) {
    auto f = F.sample(rng, 3);
    auto f5 = f * f * f * f * f;
    auto f25 = f5 * f5 * f5 * f5 * f5;
    CHECK(filtration_membership(D, f25, 2));
    CHECK(filtration_membership(D, f25, 1));  // chain property
    if (!filtration_membership(D, f, 1)) CHECK(!filtration_membership(D, f, 2));
  }
}

TEST_CASE("char-0 divided powers from d/dt") {
  QFun F(Rationals{}, 't');
  auto D = divided_powers_table(F, F.one(), 12);
  // delta^(n)(t) = 0 for n >= 2
  for (unsigned n = 2; n <= 12; ++n) CHECK(D.image(n).is_zero());
  // delta^(2)(t^2) = 1, delta^(3)(t^3) = 1
  auto t2 = RatFunc<Rationals>(Poly<Rationals>::monomial(Rationals{}, QQ(1), 2));
  auto t3 = RatFunc<Rationals>(Poly<Rationals>::monomial(Rationals{}, QQ(1), 3));
  CHECK(D.derive(t2, 2) == F.one());
  CHECK(D.derive(t3, 3) == F.one());
  CHECK(D.graded());
  auto rep = check_iterative_axioms(D, 6, 20, 104);
  CHECK(rep.all_ok());

  // a non-monomial first-order image goes through the general engine
  auto a = F.gen() * F.gen() + F.one();
  auto D2 = divided_powers_table(F, a, 8);
  CHECK(!D2.graded());
  auto rep2 = check_iterative_axioms(D2, 4, 8, 105, 3);
  CHECK(rep2.all_ok());

  // divided powers are refused in characteristic p
  auto Fp = f5t();
  CHECK_THROWS_AS(divided_powers_table(Fp, Fp.one(), 4), Error);
}

TEST_CASE("derivation table serialization round-trip") {
  auto F = f5t();
  auto DF = hasse_table(F, 10);
  auto DK = extend_to_kummer(DF, 2, 10);
  Json j = DK.to_json();
  auto back = DerivationTable<GF>::from_json(DK.field().coeff_field(), j);
  CHECK(back.trunc() == DK.trunc());
  for (unsigned n = 0; n <= 10; ++n) CHECK(back.image(n) == DK.image(n));
}

TEST_CASE("orders beyond the truncation are rejected") {
  auto F = f5t();
  auto D = hasse_table(F, 6);
  CHECK_THROWS_AS(D.derive(F.gen(), 7), Error);
  CHECK_THROWS_AS(check_iterative_axioms(D, 4, 5, 1), Error);  // needs trunc >= 8
  CHECK_THROWS_AS(filtration_membership(D, F.gen(), 2), Error);  // p^2-1 = 24 > 6
}
