#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hasseforge/json_io.hpp"
#include "hasseforge/linalg.hpp"
#include "hasseforge/ratfunc.hpp"
#include "oracles.hpp"

using namespace hf;

namespace {

FqFun f5t() { return FqFun(GF(5), 't'); }

RatFunc<GF> rf(const FqFun& F, std::initializer_list<long long> num,
               std::initializer_list<long long> den = {1}) {
  auto mk = [&](std::initializer_list<long long> c) {
    std::vector<GFElem> v;
    for (auto x : c) v.push_back(F.coeff_field().from_int(x));
    return Poly<GF>(F.coeff_field(), std::move(v));
  };
  return RatFunc<GF>(mk(num), mk(den));
}

}  // namespace

TEST_CASE("poly_gcd: monic results and the frozen examples") {
  GF f(5);
  // t^2 - 1 and t - 1 -> t - 1 (t^2-1 = (t-1)(t+1))
  Poly<GF> a(f, {f.from_int(-1), f.zero(), f.one()});
  Poly<GF> b(f, {f.from_int(-1), f.one()});
  CHECK(poly_gcd(a, b) == b);
  // gcd(f, 0) is the monic multiple of f
  Poly<GF> c(f, {f.from_int(2), f.from_int(4)});
  CHECK(poly_gcd(c, Poly<GF>::zero(f)) == c.monic());
  CHECK(poly_gcd(c, c) == c.monic());
  CHECK_THROWS_AS(poly_gcd(Poly<GF>::zero(f), Poly<GF>::zero(f)), Error);
}

TEST_CASE("poly divmod identity on random pairs") {
  GF f(7);
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    Poly<GF> a = sample_poly(f, rng, 8, false);
    Poly<GF> b = sample_poly(f, rng, 5, true);
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    if (!r.is_zero()) CHECK(r.degree_or(-1) < b.degree_or(-1));
  }
}

TEST_CASE("zero polynomial has a distinguished none degree") {
  GF f(5);
  CHECK(!Poly<GF>::zero(f).degree().has_value());
  CHECK(Poly<GF>::one(f).degree() == 0);
}

TEST_CASE("rational function normal form invariants") {
  auto F = f5t();
  // 1/t + (t-1)/t = 1 after full reduction
  auto inv_t = rf(F, {1}, {0, 1});
  auto other = rf(F, {-1, 1}, {0, 1});
  CHECK(inv_t + other == F.one());
  // inv(t) = 1/t
  CHECK(F.gen().inv() == inv_t);
  CHECK_THROWS_AS(F.zero().inv(), Error);

  Rng rng(31);
  for (int i = 0; i < 400; ++i) {
    auto a = F.sample(rng, 5);
    auto b = F.sample(rng, 5);
    auto s = a + b;
    auto p = a * b;
    CHECK(s.check_normal_form());
    CHECK(p.check_normal_form());
    CHECK((a - a).is_zero());
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a * (b + F.one()) == a * b + a);
  }
}

TEST_CASE("rational functions over Q") {
  QFun F(Rationals{}, 't');
  Rng rng(32);
  for (int i = 0; i < 150; ++i) {
    auto a = F.sample(rng, 4);
    auto b = F.sample(rng, 4);
    CHECK((a * b).check_normal_form());
    if (!a.is_zero()) CHECK((a.inv() * a).is_one());
    CHECK(a + b == b + a);
  }
}

TEST_CASE("subfield membership in F_5(t^5)") {
  auto F = f5t();
  auto t = F.gen();
  auto t5 = t * t * t * t * t;
  CHECK(subfield_membership(t5, 1));
  CHECK(!subfield_membership(t, 1));
  CHECK(subfield_membership((t5 + F.one()).inv(), 1));
  CHECK(!subfield_membership(t5, 2));
  CHECK(subfield_membership(t5 * t5 * t5 * t5 * t5, 2));
  // fallback route agrees with the support test on random samples
  Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    auto f = F.sample(rng, 6);
    for (unsigned m = 1; m <= 2; ++m)
      CHECK(subfield_membership(f, m) == subfield_membership(f, m, true));
    // squeeze in members: f(t)^5 is a function of t^5
    auto f5 = f * f * f * f * f;
    CHECK(subfield_membership(f5, 1));
    CHECK(subfield_membership(f5, 1, true));
  }
  CHECK_THROWS_AS(subfield_membership(RatFunc<Rationals>(Poly<Rationals>::one(Rationals{})), 1),
                  std::exception);
}

TEST_CASE("exact_rank: frozen examples") {
  auto F = f5t();
  auto id = Mat<FqFun>::identity(F, 3);
  CHECK(exact_rank(id) == 3);
  Mat<FqFun> zero(F, 4, 3);
  CHECK(exact_rank(zero) == 0);
  CHECK(kernel_basis(zero).size() == 3);

  // [[t, t^2], [1, t]] has proportional rows
  Mat<FqFun> m(F, 2, 2);
  auto t = F.gen();
  m.at(0, 0) = t;
  m.at(0, 1) = t * t;
  m.at(1, 0) = F.one();
  m.at(1, 1) = t;
  CHECK(exact_rank(m) == 1);
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  CHECK(vec_is_zero<FqFun>(m.apply(ker[0])));
}

TEST_CASE("exact_rank agrees with naive fraction-based elimination") {
  auto F = f5t();
  Rng rng(34);
  for (int trial = 0; trial < 120; ++trial) {
    unsigned r = 1 + static_cast<unsigned>(rng.below(6));
    unsigned c = 1 + static_cast<unsigned>(rng.below(6));
    Mat<FqFun> m(F, r, c);
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = 0; j < c; ++j)
        if (rng.below(3)) m.at(i, j) = F.sample(rng, 2);
    unsigned fast = exact_rank(m);
    unsigned slow = test::naive_rank(m);
    CHECK(fast == slow);
    // rank-nullity, and kernel vectors really annihilate
    auto ker = kernel_basis(m);
    CHECK(fast + ker.size() == c);
    for (const auto& v : ker) CHECK(vec_is_zero<FqFun>(m.apply(v)));
  }
}

TEST_CASE("exact_rank over GF and Q matrices") {
  GF f5(5);
  Rng rng(35);
  for (int trial = 0; trial < 150; ++trial) {
    unsigned r = 1 + static_cast<unsigned>(rng.below(6));
    unsigned c = 1 + static_cast<unsigned>(rng.below(6));
    Mat<GF> m(f5, r, c);
    for (unsigned i = 0; i < r; ++i)
      for (unsigned j = 0; j < c; ++j) m.at(i, j) = f5.sample(rng);
    CHECK(exact_rank(m) == test::naive_rank(m));
  }
  Rationals q;
  Mat<Rationals> mq(q, 2, 3);
  mq.at(0, 0) = QQ(1, 2);
  mq.at(0, 1) = QQ(1, 3);
  mq.at(1, 0) = QQ(3, 2);
  mq.at(1, 1) = QQ(1, 5);
  CHECK(exact_rank(mq) == 2);
}

TEST_CASE("solve and coords_in_basis") {
  GF f5(5);
  Mat<GF> m(f5, 2, 2);
  m.at(0, 0) = f5.from_int(2);
  m.at(0, 1) = f5.from_int(1);
  m.at(1, 0) = f5.from_int(1);
  m.at(1, 1) = f5.from_int(1);
  Vec<GF> b{f5.from_int(1), f5.from_int(2)};
  auto x = solve(m, b);
  REQUIRE(x.has_value());
  CHECK(m.apply(*x) == b);

  // inconsistent system
  Mat<GF> sing(f5, 2, 1);
  sing.at(0, 0) = f5.one();
  sing.at(1, 0) = f5.one();
  Vec<GF> bad{f5.one(), f5.from_int(2)};
  CHECK(!solve(sing, bad).has_value());
}

TEST_CASE("rational function JSON round-trip") {
  auto F = f5t();
  Rng rng(36);
  for (int i = 0; i < 50; ++i) {
    auto f = F.sample(rng, 4);
    auto j = to_json(f);
    CHECK(ratfunc_from_json(F.coeff_field(), j) == f);
  }
}
