#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hasseforge/lattice.hpp"
#include "oracles.hpp"

using namespace hf;

namespace {

FqFun f5t() { return FqFun(GF(5), 't'); }

struct QuaternionPipeline {
  FqFun F;
  KummerExtension ext;
  Cocycle coc;
  DerivationTable<GF> dF, dK;
  DeltaAlgebra<GF> B, AK;
  ConstantsBasis consts;
  std::vector<unsigned> group;

  QuaternionPipeline()
      : F(f5t()),
        ext(F, 2),
        coc(Cocycle::from_norm_value(ext, F.from_int(2))),
        dF(hasse_table(F, 16)),
        dK(extend_to_kummer(dF, 2, 16)),
        B(crossed_product_derivation(ext, coc, dK, 14)),
        AK(base_change_delta(B, ext, dK, 14)) {
    AnsatzSpec ansatz;
    ansatz.degree_bound = 4;
    ansatz.den_power = 2;
    consts = constants_subalgebra(AK, ansatz, 10);
    group = kummer_galois_group(ext, dK, 10, 8, 3);
  }
};

Mat<GF> conjugation_action(const GF& cf, unsigned n, const Mat<GF>& p) {
  // X -> P X P^(-1) as a matrix on row-major coordinates
  Mat<GF> aug(cf, n, 2 * n);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) aug.at(i, j) = p.at(i, j);
    aug.at(i, n + i) = cf.one();
  }
  auto ech = rref(std::move(aug));
  Mat<GF> pinv(cf, n, n);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) pinv.at(i, j) = ech.reduced.at(i, n + j);
  Mat<GF> act(cf, n * n, n * n);
  for (unsigned k = 0; k < n; ++k)
    for (unsigned l = 0; l < n; ++l) {
      Mat<GF> x(cf, n, n);
      x.at(k, l) = cf.one();
      Mat<GF> y = p * x * pinv;
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) act.at(i * n + j, k * n + l) = y.at(i, j);
    }
  return act;
}

}  // namespace

TEST_CASE("Kummer Galois group certification") {
  auto F = f5t();
  auto dF = hasse_table(F, 12);
  auto dK = extend_to_kummer(dF, 2, 12);
  KummerExtension ext(F, 2);
  auto group = kummer_galois_group(ext, dK, 6, 6, 1);
  CHECK(group.size() == 2);
  // the explicit commutation at order 1: sigma(3/s) = delta^(1)(-s) = -3/s
  auto img = dK.image(1);
  CHECK(ext.galois(img, 1) == -img);

  auto dK4 = extend_to_kummer(hasse_table(F, 12), 4, 12);
  KummerExtension ext4(F, 4);
  CHECK(kummer_galois_group(ext4, dK4, 6, 6, 1).size() == 4);
}

TEST_CASE("action on constants: entrywise case is trivial") {
  auto F = f5t();
  auto dF = hasse_table(F, 12);
  auto dK = extend_to_kummer(dF, 2, 12);
  KummerExtension ext(F, 2);
  auto D = matrix_entrywise_derivation(2, dK, 12);
  AnsatzSpec ansatz;
  ansatz.degree_bound = 2;
  ansatz.den_power = 1;
  auto consts = constants_subalgebra(D, ansatz, 8);
  REQUIRE(consts.dim() == 4);
  auto group = kummer_galois_group(ext, dK, 8, 6, 2);
  auto rep = action_on_constants(D, consts, ext, group);
  for (const auto& m : rep.action) CHECK(m == Mat<GF>::identity(F.coeff_field(), 4));
}

TEST_CASE("action on constants: quaternion involution is nontrivial") {
  QuaternionPipeline q;
  REQUIRE(q.consts.dim() == 4);
  auto rep = action_on_constants(q.AK, q.consts, q.ext, q.group);
  CHECK(rep.action[0] == Mat<GF>::identity(q.F.coeff_field(), 4));
  CHECK(rep.action[1] != Mat<GF>::identity(q.F.coeff_field(), 4));
  // involution: squares to the identity
  CHECK(rep.action[1] * rep.action[1] == Mat<GF>::identity(q.F.coeff_field(), 4));
}

TEST_CASE("matrix-units recognition on the constants of the quaternion model") {
  QuaternionPipeline q;
  REQUIRE(q.consts.algebra.has_value());
  auto iso = recognize_matrix_algebra(*q.consts.algebra);
  CHECK(iso.n == 2);
  // transport the full multiplication table and compare against M_2
  const auto& C = *q.consts.algebra;
  const GF& cf = C.field();
  auto psi = [&](const Vec<GF>& v) { return iso.to_matrix.apply(v); };
  auto as_mat = [&](const Vec<GF>& m) {
    Mat<GF> r(cf, 2, 2);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j) r.at(i, j) = m[i * 2 + j];
    return r;
  };
  Rng rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    Vec<GF> a(4, cf.zero()), b(4, cf.zero());
    for (int i = 0; i < 4; ++i) {
      a[i] = cf.sample(rng);
      b[i] = cf.sample(rng);
    }
    CHECK(as_mat(psi(C.mul(a, b))) == as_mat(psi(a)) * as_mat(psi(b)));
  }
}

TEST_CASE("Skolem-Noether round trip on GL_2(F_5)") {
  GF cf(5);
  MatrixUnitsIso std_iso;
  std_iso.n = 2;
  std_iso.to_matrix = Mat<GF>::identity(cf, 4);
  std_iso.from_matrix = Mat<GF>::identity(cf, 4);
  Rng rng(31);
  int done = 0;
  while (done < 40) {
    Mat<GF> p(cf, 2, 2);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j) p.at(i, j) = cf.sample(rng);
    if (rank_rref(p) != 2) continue;
    ++done;
    auto act = conjugation_action(cf, 2, p);
    auto lift = skolem_noether_lift(std_iso, act);
    // equal up to scalar: lift = c * p for some c
    GFElem c = cf.zero();
    for (unsigned i = 0; i < 2 && c.is_zero(); ++i)
      for (unsigned j = 0; j < 2 && c.is_zero(); ++j)
        if (!p.at(i, j).is_zero()) c = lift.at(i, j) / p.at(i, j);
    REQUIRE(!c.is_zero());
    Mat<GF> scaled(cf, 2, 2);
    for (unsigned i = 0; i < 2; ++i)
      for (unsigned j = 0; j < 2; ++j) scaled.at(i, j) = p.at(i, j) * c;
    CHECK(lift == scaled);
  }
}

TEST_CASE("transpose is rejected as not inner") {
  GF cf(5);
  MatrixUnitsIso std_iso;
  std_iso.n = 2;
  std_iso.to_matrix = Mat<GF>::identity(cf, 4);
  std_iso.from_matrix = Mat<GF>::identity(cf, 4);
  // transpose on row-major coordinates: E_ij -> E_ji
  Mat<GF> tr(cf, 4, 4);
  for (unsigned i = 0; i < 2; ++i)
    for (unsigned j = 0; j < 2; ++j) tr.at(j * 2 + i, i * 2 + j) = cf.one();
  try {
    skolem_noether_lift(std_iso, tr);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::NotInner);
  }
  // identity lifts to the identity
  auto lift = skolem_noether_lift(std_iso, Mat<GF>::identity(cf, 4));
  CHECK(lift == Mat<GF>::identity(cf, 2));
}

TEST_CASE("submodule lattice: scalars only") {
  GF cf(5);
  auto lat = submodule_lattice(cf, 2, {Mat<GF>::identity(cf, 2)});
  // 6 lines + 0 + full
  CHECK(lat.subspaces.size() == 8);
  CHECK(lat.completely_reducible);
  CHECK(!lat.irreducible);
  CHECK(!lat.indecomposable);
  CHECK(lat.exhaustive);
}

TEST_CASE("submodule lattice: the full GL_2 is irreducible") {
  GF cf(5);
  Mat<GF> a(cf, 2, 2), b(cf, 2, 2);
  a.at(0, 0) = cf.from_int(2);  // diag(2, 1)
  a.at(1, 1) = cf.one();
  b.at(0, 1) = cf.one();  // [[0,1],[4,0]]
  b.at(1, 0) = cf.from_int(4);
  auto lat = submodule_lattice(cf, 2, {a, b});
  CHECK(lat.subspaces.size() == 2);
  CHECK(lat.irreducible);
  CHECK(lat.completely_reducible);
  CHECK(lat.indecomposable);
}

TEST_CASE("submodule lattice: Jordan block") {
  GF cf(5);
  Mat<GF> j(cf, 2, 2);
  j.at(0, 0) = cf.one();
  j.at(0, 1) = cf.one();
  j.at(1, 1) = cf.one();
  auto lat = submodule_lattice(cf, 2, {j});
  CHECK(lat.subspaces.size() == 3);  // 0, one line, full
  CHECK(!lat.completely_reducible);
  CHECK(!lat.irreducible);
  CHECK(lat.indecomposable);
}

TEST_CASE("randomized lattice search agrees with exhaustive enumeration") {
  for (std::uint64_t q : {2ull, 3ull, 5ull}) {
    GF cf(q);
    Rng rng(q * 100 + 7);
    for (int trial = 0; trial < 25; ++trial) {
      Mat<GF> p(cf, 2, 2);
      do {
        for (unsigned i = 0; i < 2; ++i)
          for (unsigned j = 0; j < 2; ++j) p.at(i, j) = cf.sample(rng);
      } while (rank_rref(p) != 2);
      auto ex = submodule_lattice(cf, 2, {p}, 5);
      auto rd = submodule_lattice(cf, 2, {p}, 5, true);
      CHECK(!rd.exhaustive);
      REQUIRE(ex.subspaces.size() == rd.subspaces.size());
      for (std::size_t i = 0; i < ex.subspaces.size(); ++i)
        CHECK(detail::subspace_key(ex.subspaces[i]) == detail::subspace_key(rd.subspaces[i]));
      CHECK(ex.completely_reducible == rd.completely_reducible);
      CHECK(ex.irreducible == rd.irreducible);
      CHECK(ex.indecomposable == rd.indecomposable);
    }
  }
}

TEST_CASE("lattice flags satisfy the logical implications on cyclic subgroups") {
  GF cf(5);
  Rng rng(123);
  for (int trial = 0; trial < 60; ++trial) {
    Mat<GF> p(cf, 2, 2);
    do {
      for (unsigned i = 0; i < 2; ++i)
        for (unsigned j = 0; j < 2; ++j) p.at(i, j) = cf.sample(rng);
    } while (rank_rref(p) != 2);
    auto lat = submodule_lattice(cf, 2, {p});
    if (lat.irreducible) {
      CHECK(lat.completely_reducible);
      CHECK(lat.indecomposable);
    }
    if (lat.completely_reducible && lat.indecomposable) CHECK(lat.irreducible);
  }
}

TEST_CASE("stable right ideals of M_2(F_5)") {
  GF cf(5);
  // trivial H
  auto ideals = stable_right_ideals(cf, 2, {});
  CHECK(ideals.size() == 8);
  for (const auto& i : ideals) CHECK(i.ideal_basis.size() == 2 * i.subspace.size());
  // two complementary lines give M_2 = I_U + I_W
  std::vector<const RightIdealInfo*> lines;
  for (const auto& i : ideals)
    if (i.subspace.size() == 1) lines.push_back(&i);
  CHECK(lines.size() == 6);
  SpanBuilder<GF> total(cf, 4);
  for (const auto& b : lines[0]->ideal_basis) total.insert(b);
  for (const auto& b : lines[1]->ideal_basis) total.insert(b);
  CHECK(total.rank() == 4);

  // an irreducible H: conjugation by [[0,1],[2,0]] (order 8 in GL_2(F_5))
  Mat<GF> p(cf, 2, 2);
  p.at(0, 1) = cf.one();
  p.at(1, 0) = cf.from_int(2);
  auto act = conjugation_action(cf, 2, p);
  auto ideals2 = stable_right_ideals(cf, 2, {act});
  CHECK(ideals2.size() == 2);
}

TEST_CASE("classification: entrywise M_2 with trivial Galois group") {
  auto F = f5t();
  auto dF = hasse_table(F, 12);
  KummerExtension triv(F, 1);
  auto dK = extend_to_kummer(dF, 1, 12);
  auto D = matrix_entrywise_derivation(2, dF, 12);
  AnsatzSpec ansatz;
  ansatz.degree_bound = 2;
  ansatz.den_power = 1;
  DeltaAlgebra<GF> AK = base_change_delta(D, triv, dK, 12);
  auto consts = constants_subalgebra(AK, ansatz, 8);
  REQUIRE(consts.dim() == 4);
  auto group = kummer_galois_group(triv, dK, 8, 4, 5);
  auto rep = action_on_constants(AK, consts, triv, group);
  auto iso = recognize_matrix_algebra(*consts.algebra);
  skolem_noether_lifts(rep, iso);
  auto cl = classify_delta_structure(D, triv, AK, consts, rep, iso, 8);
  CHECK(cl.completely_reducible);
  CHECK(!cl.indecomposable);
  CHECK(!cl.irreducible);
  CHECK(cl.ideals.size() == 8);
  // the two-dimensional pullbacks are the row ideals, delta- and right-stable
  unsigned two_dim = 0;
  for (const auto& i : cl.ideals)
    if (i.u_dim == 1) {
      ++two_dim;
      CHECK(i.dim == 2);
    }
  CHECK(two_dim == 6);
  CHECK(reductivity_note(cl).empty());
  CHECK(!cl.certificates.empty());
}

TEST_CASE("classification: the quaternion division model is delta-irreducible") {
  QuaternionPipeline q;
  auto rep = action_on_constants(q.AK, q.consts, q.ext, q.group);
  auto iso = recognize_matrix_algebra(*q.consts.algebra);
  skolem_noether_lifts(rep, iso);
  auto cl = classify_delta_structure(q.B, q.ext, q.AK, q.consts, rep, iso, 10);
  CHECK(cl.irreducible);
  CHECK(cl.completely_reducible);
  CHECK(cl.indecomposable);
  CHECK(cl.ideals.size() == 2);  // only 0 and A
  CHECK(!reductivity_note(cl).empty());
}

TEST_CASE("rank-1 classification is vacuously irreducible") {
  auto F = f5t();
  auto dF = hasse_table(F, 8);
  KummerExtension triv(F, 1);
  auto dK = extend_to_kummer(dF, 1, 8);
  auto D = matrix_entrywise_derivation(1, dF, 8);
  AnsatzSpec ansatz;
  ansatz.degree_bound = 1;
  ansatz.den_power = 1;
  DeltaAlgebra<GF> AK = base_change_delta(D, triv, dK, 8);
  auto consts = constants_subalgebra(AK, ansatz, 6);
  REQUIRE(consts.dim() == 1);
  auto group = kummer_galois_group(triv, dK, 6, 4, 6);
  auto rep = action_on_constants(AK, consts, triv, group);
  auto iso = recognize_matrix_algebra(*consts.algebra);
  skolem_noether_lifts(rep, iso);
  auto cl = classify_delta_structure(D, triv, AK, consts, rep, iso, 6);
  CHECK(cl.irreducible);
}
