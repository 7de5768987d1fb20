#include "hasseforge/scenario.hpp"

// The bundled demos.  Each is an ordinary scenario config; `run builtin:<name>`
// and the shipped files under configs/ carry the same content.

namespace hf {

namespace {

struct Builtin {
  const char* name;
  const char* summary;
  const char* explain;
  const char* config;
};

const Builtin kBuiltins[] = {
    {"hasse-axioms",
     "axiom suite for the Hasse derivative on F_5(t)",
     "Verifies the defining laws of an iterative derivation for the Hasse derivative on "
     "F_5(t): order-0 identity, the order-graded Leibniz rule on products, and the "
     "composition rule delta^(n) o delta^(m) = C(m+n,n) delta^(m+n), on seeded random "
     "rational functions for all orders m+n <= 24; also the closed form "
     "delta^(n)(t^m) = C(m,n) t^(m-n) with binomials reduced by base-p digits.",
     R"({
  "name": "hasse-axioms",
  "seed": 1,
  "field": {"char": 5},
  "operations": [
    {"op": "hasse_axioms", "orders": 24, "samples": 500, "max_degree": 6},
    {"op": "closed_form", "max_exponent": 30}
  ]
})"},
    {"kummer-extend",
     "extension of the Hasse derivative to F_5(s), s^2 = t",
     "Extends the Hasse derivative uniquely to the Kummer extension K = F_5(s) with "
     "s^2 = t by implicit differentiation of the defining relation, then checks that "
     "the extended table restricts to the base field on sampled elements and passes "
     "the full axiom suite; the first image is delta^(1)(s) = 3/s.",
     R"({
  "name": "kummer-extend",
  "seed": 1,
  "field": {"char": 5},
  "extension": {"degree": 2},
  "operations": [
    {"op": "kummer_extend", "orders": 20, "restriction_samples": 200,
     "axiom_orders": 10, "axiom_samples": 60}
  ]
})"},
    {"filtration-extend",
     "derivation on the quaternion algebra from a two-level filtration of forms",
     "Builds the derivation on the crossed product B = (K|F, G, f) a second way: orders "
     "j with p^(i-1) <= j <= p^i - 1 differentiate the coefficients of elements rewritten "
     "in a level-i form basis over the constant subfield F_i = F(t^(p^i)).  The images "
     "must agree exactly with the crossed-product construction at every order.",
     R"({
  "name": "filtration-extend",
  "seed": 1,
  "field": {"char": 5},
  "extension": {"degree": 2},
  "cocycle": {"norm_value": 2},
  "operations": [
    {"op": "crossed_product", "trunc": 24},
    {"op": "construction_equivalence", "trunc": 24}
  ]
})"},
    {"crossed-product-quaternion",
     "quaternion crossed product with a constant cocycle, fully validated",
     "Constructs the quaternion algebra as a crossed product of K = F_5(s), s^2 = t, "
     "with the cocycle of u^2 = 2 (values in the constants), extends the derivation by "
     "differentiating coefficients while fixing every u_sigma, validates all delta-"
     "algebra laws to order 24, and checks the two product identities "
     "delta^(n)(k u k' u') = delta^(n)(k sigma(k')) f u'' exactly on all basis pairs.",
     R"({
  "name": "crossed-product-quaternion",
  "seed": 1,
  "field": {"char": 5},
  "extension": {"degree": 2},
  "cocycle": {"norm_value": 2},
  "operations": [
    {"op": "crossed_product", "trunc": 24}
  ]
})"},
    {"split-check",
     "splitting of the quaternion model over K via the mu_K isomorphism",
     "Forms B (x) K with the transported derivation, solves for the constants inside a "
     "degree-bounded ansatz, and tests whether multiplication "
     "C (x) K -> B (x) K is an isomorphism: split exactly when the constants have full "
     "dimension and full rank over K.  The constants algebra is certified central "
     "simple over F_5.",
     R"({
  "name": "split-check",
  "seed": 1,
  "field": {"char": 5},
  "extension": {"degree": 2},
  "cocycle": {"norm_value": 2},
  "ansatz": {"num_degree_bound": 4, "den_power": 2},
  "operations": [
    {"op": "crossed_product", "trunc": 14},
    {"op": "split_check", "orders": 10, "expect_split": true}
  ]
})"},
    {"nonexample-nilpotent",
     "the obstruction witness: y - x is nilpotent after base change",
     "For f = x^(p^i) the commutative algebra F_i[y]/(y^(p^i) - f) (x) F contains the "
     "nonzero element z = y - x with z^(p^i) = (y - x)^(p^i) = f - f = 0, so the base "
     "change has zero divisors and can never be a division algebra.  The witness is "
     "certified by exact expansion and an element probe.",
     R"({
  "name": "nonexample-nilpotent",
  "seed": 1,
  "field": {"char": 2},
  "operations": [
    {"op": "nilpotent_witness", "level": 1}
  ]
})"},
    {"classify-matrix",
     "delta-right-ideal structure of M_2 with entrywise derivation",
     "The entrywise derivation on M_2(F) is split by the trivial extension with trivial "
     "Galois group, so every subspace of F_5^2 is invariant; the pulled-back ideals are "
     "the column-space ideals, each verified right-stable and delta-stable, and the "
     "algebra is delta-completely-reducible but decomposable.",
     R"({
  "name": "classify-matrix",
  "seed": 1,
  "field": {"char": 5},
  "ansatz": {"num_degree_bound": 2, "den_power": 1},
  "operations": [
    {"op": "classify", "source": "matrix", "n": 2, "orders": 8,
     "expect_completely_reducible": true,
     "expect_irreducible": false,
     "expect_indecomposable": false}
  ]
})"},
    {"classify-division",
     "delta-irreducibility of the quaternion division model",
     "Splits the quaternion model over K, computes the Galois action on the constants "
     "M_2(F_5), lifts it to GL_2 by solving the intertwining equations, and finds the "
     "invariant-subspace lattice trivial: the algebra is delta-irreducible, matching "
     "the fact that a division algebra has no proper right ideals at all; a "
     "reductivity certificate is emitted.",
     R"({
  "name": "classify-division",
  "seed": 1,
  "field": {"char": 5},
  "extension": {"degree": 2},
  "cocycle": {"norm_value": 2},
  "ansatz": {"num_degree_bound": 4, "den_power": 2},
  "operations": [
    {"op": "crossed_product", "trunc": 16},
    {"op": "classify", "source": "crossed", "orders": 8,
     "expect_completely_reducible": true,
     "expect_irreducible": true,
     "expect_indecomposable": true}
  ]
})"},
    {"char0-divided-powers",
     "divided powers of d/dt over Q(t) with exact rationals",
     "In characteristic 0 every iterative derivation is the divided-power family "
     "delta^(n) = (d/dt)^n / n! of its first-order part; the table built from d/dt "
     "passes the full axiom suite with exact arbitrary-precision arithmetic.",
     R"({
  "name": "char0-divided-powers",
  "seed": 1,
  "field": {"char": 0},
  "operations": [
    {"op": "char0_axioms", "orders": 12, "samples": 60, "max_degree": 5}
  ]
})"},
};

}  // namespace

const std::vector<std::pair<std::string, std::string>>& builtin_scenarios() {
  static const std::vector<std::pair<std::string, std::string>> list = [] {
    std::vector<std::pair<std::string, std::string>> v;
    for (const auto& b : kBuiltins) v.emplace_back(b.name, b.summary);
    return v;
  }();
  return list;
}

const char* builtin_config(const std::string& name) {
  for (const auto& b : kBuiltins)
    if (name == b.name) return b.config;
  return nullptr;
}

std::string explain_scenario(const std::string& name) {
  for (const auto& b : kBuiltins)
    if (name == b.name) return b.explain;
  fail(Err::UnknownScenario, "no builtin scenario named '" + name + "'");
}

}  // namespace hf
