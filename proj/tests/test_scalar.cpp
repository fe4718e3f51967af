#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace gcdeform;
using namespace gcdeform::test;

TEST_CASE("gaussian rationals render canonically") {
  CHECK(GaussianRational().str() == "0");
  CHECK(GaussianRational(3).str() == "3");
  CHECK(q(-1, 2).str() == "-1/2");
  CHECK(I.str() == "i");
  CHECK((-I).str() == "-i");
  CHECK((q(1, 2) * I).str() == "1/2*i");
  CHECK((GaussianRational(1) - q(3, 4) * I).str() == "1 - 3/4*i");
  CHECK(q(2, 4) == q(1, 2));
  CHECK((I * I) == GaussianRational(-1));
  CHECK((GaussianRational(1) / (GaussianRational(1) + I)) == q(1, 2) - q(1, 2) * I);
}

TEST_CASE("substitute examples") {
  CHECK((p("t14") * p("x") + p("t32")).substitute(SymbolBindings{{par("t14"), 0}}) == p("t32"));
  PolyScalar m = f("alpha4") * f("beta1") * f("u2");
  CHECK((p("t12") * m).substitute(SymbolBindings{{par("t12"), 1}}) == m);
  CHECK((I * p("t3")).substitute(SymbolBindings{{par("t3"), 2}}) == PolyScalar(GaussianRational(2) * I));
}

TEST_CASE("substituting a coefficient function by a value is rejected") {
  CHECK_THROWS_AS(f("u1").substitute(SymbolBindings{{fun("u1"), 1}}), std::invalid_argument);
  CHECK(f("u1").substitute(PolyBindings{{fun("u1"), p("t1")}}) == p("t1"));
}

TEST_CASE("derivation symbols are first order only") {
  CHECK_THROWS_AS(DerivationSymbol("T", par("t1")), std::invalid_argument);
  PolyScalar x = d("Tbar", "alpha1");
  CHECK(x.str() == "Tbar(alpha1)");
  CHECK(x.has_derivations());
  CHECK(x.has_functions());
}

TEST_CASE("monomial order is lexicographic on name then direction") {
  PolyScalar x = d("Wbar", "u1") + f("u1") + d("Tbar", "u1") + f("alpha2");
  CHECK(x.str() == "alpha2 + u1 + Tbar(u1) + Wbar(u1)");
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  std::vector<PolyScalar> gens = {p("t1"), p("t2"), f("u1"), d("T", "u2")};
  for (int trial = 0; trial < 60; ++trial) {
    PolyScalar a = random_poly(rng, gens), b = random_poly(rng, gens), c = random_poly(rng, gens);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == PolyScalar());
    CHECK(a * PolyScalar(1) == a);
  }
}

TEST_CASE("substitute commutes with arithmetic") {
  std::mt19937 rng(12);
  std::vector<PolyScalar> gens = {p("t1"), p("t2"), p("t3"), f("u1")};
  for (int trial = 0; trial < 60; ++trial) {
    PolyScalar a = random_poly(rng, gens), b = random_poly(rng, gens);
    SymbolBindings at{{par("t1"), random_gaussian(rng)}, {par("t2"), random_gaussian(rng)}};
    CHECK((a * b).substitute(at) == a.substitute(at) * b.substitute(at));
    CHECK((a + b).substitute(at) == a.substitute(at) + b.substitute(at));
    PolyBindings sub{{par("t3"), random_poly(rng, {p("t1"), f("u1")})}};
    CHECK((a * b).substitute(sub) == a.substitute(sub) * b.substitute(sub));
  }
}

TEST_CASE("partial derivatives") {
  PolyScalar x = p("t1") * p("t1") * f("u1") + GaussianRational(3) * p("t2");
  CHECK(x.partial(par("t1")) == GaussianRational(2) * p("t1") * f("u1"));
  CHECK(x.partial(par("t2")) == PolyScalar(3));
  CHECK(x.degree_in({par("t1"), par("t2")}) == 2);
}

TEST_CASE("solve_linear examples") {
  std::vector<Symbol> six = {par("t11"), par("t12"), par("t21"), par("t22"), par("t14"), par("t32")};
  SUBCASE("single t12 constraint") {
    auto s = solve_linear({q(1, 2) * I * p("t12")}, six);
    CHECK(s.consistent);
    REQUIRE(s.bindings.size() == 1);
    CHECK(s.bindings.at(par("t12")) == PolyScalar());
    CHECK(s.free == std::vector<Symbol>{par("t11"), par("t21"), par("t22"), par("t14"), par("t32")});
  }
  SUBCASE("empty system") {
    auto s = solve_linear({}, six);
    CHECK(s.bindings.empty());
    CHECK(s.free == six);
  }
  SUBCASE("invertible 2x2") {
    auto s = solve_linear({p("t11") - p("t22"), p("t11") + p("t22")}, {par("t11"), par("t22")});
    CHECK(s.free.empty());
    CHECK(s.bindings.at(par("t11")) == PolyScalar());
    CHECK(s.bindings.at(par("t22")) == PolyScalar());
  }
  SUBCASE("inconsistent") {
    auto s = solve_linear({p("t1") + PolyScalar(1), p("t1")}, {par("t1")});
    CHECK_FALSE(s.consistent);
  }
  SUBCASE("nonlinear rows are returned verbatim") {
    PolyScalar nl = p("t1") * p("t2") + p("t1");
    auto s = solve_linear({nl, p("t3") - p("t1")}, {par("t1"), par("t2"), par("t3")});
    REQUIRE(s.residual.size() == 1);
    CHECK(s.residual[0] == nl);
    CHECK(s.bindings.at(par("t3")) == p("t1"));
  }
}

TEST_CASE("solve_linear bindings substituted back give zero") {
  std::mt19937 rng(13);
  std::vector<Symbol> unknowns = {par("a"), par("b"), par("c"), par("e"), par("g")};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<PolyScalar> system;
    for (int r = 0; r < 3; ++r) {
      PolyScalar row = PolyScalar(random_gaussian(rng)) * p("s");
      for (const auto& u : unknowns) row += random_gaussian(rng, 2) * PolyScalar(u);
      system.push_back(row);
    }
    auto s = solve_linear(system, unknowns);
    REQUIRE(s.consistent);
    CHECK(s.residual.empty());
    PolyBindings back(s.bindings.begin(), s.bindings.end());
    for (const auto& row : system) CHECK(row.substitute(back).is_zero());
  }
}

TEST_CASE("solve_polynomial_system applies the single-power rule") {
  auto s = solve_polynomial_system({p("t12") * p("t12"), p("t12") * p("t22") - p("t12")},
                                   {par("t12"), par("t22")});
  CHECK(s.consistent);
  CHECK(s.residual.empty());
  CHECK(s.bindings.at(par("t12")) == PolyScalar());
  CHECK(s.free == std::vector<Symbol>{par("t22")});
  auto r = solve_polynomial_system({p("t1") * p("t2")}, {par("t1"), par("t2")});
  CHECK(r.residual.size() == 1);
}
