#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcdeform/courant.hpp"
#include "support.hpp"

using namespace gcdeform;
using namespace gcdeform::test;

namespace {

const IsotropicSubbundle& L() { return kodaira().l; }

// Generator indices of L: Tbar, Wbar, omega, rho.
LForm form(std::vector<std::size_t> idx, const PolyScalar& c = 1) { return LForm::basis(4, idx, c); }

LForm all_degrees_random(std::mt19937& rng, std::size_t degree) {
  return random_form(rng, 4, degree, {p("t1"), p("t2"), p("t3")});
}

Components anchor_of(const Components& coords) {
  Components out(L().frame().dim());
  const Matrix& a = L().anchor();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (!a(r, c).is_zero()) out[r] += coords[c] * a(r, c);
    }
  }
  return out;
}

// a(X0) applied to h, with X0 = u1 Tbar + u2 Wbar + ...
PolyScalar along_x0(const PolyScalar& h) { return apply_vector(L().frame(), anchor_of(general_coords("u", 4)), h); }

// t (T(a_x) b_y + T(b_y) a_x - T(a_y) b_x - T(b_x) a_y) along direction T for u-coefficient uk.
PolyScalar expansion_row(const std::string& t, const std::string& uk, const std::string& dir, int x, int y) {
  auto a = [](int k) { return "alpha" + std::to_string(k); };
  auto b = [](int k) { return "beta" + std::to_string(k); };
  return p(t) * f(uk) *
         (d(dir, a(x)) * f(b(y)) + d(dir, b(y)) * f(a(x)) - d(dir, a(y)) * f(b(x)) - d(dir, b(x)) * f(a(y)));
}

}  // namespace

TEST_CASE("Kodaira L is maximal isotropic, involutive and meets its conjugate trivially") {
  CHECK(L().labels() == std::vector<std::string>{"Tbar", "Wbar", "omega", "rho"});
  CHECK(L().dual_labels() == std::vector<std::string>{"Tbar*", "Wbar*", "omega*", "rho*"});
  CHECK(L().conjugate_labels() == std::vector<std::string>{"T", "W", "omegabar", "rhobar"});
  CHECK(L().isotropic());
  CHECK(L().involutive());
  CHECK(L().separated());
  CHECK(L().failures().empty());
}

TEST_CASE("abelian algebra with any J gives an involutive L") {
  IsotropicSubbundle l = build_complex_eigenbundle(eigenframe(abelian(4), standard_j(4)));
  CHECK(l.involutive());
  CHECK(l.isotropic());
  CHECK(l.separated());
  CHECK(gauge_image(l).empty());
}

TEST_CASE("constructor rejects dependent or wrongly sized generator sets") {
  const FrameAlgebra& g = kodaira().ef.frame;
  auto t = GenSection::named(g, "T");
  CHECK_THROWS_AS(IsotropicSubbundle(g, {t, t, GenSection::named(g, "W"), GenSection::named(g, "omega")},
                                     {"a", "b", "c", "d"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(IsotropicSubbundle(g, {t}, {"a"}), std::invalid_argument);
}

TEST_CASE("non-isotropic and non-involutive spans are reported") {
  const FrameAlgebra& g = kodaira().ef.frame;
  auto n = [&](const char* s) { return GenSection::named(g, s); };
  IsotropicSubbundle bad(g, {n("T"), n("omega"), n("W"), n("rhobar")}, {"a", "b", "c", "d"});
  CHECK_FALSE(bad.isotropic());
  CHECK_FALSE(bad.failures().empty());
  IsotropicSubbundle tangent(g, {n("T"), n("W"), n("Tbar"), n("Wbar")}, {"a", "b", "c", "d"});
  CHECK(tangent.isotropic());
  CHECK(tangent.involutive());
  CHECK_FALSE(tangent.separated());
}

TEST_CASE("symplectic eigenbundle involutivity matches dw") {
  const FrameAlgebra& g = kodaira().real;
  // Generators X, Y, U, V.
  InvariantForm closed = InvariantForm::basis(4, {0, 3}) + InvariantForm::basis(4, {1, 2});
  InvariantForm open = InvariantForm::basis(4, {0, 1}) + InvariantForm::basis(4, {2, 3});
  REQUIRE(ce_differential(g, closed).is_zero());
  REQUIRE_FALSE(ce_differential(g, open).is_zero());
  IsotropicSubbundle l = build_symplectic_eigenbundle(g, closed);
  CHECK(l.labels() == std::vector<std::string>{"l_X", "l_Y", "l_U", "l_V"});
  CHECK(l.isotropic());
  CHECK(l.involutive());
  CHECK(l.separated());
  CHECK(type_of(l).k == 0);
  CHECK(type_of(l).label == "symplectic type");
  IsotropicSubbundle m = build_symplectic_eigenbundle(g, open);
  CHECK(m.isotropic());
  CHECK_FALSE(m.involutive());
  IsotropicSubbundle a = build_symplectic_eigenbundle(abelian(4), open);
  CHECK(a.involutive());
  CHECK(type_of(a).k == 0);
}

TEST_CASE("symplectic eigenbundle rejects degenerate forms and complex frames") {
  CHECK_THROWS_AS(build_symplectic_eigenbundle(kodaira().real, InvariantForm::basis(4, {0, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_symplectic_eigenbundle(kodaira().ef.frame, InvariantForm::basis(4, {0, 2}) +
                                                                       InvariantForm::basis(4, {1, 3})),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_symplectic_eigenbundle(kodaira().real, InvariantForm::basis(4, {0, 3}, f("u1")) +
                                                                   InvariantForm::basis(4, {1, 2})),
                  std::invalid_argument);
}

TEST_CASE("undeformed Kodaira L is of classical complex type") {
  TypeInfo t = type_of(L());
  CHECK(t.k == 2);
  CHECK(t.label == "classical complex");
}

TEST_CASE("algebroid bracket is the restricted Courant bracket and the anchor is compatible") {
  const auto& gens = L().generators();
  const auto& c = L().structure();
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      GenSection br = courant_bracket(L().frame(), gens[a], gens[b]);
      CHECK(L().brackets()[a][b] == br);
      Components coords(4);
      for (std::size_t k = 0; k < 4; ++k) coords[k] = c(a, b, k);
      CHECK(L().section(coords) == br);
      CHECK(br.tangent() == vector_bracket(L().frame(), gens[a].tangent(), gens[b].tangent()));
    }
  }
}

TEST_CASE("theta pairs Lbar with L and reproduces the half factors") {
  const Matrix& th = L().theta();
  // theta(T) = 1/2 omega*, theta(omegabar) = 1/2 Tbar*.
  CHECK(th(0, 2) == q(1, 2));
  CHECK(th(2, 0) == q(1, 2));
  CHECK(th(1, 3) == q(1, 2));
  CHECK(th(3, 1) == q(1, 2));
  CHECK(L().theta_of(0) == form({2}, q(1, 2)));
}

TEST_CASE("transported bracket on L* has the single generator pair [omega*, Wbar*]") {
  const auto& tb = L().transported_brackets();
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      if ((a == 2 && b == 1) || (a == 1 && b == 2)) continue;
      CHECK(tb[a][b].is_zero());
    }
  }
  CHECK(tb[2][1] == form({0}, -I));
  CHECK(tb[1][2] == form({0}, I));
}

TEST_CASE("d_L o d_L = 0 on the full exterior basis of L*") {
  for (std::size_t degree = 0; degree <= 4; ++degree) {
    for (BasisMask m : basis_masks(4, degree)) {
      LForm x(4);
      x.add(m, 1);
      CHECK(d_L_invariant(L(), d_L_invariant(L(), x)).is_zero());
    }
  }
}

TEST_CASE("d_L_invariant examples") {
  LForm sigma = form({0}, p("t1")) + form({1}, p("t2")) + form({2}, p("t3")) + form({3}, p("t4"));
  CHECK(d_L_invariant(L(), sigma) == form({0, 3}, q(-1, 2) * I * p("t3")));
  CHECK(d_L_invariant(L(), LForm::scalar(4, p("t1"))).is_zero());
  CHECK_THROWS_AS(d_L_invariant(L(), form({0}, f("u1"))), std::invalid_argument);
}

TEST_CASE("d_L of the compatible deformation form") {
  LForm e = constrain_map(L()).tilde_form(L());
  CHECK(d_L_invariant(L(), e) == form({0, 1, 3}, q(-1, 4) * I * p("t12")));
}

TEST_CASE("d_L_general on a 1-form") {
  LForm sigma = form({0}, p("t1")) + form({1}, p("t2")) + form({2}, p("t3")) + form({3}, p("t4"));
  PolyScalar got = d_L_general(L(), sigma, {general_coords("u", 4), general_coords("alpha", 4)});
  CHECK(got == q(1, 2) * I * p("t3") * (f("alpha1") * f("u4") - f("u1") * f("alpha4")));
}

TEST_CASE("d_L_general agrees with d_L_invariant and derivative terms cancel") {
  std::vector<Components> args = {general_coords("u", 4), general_coords("alpha", 4), general_coords("beta", 4)};
  std::mt19937 rng(41);
  for (std::size_t degree = 0; degree <= 2; ++degree) {
    for (BasisMask m : basis_masks(4, degree)) {
      LForm x(4);
      x.add(m, 1);
      std::vector<Components> used(args.begin(), args.begin() + static_cast<long>(degree + 1));
      PolyScalar general = d_L_general(L(), x, used);
      CHECK_FALSE(general.has_derivations());
      CHECK(general == d_L_invariant(L(), x).evaluate(used));
    }
    LForm r = all_degrees_random(rng, degree);
    std::vector<Components> used(args.begin(), args.begin() + static_cast<long>(degree + 1));
    CHECK(d_L_general(L(), r, used) == d_L_invariant(L(), r).evaluate(used));
  }
}

TEST_CASE("d_L_general differentiates function coefficients once") {
  PolyScalar got = d_L_general(L(), form({0}, f("h")), {general_coords("u", 4), general_coords("alpha", 4)});
  CHECK(got.has_derivations());
  Components second = general_coords("u", 4);
  second[0] = d("Tbar", "u1");
  CHECK_THROWS_AS(d_L_general(L(), form({0}, f("h")), {second, general_coords("alpha", 4)}),
                  HigherDerivativeError);
  CHECK_THROWS_AS(d_L_general(L(), form({0, 1, 2}), {general_coords("u", 4)}), std::invalid_argument);
}

TEST_CASE("anchor term of d_L on the deformation form against a reference expansion") {
  LForm e = constrain_map(L()).tilde_form(L());
  PolyScalar got = along_x0(e.evaluate({general_coords("alpha", 4), general_coords("beta", 4)}));
  PolyScalar reference;
  for (const auto& [uk, dir] : {std::pair{"u1", "Tbar"}, std::pair{"u2", "Wbar"}}) {
    reference += expansion_row("t12", uk, dir, 2, 3) + expansion_row("t21", uk, dir, 1, 4) + expansion_row("t22", uk, dir, 2, 4) +
               expansion_row("t14", uk, dir, 4, 3) + expansion_row("t32", uk, dir, 2, 1);
  }
  reference += expansion_row("t11", "u2", "Wbar", 1, 3);
  // Reference t11 u1 row, which differs from the computed one.
  reference += p("t11") * f("u1") *
             (d("Tbar", "alpha1") * f("beta3") - d("Tbar", "beta3") * f("alpha1") - d("Tbar", "alpha3") * f("beta1") -
              d("Tbar", "beta2") * f("alpha3"));
  reference *= q(1, 2);
  PolyScalar correction = q(1, 2) * p("t11") * f("u1") *
                          (GaussianRational(2) * d("Tbar", "beta3") * f("alpha1") - d("Tbar", "beta1") * f("alpha3") +
                           d("Tbar", "beta2") * f("alpha3"));
  CHECK(got - reference == correction);
}

TEST_CASE("Schouten bracket is graded skew-symmetric") {
  std::mt19937 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    for (auto [da, db] : {std::pair<std::size_t, std::size_t>{1, 2}, {1, 1}, {2, 2}, {0, 1}, {0, 2}}) {
      LForm a = all_degrees_random(rng, da), b = all_degrees_random(rng, db);
      const long sign = ((static_cast<long>(da) - 1) * (static_cast<long>(db) - 1)) % 2 == 0 ? -1 : 1;
      CHECK(schouten_bracket(L(), a, b) == PolyScalar(sign) * schouten_bracket(L(), b, a));
    }
  }
}

TEST_CASE("Schouten bracket examples") {
  CHECK(schouten_bracket(L(), form({0, 2}), form({1, 3})).is_zero());
  LForm a = form({0}, 3) + form({3}, q(1, 2) * I);
  CHECK(schouten_bracket(L(), a, a).is_zero());
  CHECK(schouten_bracket(L(), form({2}), form({1})) == form({0}, -I));
  CHECK_THROWS_AS(schouten_bracket(L(), form({0}, f("u1")), form({1})), std::invalid_argument);
}
