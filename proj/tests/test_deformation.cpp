#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcdeform/courant.hpp"
#include "support.hpp"

using namespace gcdeform;
using namespace gcdeform::test;

namespace {

const IsotropicSubbundle& L() { return kodaira().l; }
const DeformationMap& E() {
  static const DeformationMap e = constrain_map(L());
  return e;
}
const MCSystem& MC() {
  static const MCSystem mc = mc_residual(L(), E());
  return mc;
}
const DeformationFamily& FAM() {
  static const DeformationFamily fam = reduce_family(L(), E(), MC());
  return fam;
}

LForm form(std::vector<std::size_t> idx, const PolyScalar& c = 1) { return LForm::basis(4, idx, c); }

std::vector<Symbol> syms(std::initializer_list<const char*> names) {
  std::vector<Symbol> out;
  for (const char* n : names) out.push_back(par(n));
  return out;
}

SymbolBindings bind(std::initializer_list<std::pair<const char*, long>> values) {
  SymbolBindings out;
  for (const auto& [n, v] : values) out[par(n)] = v;
  return out;
}

GenSection frame_section(const std::vector<std::pair<PolyScalar, std::string>>& terms) {
  GenSection s(4);
  for (const auto& [c, n] : terms) s += c * GenSection::named(kodaira().ef.frame, n);
  return s;
}

// Same as E() but with the six surviving parameters bound.
SymbolBindings six(long t11, long t12, long t14, long t21, long t22, long t32) {
  return bind({{"t11", t11}, {"t12", t12}, {"t14", t14}, {"t21", t21}, {"t22", t22}, {"t32", t32}});
}

}  // namespace

TEST_CASE("compatibility leaves six parameters in the expected pattern") {
  CHECK(E().parameters == syms({"t11", "t12", "t14", "t21", "t22", "t32"}));
  CHECK(E().eliminated.size() == 10);
  PolyScalar t11 = p("t11"), t12 = p("t12"), t14 = p("t14"), t21 = p("t21"), t22 = p("t22"), t32 = p("t32");
  std::vector<std::vector<PolyScalar>> expected = {{t11, t12, 0, t14},
                                                   {t21, t22, -t14, 0},
                                                   {0, t32, -t11, -t21},
                                                   {-t32, 0, -t12, -t22}};
  CHECK(E().eps == expected);
  CHECK(raw_parameter_name("t", 3, 2, 4) == "t32");
  CHECK(raw_parameter_name("s", 3, 12, 12) == "s3_12");
}

TEST_CASE("compatible eps~ is antisymmetric") {
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t j = 0; j < 4; ++j) CHECK((E().tilde(L(), a, j) + E().tilde(L(), j, a)).is_zero());
  }
  CHECK(E().tilde_form(L()).str(L().dual_labels()) ==
        "-1/2*t32 Tbar*^Wbar* + 1/2*t11 Tbar*^omega* + 1/2*t21 Tbar*^rho* + 1/2*t12 Wbar*^omega* + "
        "1/2*t22 Wbar*^rho* - 1/2*t14 omega*^rho*");
}

TEST_CASE("zero map is compatible and unobstructed") {
  DeformationMap z = DeformationMap::zero(4);
  CHECK(z.tilde_form(L()).is_zero());
  CHECK(mc_residual(L(), z).is_empty());
  IsotropicSubbundle same = deform_subbundle(L(), z, {});
  CHECK(same.generators() == L().generators());
  CHECK(same.separated());
}

TEST_CASE("MC residual of the Kodaira family") {
  const MCSystem& mc = MC();
  CHECK(mc.basis.size() == 4);
  CHECK(mc.differential == form({0, 1, 3}, q(-1, 4) * I * p("t12")));
  CHECK(mc.schouten == form({0, 1, 2}, q(1, 2) * I * p("t12") * p("t12")) +
                           form({0, 1, 3}, q(1, 2) * I * p("t12") * p("t22")) +
                           form({0, 2, 3}, q(-1, 2) * I * p("t12") * p("t14")));
  auto nz = mc.nonzero();
  CHECK(nz.size() == 3);
  for (const auto& c : nz) CHECK(c.substitute(bind({{"t12", 0}})).is_zero());
}

TEST_CASE("MC residual equals the involutivity defect of (1 + eps)L") {
  LForm residual(4);
  for (std::size_t k = 0; k < MC().basis.size(); ++k) residual.add(MC().basis[k], MC().constraints[k]);
  CHECK(residual == involutivity_defect(L(), E()));
}

TEST_CASE("the omega*^rho* direction alone is unobstructed") {
  DeformationMap only = E().substitute(bind({{"t11", 0}, {"t12", 0}, {"t21", 0}, {"t22", 0}, {"t32", 0}}));
  CHECK(only.parameters == syms({"t14"}));
  CHECK(only.tilde_form(L()) == form({2, 3}, q(-1, 2) * p("t14")));
  CHECK(mc_residual(L(), only).is_empty());
}

TEST_CASE("gauge image is spanned by Tbar*^rho*") {
  auto g = gauge_image(L());
  REQUIRE(g.size() == 1);
  CHECK(g[0].terms().size() == 1);
  CHECK(g[0].terms().begin()->first == indices_mask({0, 3}));
  for (const auto& x : g) CHECK(d_L_invariant(L(), x).is_zero());
}

TEST_CASE("reduced Kodaira family") {
  const DeformationFamily& fam = FAM();
  CHECK(fam.complete());
  REQUIRE(fam.solved.size() == 1);
  CHECK(fam.solved.at(par("t12")).is_zero());
  CHECK(fam.mc_free == syms({"t11", "t14", "t21", "t22", "t32"}));
  REQUIRE(fam.drops.size() == 1);
  CHECK(fam.drops[0].dropped == par("t21"));
  CHECK(fam.free == syms({"t11", "t14", "t22", "t32"}));
  std::vector<LForm> expected = {form({0, 2}, q(1, 2)), form({2, 3}, q(-1, 2)), form({1, 3}, q(1, 2)),
                                 form({0, 1}, q(-1, 2))};
  CHECK(fam.reduced_basis == expected);
  CHECK(mc_residual(L(), fam.general).is_empty());
}

TEST_CASE("gauge directions added to MC solutions stay unobstructed") {
  DeformationMap with_gauge = E().substitute(bind({{"t12", 0}}));
  CHECK(mc_residual(L(), with_gauge).is_empty());
}

TEST_CASE("abelian family is the whole compatible space") {
  IsotropicSubbundle l = build_complex_eigenbundle(eigenframe(abelian(4), standard_j(4)));
  DeformationMap e = constrain_map(l);
  MCSystem mc = mc_residual(l, e);
  CHECK(mc.is_empty());
  DeformationFamily fam = reduce_family(l, e, mc);
  CHECK(fam.drops.empty());
  CHECK(fam.free == e.parameters);
  CHECK(fam.free.size() == 6);
}

TEST_CASE("deformed generators") {
  IsotropicSubbundle le = deform_subbundle(L(), E(), six(2, 3, 5, 7, 11, 13));
  auto c = [](long v) { return PolyScalar(v); };
  CHECK(le.generators()[0] == frame_section({{c(2), "T"}, {c(7), "W"}, {c(1), "Tbar"}, {c(-13), "rhobar"}}));
  CHECK(le.generators()[1] == frame_section({{c(3), "T"}, {c(11), "W"}, {c(1), "Wbar"}, {c(13), "omegabar"}}));
  CHECK(le.generators()[2] == frame_section({{c(-5), "W"}, {c(1), "omega"}, {c(-2), "omegabar"}, {c(-3), "rhobar"}}));
  CHECK(le.generators()[3] == frame_section({{c(5), "T"}, {c(1), "rho"}, {c(-7), "omegabar"}, {c(-11), "rhobar"}}));
  CHECK(le.labels() == std::vector<std::string>{"Tbar'", "Wbar'", "omega'", "rho'"});
  CHECK_THROWS_AS(deform_subbundle(L(), E(), bind({{"t11", 1}})), std::invalid_argument);
}

TEST_CASE("(1 + eps)L is isotropic for random compatible bindings") {
  auto points = random_bindings(E().parameters, 25, 99);
  for (const auto& at : points) CHECK(deform_subbundle(L(), E(), at).isotropic());
}

TEST_CASE("type at points") {
  const DeformationMap& g = FAM().general;
  auto at = [](long t11, long t14, long t22, long t32) {
    return bind({{"t11", t11}, {"t14", t14}, {"t22", t22}, {"t32", t32}});
  };
  CHECK(type_of(L(), g, at(0, 1, 0, 0)).k == 0);
  CHECK(type_of(L(), g, at(0, 1, 0, 0)).label == "symplectic type");
  CHECK(type_of(L(), g, at(0, 0, 0, 1)).k == 2);
  CHECK(type_of(L(), g, at(0, 0, 0, 1)).label == "complex type, non-classical");
  CHECK(type_of(L(), g, at(0, 0, 0, 0)).k == 2);
  CHECK(type_of(L(), g, at(0, 0, 0, 0)).label == "classical complex");
  CHECK(type_of(L(), g, at(3, 0, -2, 0)).label == "classical complex");
  CHECK(type_label(1, 2, 3) == "other");
}

TEST_CASE("type is invariant under rescaling deformed generators") {
  IsotropicSubbundle le = deform_subbundle(L(), E(), six(1, 0, 2, 0, 1, 1));
  auto gens = le.generators();
  gens[0] = PolyScalar(GaussianRational(3) * I) * gens[0];
  gens[2] = PolyScalar(q(-1, 2)) * gens[2];
  IsotropicSubbundle scaled(le.frame(), gens, le.labels());
  CHECK(type_of(scaled).k == type_of(le).k);
  CHECK(type_of(scaled).label == type_of(le).label);
}

TEST_CASE("type strata of the Kodaira family") {
  Stratification st = stratify_type(L(), FAM().general);
  CHECK_FALSE(st.refused);
  REQUIRE(st.strata.size() == 2);
  CHECK(st.strata[0].conditions() == "t14 != 0");
  CHECK(st.strata[0].k == 0);
  CHECK(st.strata[1].conditions() == "t14 = 0");
  CHECK(st.strata[1].k == 2);
  REQUIRE(st.strata[1].substrata.size() == 2);
  CHECK(st.strata[1].substrata[0].conditions() == "t14 = 0, t32 != 0");
  CHECK(st.strata[1].substrata[0].label == "complex type, non-classical");
  CHECK(st.strata[1].substrata[1].conditions() == "t14 = 0, t32 = 0");
  CHECK(st.strata[1].substrata[1].label == "classical complex");
  CHECK(check_strata(L(), FAM().general, st).empty());
  CHECK(check_strata_serial(L(), FAM().general, st).empty());
}

TEST_CASE("zero map has a single stratum of complex type") {
  Stratification st = stratify_type(L(), DeformationMap::zero(4));
  REQUIRE(st.strata.size() == 1);
  CHECK(st.strata[0].k == 2);
  CHECK(st.strata[0].conditions() == "all parameters");
}

TEST_CASE("stratification is refused above the parameter limit") {
  DeformationMap raw = DeformationMap::zero(4);
  for (std::size_t b = 0; b < 4; ++b) {
    for (std::size_t a = 0; a < 4; ++a) {
      Symbol s = par(raw_parameter_name("t", b + 1, a + 1, 4));
      raw.eps[b][a] = s;
      raw.parameters.push_back(s);
    }
  }
  Stratification st = stratify_type(L(), raw);
  CHECK(st.refused);
  CHECK(st.strata.empty());
  CHECK(st.generic_k == 0);
}

TEST_CASE("random points of the reduced family") {
  auto points = random_bindings(FAM().free, 20, 7);
  CHECK(points == random_bindings(FAM().free, 20, 7));
  auto checks = check_points(L(), FAM().general, points);
  REQUIRE(checks.size() == 20);
  for (const auto& c : checks) CHECK(c.ok());
  auto serial = check_points_serial(L(), FAM().general, points);
  for (std::size_t k = 0; k < checks.size(); ++k) {
    CHECK(serial[k].k == checks[k].k);
    CHECK(serial[k].ok() == checks[k].ok());
  }
}

TEST_CASE("points off the MC locus fail the involutivity check") {
  auto checks = check_points(L(), E(), {six(0, 1, 0, 0, 0, 0)});
  CHECK_FALSE(checks[0].mc_zero);
  CHECK_FALSE(checks[0].involutive);
}
