#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gcdeform/courant.hpp"
#include "support.hpp"

using namespace gcdeform;
using namespace gcdeform::test;

namespace {

StructureConstants kodaira_constants() { return kodaira_preset().first.structure(); }

std::vector<GaussianRational> unit(std::size_t m, std::size_t k) {
  std::vector<GaussianRational> v(m);
  v[k] = 1;
  return v;
}

std::vector<GaussianRational> mat_vec(const Matrix& a, const std::vector<GaussianRational>& v) {
  std::vector<GaussianRational> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out[r] += a(r, c) * v[c];
  }
  return out;
}

}  // namespace

TEST_CASE("Jacobi holds on the Kodaira and abelian algebras") {
  CHECK(validate_jacobi(kodaira().real).empty());
  CHECK(validate_jacobi(abelian(5)).empty());
}

TEST_CASE("Jacobi holds for [X,Y] = U, [X,U] = Y") {
  StructureConstants c(4);
  c(0, 1, 2) = 1;
  c(1, 0, 2) = -1;
  c(0, 2, 1) = 1;
  c(2, 0, 1) = -1;
  CHECK(validate_jacobi(FrameAlgebra({"X", "Y", "U", "V"}, c)).empty());
}

TEST_CASE("Jacobi fails on the seeded-defect mutant [X,U] = X") {
  StructureConstants c = kodaira_constants();
  c(0, 2, 0) = 1;
  c(2, 0, 0) = -1;
  auto v = validate_jacobi(FrameAlgebra({"X", "Y", "U", "V"}, c));
  REQUIRE(v.size() == 1);
  CHECK(v[0].i == 0);
  CHECK(v[0].j == 1);
  CHECK(v[0].k == 2);
  CHECK(v[0].defect == std::vector<GaussianRational>{0, 0, -1, 0});
}

TEST_CASE("frame construction rejects non-skew constants and repeated names") {
  StructureConstants c(2);
  c(0, 1, 0) = 1;
  CHECK_THROWS_AS(FrameAlgebra({"A", "B"}, c), std::invalid_argument);
  CHECK_THROWS_AS(FrameAlgebra({"A", "A"}, StructureConstants(2)), std::invalid_argument);
}

TEST_CASE("Kodaira preset data") {
  auto [g, j] = kodaira_preset();
  CHECK(g.names() == std::vector<std::string>{"X", "Y", "U", "V"});
  Matrix minus_one = Matrix::identity(4);
  for (std::size_t k = 0; k < 4; ++k) minus_one(k, k) = -1;
  CHECK(j.matrix() * j.matrix() == minus_one);
  CHECK(g.bracket(0, 1) == std::vector<GaussianRational>{0, 0, 1, 0});
}

TEST_CASE("ComplexOp requires J^2 = -1") {
  CHECK_THROWS_AS(ComplexOp(Matrix::identity(2)), std::invalid_argument);
  CHECK_THROWS_AS(ComplexOp(Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("Kodaira eigenframe has the single bracket [T, Tbar] = i/2 (W + Wbar)") {
  const Eigenframe& e = kodaira().ef;
  CHECK(e.frame.names() == std::vector<std::string>{"T", "W", "Tbar", "Wbar"});
  CHECK(e.frame.dual_names() == std::vector<std::string>{"omega", "rho", "omegabar", "rhobar"});
  std::size_t nonzero = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      auto v = e.frame.bracket(a, b);
      if (std::any_of(v.begin(), v.end(), [](const auto& x) { return !x.is_zero(); })) ++nonzero;
    }
  }
  CHECK(nonzero == 1);
  CHECK(e.frame.bracket(0, 2) == std::vector<GaussianRational>{0, q(1, 2) * I, 0, q(1, 2) * I});
  CHECK(e.frame.conjugate(0) == 2);
  CHECK(e.frame.conjugate(3) == 1);
}

TEST_CASE("eigenframe vectors are +-i eigenvectors of J") {
  auto [g, j] = kodaira_preset();
  const Eigenframe& e = kodaira().ef;
  for (std::size_t b = 0; b < 4; ++b) {
    auto v = e.to_real.column(b);
    auto jv = mat_vec(j.matrix(), v);
    const GaussianRational lambda = b < 2 ? I : -I;
    for (std::size_t r = 0; r < 4; ++r) CHECK(jv[r] == lambda * v[r]);
  }
}

TEST_CASE("eigenframe change of basis round-trips") {
  const Eigenframe& e = kodaira().ef;
  CHECK(e.to_real * e.from_real == Matrix::identity(4));
  auto t = e.to_real.column(0);
  auto tbar = e.to_real.column(2);
  std::vector<GaussianRational> sum(4), diff(4);
  for (std::size_t r = 0; r < 4; ++r) {
    sum[r] = t[r] + tbar[r];
    diff[r] = I * (t[r] - tbar[r]);
  }
  CHECK(sum == unit(4, 0));
  CHECK(diff == unit(4, 1));
}

TEST_CASE("abelian algebra with any J gives an abelian complexified frame") {
  Eigenframe e = eigenframe(abelian(4), standard_j(4));
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 4; ++b) {
      auto v = e.frame.bracket(a, b);
      CHECK(std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_zero(); }));
    }
  }
}

TEST_CASE("eigenframe rejects a complexified input") {
  CHECK_THROWS_AS(eigenframe(kodaira().ef.frame, standard_j(4)), std::invalid_argument);
}

TEST_CASE("Chevalley-Eilenberg differential on the Kodaira eigenframe") {
  const FrameAlgebra& g = kodaira().ef.frame;
  InvariantForm omega = InvariantForm::basis(4, {0});
  InvariantForm rho = InvariantForm::basis(4, {1});
  CHECK(ce_differential(g, omega).is_zero());
  InvariantForm drho = ce_differential(g, rho);
  CHECK(drho.coefficient({0, 2}) == PolyScalar(q(-1, 2) * I));
  CHECK(drho.evaluate({{1, 0, 0, 0}, {0, 0, 1, 0}}) == PolyScalar(q(-1, 2) * I));
  CHECK(ce_differential(g, InvariantForm::scalar(4, p("t1"))).is_zero());
}

TEST_CASE("d o d = 0 on random invariant forms") {
  std::mt19937 rng(21);
  const FrameAlgebra& g = kodaira().ef.frame;
  std::vector<PolyScalar> params = {p("t1"), p("t2")};
  for (std::size_t degree = 0; degree <= 3; ++degree) {
    for (int trial = 0; trial < 10; ++trial) {
      InvariantForm x = random_form(rng, 4, degree, params);
      CHECK(ce_differential(g, ce_differential(g, x)).is_zero());
    }
  }
}

TEST_CASE("ce_differential rejects coefficient functions") {
  InvariantForm x = InvariantForm::basis(4, {0}, f("u1"));
  CHECK_THROWS_AS(ce_differential(kodaira().ef.frame, x), std::invalid_argument);
}

TEST_CASE("ce_differential agrees with the Lie derivative path on constant data") {
  const FrameAlgebra& g = kodaira().ef.frame;
  for (std::size_t s = 0; s < 4; ++s) {
    InvariantForm sigma = InvariantForm::basis(4, {s});
    Components sc(4);
    sc[s] = 1;
    InvariantForm ds = ce_differential(g, sigma);
    for (std::size_t a = 0; a < 4; ++a) {
      for (std::size_t b = 0; b < 4; ++b) {
        Components x(4), y(4);
        x[a] = 1;
        y[b] = 1;
        PolyScalar via_lie = interior(y, lie_derivative(g, x, sc));
        CHECK(ds.evaluate({x, y}) == via_lie);
      }
    }
  }
}
