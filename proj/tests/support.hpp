#pragma once

// Shared fixtures for the test executables.

#include <random>
#include <string>
#include <vector>

#include "gcdeform/algebroid.hpp"
#include "gcdeform/deformation.hpp"
#include "gcdeform/frame.hpp"

namespace gcdeform::test {

inline Symbol par(const std::string& name) { return Symbol::parameter(name); }
inline Symbol fun(const std::string& name) { return Symbol::function(name); }
inline PolyScalar p(const std::string& name) { return PolyScalar(par(name)); }
inline PolyScalar f(const std::string& name) { return PolyScalar(fun(name)); }
inline PolyScalar d(const std::string& direction, const std::string& name) {
  return PolyScalar(DerivationSymbol(direction, fun(name)));
}
inline GaussianRational q(long num, long den = 1) { return GaussianRational::ratio(num, den); }
inline const GaussianRational I = GaussianRational::i();

struct KodairaData {
  FrameAlgebra real;
  Eigenframe ef;
  IsotropicSubbundle l;
};

inline KodairaData make_kodaira() {
  auto [g, j] = kodaira_preset();
  Eigenframe ef = eigenframe(g, j, kodaira_names());
  IsotropicSubbundle l = build_complex_eigenbundle(ef);
  return {g, ef, l};
}

inline const KodairaData& kodaira() {
  static const KodairaData data = make_kodaira();
  return data;
}

inline FrameAlgebra abelian(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < m; ++k) names.push_back("E" + std::to_string(k + 1));
  return FrameAlgebra(names, StructureConstants(m));
}

/// Standard J on an even-dimensional real frame: J e_{2k} = e_{2k+1}.
inline ComplexOp standard_j(std::size_t m) {
  Matrix j(m, m);
  for (std::size_t k = 0; k + 1 < m; k += 2) {
    j(k + 1, k) = 1;
    j(k, k + 1) = -1;
  }
  return ComplexOp(j);
}

/// Section sum_k f(prefix + k) g_k over the generators of L: coordinates only.
inline Components general_coords(const std::string& prefix, std::size_t rank) {
  Components c;
  for (std::size_t k = 1; k <= rank; ++k) c.push_back(f(prefix + std::to_string(k)));
  return c;
}

inline GaussianRational random_gaussian(std::mt19937& rng, int range = 4) {
  std::uniform_int_distribution<int> v(-range, range);
  std::uniform_int_distribution<int> den(1, range);
  const int re = v(rng);
  const int re_den = den(rng);
  const int im = v(rng);
  const int im_den = den(rng);
  return GaussianRational(Rational(re, re_den), Rational(im, im_den));
}

/// Random polynomial of degree <= 2 in the given generators.
inline PolyScalar random_poly(std::mt19937& rng, const std::vector<PolyScalar>& gens, std::size_t terms = 3) {
  PolyScalar out = random_gaussian(rng);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  std::uniform_int_distribution<int> deg(1, 2);
  for (std::size_t t = 0; t < terms; ++t) {
    PolyScalar m = random_gaussian(rng);
    const int dg = deg(rng);
    for (int k = 0; k < dg; ++k) m *= gens[pick(rng)];
    out += m;
  }
  return out;
}

/// Random form of the given degree with parameter coefficients.
inline LForm random_form(std::mt19937& rng, std::size_t dim, std::size_t degree, const std::vector<PolyScalar>& params) {
  LForm out(dim);
  for (BasisMask m : basis_masks(dim, degree)) out.add(m, random_poly(rng, params, 1));
  return out;
}

/// Frame vectors then coframe 1-forms as generalized sections.
inline std::vector<GenSection> all_generators(std::size_t m) {
  std::vector<GenSection> out;
  for (std::size_t k = 0; k < m; ++k) out.push_back(GenSection::tangent_basis(m, k));
  for (std::size_t k = 0; k < m; ++k) out.push_back(GenSection::cotangent_basis(m, k));
  return out;
}

// Courant formula on constant sections written directly from structure constants.
inline GenSection oracle_bracket(const FrameAlgebra& g, const GenSection& a, const GenSection& b) {
  const std::size_t m = g.dim();
  const auto& c = g.structure();
  std::vector<GaussianRational> x(m), s(m), y(m), t(m);
  for (std::size_t k = 0; k < m; ++k) {
    x[k] = a.tangent()[k].constant_value();
    s[k] = a.cotangent()[k].constant_value();
    y[k] = b.tangent()[k].constant_value();
    t[k] = b.cotangent()[k].constant_value();
  }
  GenSection out(m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t l = 0; l < m; ++l) {
      for (std::size_t n = 0; n < m; ++n) {
        const GaussianRational& ck = c(k, l, n);
        if (ck.is_zero()) continue;
        out.tangent()[n] += PolyScalar(x[k] * y[l] * ck);
        out.cotangent()[l] -= PolyScalar(x[k] * t[n] * ck);
        out.cotangent()[l] += PolyScalar(y[k] * s[n] * ck);
      }
    }
  }
  return out;
}

}  // namespace gcdeform::test
