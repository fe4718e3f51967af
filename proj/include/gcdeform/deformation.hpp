#pragma once

// Deformations eps: L -> Lbar of an isotropic subbundle: the compatibility
// constraint <eps x, y> + <x, eps y> = 0, the Maurer-Cartan system of the
// transported 2-form, gauge reduction by the image of d_L, the deformed
// subbundle (1 + eps)L and its type.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcdeform/algebroid.hpp"

namespace gcdeform {

struct DeformationMap {
  /// eps[b][a]: coefficient of the conjugate generator h_b in eps(g_a).
  std::vector<std::vector<PolyScalar>> eps;
  /// Parameters the entries depend on, in declaration order.
  std::vector<Symbol> parameters;
  /// Raw parameters removed by the compatibility constraint.
  std::map<Symbol, PolyScalar> eliminated;

  static DeformationMap zero(std::size_t rank);
  std::size_t rank() const { return eps.size(); }
  /// eps~(g_a, g_j) = theta(eps(g_a))(g_j).
  PolyScalar tilde(const IsotropicSubbundle& l, std::size_t a, std::size_t j) const;
  /// eps~ as a 2-form over L*: sum_{a<j} eps~(g_a, g_j) g_a* ^ g_j*.
  LForm tilde_form(const IsotropicSubbundle& l) const;
  /// (1 + eps)(g_a) as a section.
  GenSection deformed_generator(const IsotropicSubbundle& l, std::size_t a) const;
  DeformationMap substitute(const PolyBindings& b) const;
  DeformationMap substitute(const SymbolBindings& b) const;
};

/// Raw parameter name for row b, column a (1-based): "t" + b + a, or
/// "t" + b + "_" + a when the rank is 10 or more.
std::string raw_parameter_name(const std::string& prefix, std::size_t b, std::size_t a, std::size_t rank);

/// Fresh parameters eps[b][a] = t_{ba}, then the compatibility constraint
/// solved with solve_linear over the parameters in lexicographic order.
DeformationMap constrain_map(const IsotropicSubbundle& l, const std::string& prefix = "t");

/// Residual d_L eps~ + 1/2 [eps~, eps~] on the basis of 3-forms over L*.
struct MCSystem {
  std::vector<BasisMask> basis;           // every basis 3-form, in BasisOrder
  std::vector<PolyScalar> constraints;    // coefficient per basis 3-form
  std::vector<Symbol> unknowns;
  LForm differential;                     // d_L eps~
  LForm schouten;                         // [eps~, eps~]
  /// Nonzero constraints, in basis order.
  std::vector<PolyScalar> nonzero() const;
  bool is_empty() const { return nonzero().empty(); }
};

MCSystem mc_residual(const IsotropicSubbundle& l, const DeformationMap& e);

/// Involutivity defect of (1 + eps)L: psi(a,b,c) = <[x_a, x_b], x_c> with
/// x = (1 + eps)g, as the 3-form sum_{a<b<c} psi(a,b,c) g_a*^g_b*^g_c*.
LForm involutivity_defect(const IsotropicSubbundle& l, const DeformationMap& e);

/// Basis of the image of d_L on 1-forms (reduced column echelon form).
std::vector<LForm> gauge_image(const IsotropicSubbundle& l);

struct GaugeDrop {
  LForm direction;                 // gauge basis element
  std::vector<Symbol> candidates;  // aligned solution coordinates, by name
  Symbol dropped;                  // first candidate
};

struct DeformationFamily {
  std::vector<Symbol> parameters;            // parameters of the input map
  std::map<Symbol, PolyScalar> solved;       // MC bindings
  std::vector<Symbol> mc_free;               // free after MC
  std::vector<PolyScalar> residual;          // unsolved nonlinear constraints
  bool consistent = true;                    // false: empty solution set
  std::vector<LForm> gauge_basis;
  std::vector<GaugeDrop> drops;
  std::vector<Symbol> free;                  // reduced family parameters
  std::vector<LForm> reduced_basis;          // d eps~ / d f for f in free
  DeformationMap general;                    // reduced family's general element
  /// True when the MC system was fully solved and gauge reduction applied.
  bool complete() const { return consistent && residual.empty(); }
};

/// Solves the MC system (solve_polynomial_system over the map parameters),
/// then drops, per gauge direction, the lexicographically first solution
/// coordinate whose direction has a nonzero coefficient on that gauge
/// 2-form's leading basis element.  Throws std::domain_error when a gauge
/// direction is not in the span of the solution directions.
DeformationFamily reduce_family(const IsotropicSubbundle& l, const DeformationMap& e, const MCSystem& mc);

/// (1 + eps)L at ground parameter values; std::invalid_argument if some
/// entry is not constant after substitution.  Conjugates use conjugated values.
IsotropicSubbundle deform_subbundle(const IsotropicSubbundle& l, const DeformationMap& e, const SymbolBindings& at);

struct TypeInfo {
  std::size_t k = 0;
  std::size_t tangent_rank = 0;
  std::size_t cotangent_rank = 0;
  std::string label;  // "symplectic type", "classical complex", "complex type, non-classical", "other"
};

/// k = dim_C(T (x) C) - rank of the tangent projection of (1 + eps)L.
TypeInfo type_of(const IsotropicSubbundle& l, const DeformationMap& e, const SymbolBindings& at);
/// Type of L itself.
TypeInfo type_of(const IsotropicSubbundle& l);
std::string type_label(std::size_t k, std::size_t half_dim, std::size_t cotangent_rank);

struct TypeStratum {
  PolyBindings equalities;           // parameter = expression
  std::vector<PolyScalar> nonzero;   // polynomials required to be nonzero
  std::optional<std::size_t> k;      // nullopt: unresolved
  std::string label;
  std::vector<PolyScalar> unresolved;  // minors that could not be split
  SymbolBindings sample;             // a point satisfying the conditions
  std::vector<TypeStratum> substrata;  // classical split inside k = n strata
  std::string conditions() const;
};

struct Stratification {
  bool refused = false;  // more than kMaxStratifyParameters parameters
  std::size_t generic_k = 0;
  std::vector<TypeStratum> strata;
};

constexpr std::size_t kMaxStratifyParameters = 8;

Stratification stratify_type(const IsotropicSubbundle& l, const DeformationMap& e);

/// Point-sampling oracle: type_of at every (sub)stratum sample, compared with
/// the stratum's k and label (OpenMP kernel).  Returns the conditions of
/// mismatching strata.
std::vector<std::string> check_strata(const IsotropicSubbundle& l, const DeformationMap& e, const Stratification& s);
std::vector<std::string> check_strata_serial(const IsotropicSubbundle& l, const DeformationMap& e,
                                             const Stratification& s);

struct PointCheck {
  SymbolBindings at;
  bool mc_zero = false;
  bool isotropic = false;
  bool involutive = false;
  bool separated = false;
  std::size_t k = 0;
  bool ok() const { return mc_zero && isotropic && involutive && separated; }
};

/// Per-binding checks of a family (OpenMP kernel).
std::vector<PointCheck> check_points(const IsotropicSubbundle& l, const DeformationMap& e,
                                     const std::vector<SymbolBindings>& points);
std::vector<PointCheck> check_points_serial(const IsotropicSubbundle& l, const DeformationMap& e,
                                            const std::vector<SymbolBindings>& points);

/// Deterministic random Gaussian-rational bindings with numerators in
/// [-range, range] and denominators in [1, range].
std::vector<SymbolBindings> random_bindings(const std::vector<Symbol>& params, std::size_t count, std::uint32_t seed,
                                            long range = 5);

}  // namespace gcdeform
