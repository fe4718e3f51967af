#pragma once

// Maximal isotropic subbundles L of (T + T*) (x) C spanned by constant
// sections, their Lie algebroid structure, the algebroid differential d_L on
// forms over the dual basis of L, the identification theta of Lbar with L*
// and the Schouten bracket on forms over L*.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcdeform/courant.hpp"
#include "gcdeform/exterior.hpp"
#include "gcdeform/frame.hpp"
#include "gcdeform/linalg.hpp"

namespace gcdeform {

/// Forms over the dual basis {g_a*} of the generators of L.
using LForm = ExteriorForm;

/// Raised when a result that must hold by construction fails (surviving
/// derivative terms in d_L of an invariant form, a bracket leaving L).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IsotropicSubbundle {
 public:
  /// Constant generators g_a spanning L; their number must equal the frame
  /// dimension and they must be linearly independent (std::invalid_argument
  /// otherwise).  Isotropy, involutivity and L ^ Lbar = 0 are checked and
  /// reported, not required.
  IsotropicSubbundle(FrameAlgebra g, std::vector<GenSection> generators, std::vector<std::string> labels);

  const FrameAlgebra& frame() const { return g_; }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<GenSection>& generators() const { return gens_; }
  const std::vector<std::string>& labels() const { return labels_; }
  /// "Tbar*", "Wbar*", ... for the dual basis of L.
  const std::vector<std::string>& dual_labels() const { return dual_labels_; }
  /// Conjugate generators h_a = conj(g_a) spanning Lbar, in the same order.
  const std::vector<GenSection>& conjugate_generators() const { return conj_gens_; }
  const std::vector<std::string>& conjugate_labels() const { return conj_labels_; }

  bool isotropic() const { return isotropic_; }
  bool involutive() const { return involutive_; }
  bool separated() const { return separated_; }
  /// Human-readable description of every failed check.
  const std::vector<std::string>& failures() const { return failures_; }

  /// Frame-dimension x rank matrix; column a is the tangent part of g_a.
  const Matrix& anchor() const { return anchor_; }
  /// Courant brackets of generators, table[a][b] = [g_a, g_b].
  const BracketTable& brackets() const { return brackets_; }
  /// [g_a, g_b] = sum_c c(a, b, c) g_c.  Throws std::logic_error unless involutive.
  const StructureConstants& structure() const;

  /// Section sum_a x_a g_a.
  GenSection section(const Components& coords) const;
  /// Coordinates of a section of L in the generators (function coefficients
  /// allowed); nullopt when the section is not in L.
  std::optional<Components> coordinates(const GenSection& s) const;
  /// Coordinates of a section of Lbar in the conjugate generators.
  std::optional<Components> conjugate_coordinates(const GenSection& s) const;

  /// theta(h_b)(g_a) = <h_b, g_a>: row b, column a.
  const Matrix& theta() const { return theta_; }
  /// theta(h_b) as a 1-form over L*.
  LForm theta_of(std::size_t b) const;
  /// Generator table of the bracket on L* transported from Lbar:
  /// [g_a*, g_c*] = theta([theta^-1 g_a*, theta^-1 g_c*]).  Throws
  /// std::logic_error unless L is separated and involutive.
  const GeneratorBrackets& transported_brackets() const;

 private:
  FrameAlgebra g_;
  std::vector<GenSection> gens_;
  std::vector<std::string> labels_;
  std::vector<std::string> dual_labels_;
  std::vector<GenSection> conj_gens_;
  std::vector<std::string> conj_labels_;
  bool isotropic_ = true;
  bool involutive_ = true;
  bool separated_ = true;
  std::vector<std::string> failures_;
  Matrix anchor_;
  BracketTable brackets_;
  StructureConstants c_;
  Matrix theta_;
  GeneratorBrackets transported_;
  Matrix left_inverse_;
  std::vector<std::size_t> pivot_rows_;
  Matrix conj_left_inverse_;
  std::vector<std::size_t> conj_pivot_rows_;
};

/// L = T_{0,1} + T*_{1,0}: antiholomorphic frame vectors then holomorphic
/// coframe 1-forms (for Kodaira: Tbar, Wbar, omega, rho).
IsotropicSubbundle build_complex_eigenbundle(const Eigenframe& e);

/// L = {e_a - i * i_{e_a} w} over a real frame, labelled "l_" + frame name.
/// Throws std::invalid_argument for a degenerate or non-constant w, or a
/// complexified frame.
IsotropicSubbundle build_symplectic_eigenbundle(const FrameAlgebra& g, const InvariantForm& w);

/// Chevalley-Eilenberg differential of the algebroid bracket.  Throws
/// std::invalid_argument for coefficient functions and std::logic_error for a
/// non-involutive L.
LForm d_L_invariant(const IsotropicSubbundle& l, const LForm& f);

/// (d_L f)(X_0, ..., X_p) for a form of degree p <= 2 and general sections
/// given by coordinates in the generators:
///   sum_i (-1)^i a(X_i) f(..X_i^..) + sum_{i<j} (-1)^(i+j) f([X_i, X_j], ..X_i^..X_j^..),
/// with [X_i, X_j] the Courant bracket and a the tangent projection.  Throws
/// ConsistencyError when f has no coefficient functions but derivative terms
/// survive.
PolyScalar d_L_general(const IsotropicSubbundle& l, const LForm& f, const std::vector<Components>& args);

/// Biderivation extension of the transported generator brackets.  Throws
/// std::invalid_argument for coefficient functions.
LForm schouten_bracket(const IsotropicSubbundle& l, const LForm& a, const LForm& b);

}  // namespace gcdeform
