#pragma once

// Sections of (T + T*) (x) C in an invariant frame with polynomial
// coefficients: natural pairing, Lie derivative, Courant bracket.
//
// Coefficient functions are differentiated symbolically: e_k(u) is the
// DerivationSymbol "e_k(u)".  Only first derivatives exist, so any operation
// that would differentiate a DerivationSymbol throws HigherDerivativeError.

#include <stdexcept>
#include <string>
#include <vector>

#include "gcdeform/exterior.hpp"
#include "gcdeform/frame.hpp"

namespace gcdeform {

class HigherDerivativeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Tangent components over frame vectors, cotangent components over the dual
/// 1-forms; for the Kodaira eigenframe the order is
/// T, W, Tbar, Wbar | omega, rho, omegabar, rhobar.
class GenSection {
 public:
  GenSection() = default;
  explicit GenSection(std::size_t frame_dim) : tangent_(frame_dim), cotangent_(frame_dim) {}
  GenSection(Components tangent, Components cotangent);

  /// Basis element by frame or dual name.  Throws std::invalid_argument for an unknown name.
  static GenSection named(const FrameAlgebra& g, const std::string& name);
  static GenSection tangent_basis(std::size_t frame_dim, std::size_t i);
  static GenSection cotangent_basis(std::size_t frame_dim, std::size_t i);

  std::size_t frame_dim() const { return tangent_.size(); }
  const Components& tangent() const { return tangent_; }
  const Components& cotangent() const { return cotangent_; }
  Components& tangent() { return tangent_; }
  Components& cotangent() { return cotangent_; }
  /// Entry k of the 2m-vector (tangent first).
  const PolyScalar& entry(std::size_t k) const;

  bool is_zero() const;
  bool is_constant() const;

  GenSection& operator+=(const GenSection& o);
  GenSection& operator-=(const GenSection& o);
  friend GenSection operator+(GenSection a, const GenSection& b) { return a += b; }
  friend GenSection operator-(GenSection a, const GenSection& b) { return a -= b; }
  friend GenSection operator*(const PolyScalar& c, const GenSection& s);
  friend bool operator==(const GenSection&, const GenSection&) = default;

  GenSection substitute(const SymbolBindings& b) const;
  std::string str(const FrameAlgebra& g) const;

 private:
  Components tangent_;
  Components cotangent_;
};

/// <X + s, Y + t> = (s(Y) + t(X)) / 2.
PolyScalar pair(const GenSection& a, const GenSection& b);

/// X(f) for a vector field X given by frame components.
PolyScalar apply_vector(const FrameAlgebra& g, const Components& x, const PolyScalar& f);
/// Lie bracket of vector fields with function coefficients.
Components vector_bracket(const FrameAlgebra& g, const Components& x, const Components& y);
/// i_X s.
PolyScalar interior(const Components& x, const Components& sigma);
/// df of a function, as dual-frame components.
Components exterior_derivative(const FrameAlgebra& g, const PolyScalar& f);
/// L_X s = i_X ds + d i_X s, with the invariant part of d from the structure constants.
Components lie_derivative(const FrameAlgebra& g, const Components& x, const Components& sigma);

/// [X+s, Y+t] = [X,Y] + L_X t - L_Y s - 1/2 d(i_X t - i_Y s).
GenSection courant_bracket(const FrameAlgebra& g, const GenSection& a, const GenSection& b);

/// Complex conjugate of a constant section (labels through the frame's
/// conjugation, coefficients conjugated).  Throws std::invalid_argument for
/// non-constant sections.
GenSection conjugate(const FrameAlgebra& g, const GenSection& s);

using BracketTable = std::vector<std::vector<GenSection>>;

/// table[a][b] = [gens[a], gens[b]] for constant generators (OpenMP kernel).
BracketTable bracket_table(const FrameAlgebra& g, const std::vector<GenSection>& gens);
/// Serial reference for bracket_table.
BracketTable bracket_table_serial(const FrameAlgebra& g, const std::vector<GenSection>& gens);

}  // namespace gcdeform
