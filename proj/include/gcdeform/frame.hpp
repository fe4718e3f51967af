#pragma once

// Lie algebras given by structure constants on a named frame, almost-complex
// endomorphisms, the +-i eigenframe of a complex structure and invariant
// exterior forms with their Chevalley-Eilenberg differential.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gcdeform/exterior.hpp"
#include "gcdeform/linalg.hpp"

namespace gcdeform {

/// Invariant forms on a frame: exterior forms over its dual basis.
using InvariantForm = ExteriorForm;

class FrameAlgebra {
 public:
  /// Real frame.  Throws std::invalid_argument when the constants are not
  /// skew or the names are not unique.  Dual names default to name + "*".
  FrameAlgebra(std::vector<std::string> names, StructureConstants c, std::vector<std::string> dual_names = {});

  /// Complexified frame with a conjugation involution on basis labels.
  static FrameAlgebra complexified(std::vector<std::string> names, std::vector<std::string> dual_names,
                                   StructureConstants c, std::vector<std::size_t> conjugation);

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::string& dual_name(std::size_t i) const { return dual_names_[i]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::string>& dual_names() const { return dual_names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  std::optional<std::size_t> dual_index_of(const std::string& name) const;

  const StructureConstants& structure() const { return c_; }
  std::vector<GaussianRational> bracket(std::size_t i, std::size_t j) const { return c_.bracket(i, j); }

  bool is_complex() const { return complex_; }
  /// Label of the conjugate basis vector (identity on real frames).
  std::size_t conjugate(std::size_t i) const { return conjugation_[i]; }

 private:
  FrameAlgebra() = default;
  void check() const;

  std::vector<std::string> names_;
  std::vector<std::string> dual_names_;
  StructureConstants c_;
  std::vector<std::size_t> conjugation_;
  bool complex_ = false;
};

/// A violated Jacobi identity on basis triple (i, j, k), i < j < k.
struct JacobiViolation {
  std::size_t i, j, k;
  std::vector<GaussianRational> defect;  // [[e_i,e_j],e_k] + cyclic, in frame components
};

/// Exhaustive Jacobi check; an empty result means the identity holds.
std::vector<JacobiViolation> validate_jacobi(const FrameAlgebra& g);

/// Endomorphism J of the real frame; column a holds J(e_a).
class ComplexOp {
 public:
  /// Throws std::invalid_argument unless square with J^2 = -1.
  explicit ComplexOp(Matrix j);
  const Matrix& matrix() const { return j_; }
  std::size_t dim() const { return j_.rows(); }

 private:
  Matrix j_;
};

struct EigenframeNames {
  std::vector<std::string> holomorphic;  // names of the +i generators
  std::vector<std::string> coframe;      // names of their dual 1-forms
};

/// Complexified frame {Z_a, Zbar_a} of +-i eigenvectors with exact structure
/// constants, plus the change of basis.
struct Eigenframe {
  FrameAlgebra frame;
  Matrix to_real;    // column b: frame vector b in the real basis
  Matrix from_real;  // inverse of to_real
  std::size_t half_dim() const { return frame.dim() / 2; }
};

/// Z_a = (e - i J e)/2 for greedily chosen real basis vectors e; conjugates
/// follow in the same order.  J integrability is not assumed.  Throws
/// std::invalid_argument for a complex input frame or a size mismatch.
Eigenframe eigenframe(const FrameAlgebra& g, const ComplexOp& j, const EigenframeNames& names = {});

/// Chevalley-Eilenberg differential of an invariant form:
/// d s(A, B) = -s([A, B]) on 1-forms, extended as a derivation.  Throws
/// std::invalid_argument when coefficients involve coefficient functions.
InvariantForm ce_differential(const FrameAlgebra& g, const InvariantForm& f);

/// Real frame (X, Y, U, V) with [X, Y] = U and JX = Y, JY = -X, JU = V, JV = -U.
std::pair<FrameAlgebra, ComplexOp> kodaira_preset();

/// Names T, W (holomorphic) and omega, rho (coframe).  The eigenvalue
/// relation gives J Wbar = -i Wbar.
EigenframeNames kodaira_names();

}  // namespace gcdeform
