#pragma once

// Graded exterior algebra over the dual of an m-dimensional frame, with
// PolyScalar coefficients.  Shared by invariant forms on a Lie algebra and by
// forms on a Lie algebroid L.
//
// Wedge evaluation follows the determinant convention:
//   (s^1 ^ ... ^ s^k)(v_1, ..., v_k) = det[s^i(v_j)],  no 1/k! factor.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gcdeform/scalar.hpp"

namespace gcdeform {

/// Strictly increasing multi-index stored as a bit set.
using BasisMask = std::uint32_t;

constexpr std::size_t kMaxExteriorDim = 32;

/// Order on basis forms: by degree, then lexicographically on the index list.
struct BasisOrder {
  bool operator()(BasisMask a, BasisMask b) const;
};

std::vector<std::size_t> mask_indices(BasisMask m);
BasisMask indices_mask(const std::vector<std::size_t>& sorted_indices);
/// All basis masks of a degree, in BasisOrder.
std::vector<BasisMask> basis_masks(std::size_t dim, std::size_t degree);

/// Components of a section/vector in some frame.
using Components = std::vector<PolyScalar>;

class ExteriorForm {
 public:
  using Terms = std::map<BasisMask, PolyScalar, BasisOrder>;

  ExteriorForm() = default;
  explicit ExteriorForm(std::size_t dim);

  static ExteriorForm scalar(std::size_t dim, const PolyScalar& value);
  /// coeff * e^{i1} ^ ... ^ e^{ik} for arbitrary (unsorted) indices; the sign
  /// of the sorting permutation is applied, repeated indices give zero.
  static ExteriorForm basis(std::size_t dim, const std::vector<std::size_t>& indices, const PolyScalar& coeff = 1);

  std::size_t dim() const { return dim_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PolyScalar coefficient(BasisMask m) const;
  PolyScalar coefficient(const std::vector<std::size_t>& indices) const;
  void add(BasisMask m, const PolyScalar& c);

  /// True when every term has degree k (the zero form is homogeneous of any degree).
  bool is_homogeneous(std::size_t k) const;
  ExteriorForm component(std::size_t k) const;
  bool has_functions() const;

  ExteriorForm& operator+=(const ExteriorForm& o);
  ExteriorForm& operator-=(const ExteriorForm& o);
  friend ExteriorForm operator+(ExteriorForm a, const ExteriorForm& b) { return a += b; }
  friend ExteriorForm operator-(ExteriorForm a, const ExteriorForm& b) { return a -= b; }
  friend ExteriorForm operator*(const PolyScalar& c, const ExteriorForm& f);
  ExteriorForm operator-() const;
  friend bool operator==(const ExteriorForm&, const ExteriorForm&) = default;

  ExteriorForm substitute(const PolyBindings& bindings) const;
  ExteriorForm substitute(const SymbolBindings& bindings) const;

  /// Evaluate a homogeneous k-form on k vectors given by components.
  PolyScalar evaluate(const std::vector<Components>& args) const;

  /// Rendering with basis labels, e.g. "1/2*i*t12 Tbar*^Wbar*^rho* + t14 omega*^rho*".
  std::string str(const std::vector<std::string>& labels) const;

 private:
  std::size_t dim_ = 0;
  Terms terms_;
};

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b);

/// Appends "c label" to a rendered sum: "label" for c = 1, " - 1/2 label" for
/// negative single terms, "(..) label" for compound coefficients.
void append_term(std::string& out, const PolyScalar& c, const std::string& label);
std::string render_basis(BasisMask m, const std::vector<std::string>& labels);

/// Dense structure constants: [e_i, e_j] = sum_k c(i, j, k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), data_(dim * dim * dim) {}

  std::size_t dim() const { return dim_; }
  GaussianRational& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * dim_ + j) * dim_ + k]; }
  const GaussianRational& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  std::vector<GaussianRational> bracket(std::size_t i, std::size_t j) const;
  bool is_zero() const;
  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<GaussianRational> data_;
};

/// Chevalley-Eilenberg differential treating every coefficient as a constant:
/// d e^k = -sum_{i<j} c(i,j,k) e^i ^ e^j, extended as a graded derivation.
ExteriorForm chevalley_eilenberg(const ExteriorForm& f, const StructureConstants& c);

/// Brackets of degree-one generators: table[a][b] = [e^a, e^b], a 1-form.
using GeneratorBrackets = std::vector<std::vector<ExteriorForm>>;

/// Biderivation (Schouten) extension of a generator bracket table.  For
/// decomposables
///   [a1^...^ap, b1^...^bq] = sum_{i,j} (-1)^(i+j) [ai,bj] ^ a1..^ai..ap ^ b1..^bj..bq
/// (1-based i, j); brackets with degree-0 entries vanish (constant coefficients).
ExteriorForm biderivation_bracket(const ExteriorForm& a, const ExteriorForm& b, const GeneratorBrackets& table);

/// Determinant of a square matrix of polynomials (Laplace expansion).
PolyScalar determinant(const std::vector<std::vector<PolyScalar>>& m);

}  // namespace gcdeform
