#pragma once

// Line-oriented workspace files describing an algebra and a structure on it.
//
//   # comment
//   basis X Y U V
//   bracket X Y = U
//   complex                  (then J lines, optional holomorphic/coframe names)
//   J X = Y
//   holomorphic T W
//   coframe omega rho
//   symplectic               (then form lines)
//   form X U = 1
//   subbundle                (then generator lines over basis and dual names)
//   generator l1 = X - i*U*
//   parameters t
//
// Coefficients are Gaussian rationals: 3, -1/2, i, i/2, 2*i, (1 - 3/4*i).
// Dual names are basis names with a trailing "*".

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcdeform/exterior.hpp"
#include "gcdeform/linalg.hpp"

namespace gcdeform {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class StructureKind { none, complex, symplectic, subbundle };

struct SubbundleGenerator {
  std::string label;
  std::vector<GaussianRational> coefficients;  // tangent then cotangent, length 2m
  friend bool operator==(const SubbundleGenerator&, const SubbundleGenerator&) = default;
};

struct WorkspaceSpec {
  std::vector<std::string> basis;
  StructureConstants brackets;
  StructureKind kind = StructureKind::none;
  Matrix j;                                   // complex: column a holds J(e_a)
  std::vector<std::string> holomorphic;       // complex: eigenframe names
  std::vector<std::string> coframe;
  Matrix form;                                // symplectic: w(e_a, e_b)
  std::vector<SubbundleGenerator> generators; // subbundle
  std::string parameter_prefix = "t";
  friend bool operator==(const WorkspaceSpec&, const WorkspaceSpec&) = default;
};

/// Parses and validates a workspace.  Throws ParseError with the offending
/// line and column for unknown names, non-skew or conflicting brackets,
/// malformed coefficients, J^2 != -1 and degenerate or non-skew forms.
WorkspaceSpec parse_workspace(const std::string& text);

/// Canonical text; parse_workspace(render_workspace(s)) == s.
std::string render_workspace(const WorkspaceSpec& spec);

/// The Kodaira workspace (same data as kodaira_preset and kodaira_names).
WorkspaceSpec kodaira_workspace();

/// Parses a Gaussian-rational coefficient such as "-3/4", "i/2", "(1 - i)".
/// Throws std::invalid_argument when malformed.
GaussianRational parse_coefficient(const std::string& text);

}  // namespace gcdeform
