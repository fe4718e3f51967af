#pragma once

// Exact coefficient arithmetic: Gaussian rationals and multivariate
// polynomials over them in parameter symbols, coefficient-function symbols
// and formal first derivatives of coefficient functions.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gcdeform {

using Rational = mpq_class;

/// Value re + im*i with exact rational parts.  mpq_class keeps both parts
/// canonical (positive denominators, lowest terms).
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {0, 1}; }
  /// num/den + 0*i; den must be nonzero.
  static GaussianRational ratio(long num, long den);

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {Canonical{}, re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b);
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {Canonical{}, -re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  /// Total order (real part first); only used for deterministic containers.
  friend std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b);

  /// Canonical rendering "a/b + c/d*i": "0", "3", "-1/2", "i", "-i",
  /// "1/2*i", "1 - 3/4*i".
  std::string str() const;

 private:
  // Parts already in lowest terms.
  struct Canonical {};
  GaussianRational(Canonical, Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  Rational re_{0};
  Rational im_{0};
};

std::ostream& operator<<(std::ostream& os, const GaussianRational& z);

enum class SymbolKind : std::uint8_t { parameter, function };

/// A named generator of the coefficient ring.  Parameters are complex
/// constants (t_ij); coefficient functions are smooth functions on the
/// manifold (u_i, alpha_i, beta_i) and may be differentiated.
class Symbol {
 public:
  static Symbol parameter(std::string name) { return {std::move(name), SymbolKind::parameter}; }
  static Symbol function(std::string name) { return {std::move(name), SymbolKind::function}; }

  const std::string& name() const { return name_; }
  SymbolKind kind() const { return kind_; }
  bool is_parameter() const { return kind_ == SymbolKind::parameter; }

  friend auto operator<=>(const Symbol&, const Symbol&) = default;
  friend bool operator==(const Symbol&, const Symbol&) = default;

 private:
  Symbol(std::string name, SymbolKind kind) : name_(std::move(name)), kind_(kind) {}
  std::string name_;
  SymbolKind kind_;
};

/// First derivative of a coefficient function along a frame vector,
/// rendered "Tbar(alpha1)".  The operand is a Symbol, so nesting is not
/// expressible.
class DerivationSymbol {
 public:
  /// Throws std::invalid_argument when operand is a parameter.
  DerivationSymbol(std::string direction, Symbol operand);

  const std::string& direction() const { return direction_; }
  const Symbol& operand() const { return operand_; }

 private:
  std::string direction_;
  Symbol operand_;
};

/// Polynomial generator: a Symbol or a DerivationSymbol.  Ordered
/// lexicographically by (symbol name, derivation direction); plain symbols
/// have an empty direction and therefore precede their derivatives.
class Generator {
 public:
  Generator(const Symbol& s)  // NOLINT(google-explicit-constructor)
      : name_(s.name()), kind_(s.kind()) {}
  Generator(const DerivationSymbol& d)  // NOLINT(google-explicit-constructor)
      : name_(d.operand().name()), direction_(d.direction()), kind_(SymbolKind::function) {}

  const std::string& name() const { return name_; }
  const std::string& direction() const { return direction_; }
  SymbolKind kind() const { return kind_; }
  bool is_derivation() const { return !direction_.empty(); }
  bool is_parameter() const { return kind_ == SymbolKind::parameter; }
  /// The underlying symbol (the operand for a derivation).
  Symbol symbol() const {
    return kind_ == SymbolKind::parameter ? Symbol::parameter(name_) : Symbol::function(name_);
  }
  std::string str() const { return is_derivation() ? direction_ + "(" + name_ + ")" : name_; }

  friend auto operator<=>(const Generator&, const Generator&) = default;
  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  std::string name_;
  std::string direction_;
  SymbolKind kind_;
};

/// Sorted list of (generator, exponent>0).
using Monomial = std::vector<std::pair<Generator, unsigned>>;

class PolyScalar;
using SymbolBindings = std::map<Symbol, GaussianRational>;
using PolyBindings = std::map<Symbol, PolyScalar>;

/// Multivariate polynomial with GaussianRational coefficients.  Zero terms are
/// never stored, so equality is structural.
class PolyScalar {
 public:
  using Terms = std::map<Monomial, GaussianRational>;

  PolyScalar() = default;
  PolyScalar(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
  PolyScalar(long c) : PolyScalar(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
  PolyScalar(const Symbol& s);  // NOLINT(google-explicit-constructor)
  PolyScalar(const DerivationSymbol& d);  // NOLINT(google-explicit-constructor)

  static PolyScalar from_terms(Terms terms);
  static PolyScalar monomial(const Monomial& m, const GaussianRational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant value; throws std::logic_error when not constant.
  GaussianRational constant_value() const;
  std::size_t size() const { return terms_.size(); }

  PolyScalar& operator+=(const PolyScalar& o);
  PolyScalar& operator-=(const PolyScalar& o);
  PolyScalar& operator*=(const PolyScalar& o);
  PolyScalar& operator*=(const GaussianRational& c);

  friend PolyScalar operator+(PolyScalar a, const PolyScalar& b) { return a += b; }
  friend PolyScalar operator-(PolyScalar a, const PolyScalar& b) { return a -= b; }
  friend PolyScalar operator*(const PolyScalar& a, const PolyScalar& b);
  friend PolyScalar operator*(PolyScalar a, const GaussianRational& c) { return a *= c; }
  friend PolyScalar operator*(const GaussianRational& c, PolyScalar a) { return a *= c; }
  PolyScalar operator-() const;

  friend bool operator==(const PolyScalar&, const PolyScalar&) = default;

  /// Generators occurring in any monomial.
  std::set<Generator> generators() const;
  bool has_functions() const;
  bool has_derivations() const;
  /// Total degree in the given symbols (0 for the zero polynomial).
  unsigned degree_in(const std::set<Symbol>& symbols) const;

  /// Coefficient of a monomial.
  GaussianRational coefficient(const Monomial& m) const;

  /// Partial derivative with respect to one generator.
  PolyScalar partial(const Generator& g) const;

  /// Replace bound parameter symbols by values.  Throws std::invalid_argument
  /// when a binding names a coefficient-function symbol.
  PolyScalar substitute(const SymbolBindings& bindings) const;
  /// Replace bound symbols (of any kind) by polynomials.
  PolyScalar substitute(const PolyBindings& bindings) const;

  /// Rendering in the fixed monomial order, e.g. "1/2*i*t12 - t11^2 + u1".
  std::string str() const;

 private:
  void add_term(Monomial m, GaussianRational c);
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const PolyScalar& p);

Monomial multiply(const Monomial& a, const Monomial& b);
std::string render_monomial(const Monomial& m);

/// Result of solve_linear.
struct LinearSolution {
  /// False when the linear part is inconsistent ("empty solution set").
  bool consistent = true;
  /// Pivot unknowns expressed through free unknowns (and non-unknown symbols).
  std::map<Symbol, PolyScalar> bindings;
  /// Unknowns left free, in input order.
  std::vector<Symbol> free;
  /// Entries that are not linear in the unknowns with constant coefficients,
  /// returned verbatim (after substituting the solved bindings when
  /// produced by solve_polynomial_system).
  std::vector<PolyScalar> residual;
};

/// Gaussian elimination over the Gaussian rationals on the rows of `system`
/// that are linear in `unknowns` with constant coefficients.  Pivots are taken
/// from the end of `unknowns`, so earlier unknowns stay free.  Rows that are
/// not of that form are returned in `residual` untouched.
LinearSolution solve_linear(const std::vector<PolyScalar>& system, const std::vector<Symbol>& unknowns);

/// solve_linear followed by the exact rule c*v^k = 0 => v = 0 for residual
/// entries that are a single power of one unknown, iterated to a fixpoint.
/// Anything still nonlinear is left in `residual`.
LinearSolution solve_polynomial_system(const std::vector<PolyScalar>& system, const std::vector<Symbol>& unknowns);

}  // namespace gcdeform
