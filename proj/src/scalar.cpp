#include "gcdeform/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace gcdeform {

// ---------------------------------------------------------------------------
// GaussianRational
// ---------------------------------------------------------------------------

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("GaussianRational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return {q, 0};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (o.is_real()) {
    re_ *= o.re_;
    if (sgn(im_) != 0) im_ *= o.re_;
    return *this;
  }
  if (is_real()) {
    im_ = re_ * o.im_;
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
  if (b.is_real()) {
    if (a.is_real()) return {GaussianRational::Canonical{}, a.re_ * b.re_, 0};
    return {GaussianRational::Canonical{}, a.re_ * b.re_, a.im_ * b.re_};
  }
  if (a.is_real()) return {GaussianRational::Canonical{}, a.re_ * b.re_, a.re_ * b.im_};
  return {GaussianRational::Canonical{}, a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  Rational norm = o.re_ * o.re_ + o.im_ * o.im_;
  Rational re = (re_ * o.re_ + im_ * o.im_) / norm;
  Rational im = (im_ * o.re_ - re_ * o.im_) / norm;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

std::strong_ordering operator<=>(const GaussianRational& a, const GaussianRational& b) {
  int c = cmp(a.re_, b.re_);
  if (c == 0) c = cmp(a.im_, b.im_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

namespace {

std::string imaginary_unit_text(const Rational& magnitude) {
  if (magnitude == 1) return "i";
  return magnitude.get_str() + "*i";
}

}  // namespace

std::string GaussianRational::str() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) {
    if (sgn(im_) < 0) return "-" + imaginary_unit_text(-im_);
    return imaginary_unit_text(im_);
  }
  std::string out = re_.get_str();
  if (sgn(im_) < 0) return out + " - " + imaginary_unit_text(-im_);
  return out + " + " + imaginary_unit_text(im_);
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.str(); }

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

DerivationSymbol::DerivationSymbol(std::string direction, Symbol operand)
    : direction_(std::move(direction)), operand_(std::move(operand)) {
  if (operand_.is_parameter()) {
    throw std::invalid_argument("derivative of parameter '" + operand_.name() + "' is not a coefficient function");
  }
  if (direction_.empty()) throw std::invalid_argument("derivation direction must be named");
}

// ---------------------------------------------------------------------------
// Monomials
// ---------------------------------------------------------------------------

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      out.push_back(*ia++);
    } else if (ib->first < ia->first) {
      out.push_back(*ib++);
    } else {
      out.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  out.insert(out.end(), ia, a.end());
  out.insert(out.end(), ib, b.end());
  return out;
}

std::string render_monomial(const Monomial& m) {
  std::string out;
  for (const auto& [g, e] : m) {
    if (!out.empty()) out += "*";
    out += g.str();
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// PolyScalar
// ---------------------------------------------------------------------------

PolyScalar::PolyScalar(const GaussianRational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

PolyScalar::PolyScalar(const Symbol& s) { terms_.emplace(Monomial{{Generator(s), 1U}}, GaussianRational(1)); }

PolyScalar::PolyScalar(const DerivationSymbol& d) {
  terms_.emplace(Monomial{{Generator(d), 1U}}, GaussianRational(1));
}

PolyScalar PolyScalar::from_terms(Terms terms) {
  PolyScalar p;
  for (auto& [m, c] : terms) {
    if (!c.is_zero()) p.terms_.emplace(m, std::move(c));
  }
  return p;
}

PolyScalar PolyScalar::monomial(const Monomial& m, const GaussianRational& c) {
  PolyScalar p;
  p.add_term(m, c);
  return p;
}

void PolyScalar::add_term(Monomial m, GaussianRational c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(std::move(m), std::move(c));
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool PolyScalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

GaussianRational PolyScalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("PolyScalar is not constant: " + str());
  return terms_.empty() ? GaussianRational() : terms_.begin()->second;
}

PolyScalar& PolyScalar::operator+=(const PolyScalar& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.lower_bound(m);
    if (it == terms_.end() || it->first != m) {
      terms_.emplace_hint(it, m, c);
    } else if ((it->second += c).is_zero()) {
      terms_.erase(it);
    }
  }
  return *this;
}

PolyScalar& PolyScalar::operator-=(const PolyScalar& o) {
  for (const auto& [m, c] : o.terms_) {
    auto it = terms_.lower_bound(m);
    if (it == terms_.end() || it->first != m) {
      terms_.emplace_hint(it, m, -c);
    } else if ((it->second -= c).is_zero()) {
      terms_.erase(it);
    }
  }
  return *this;
}

PolyScalar operator*(const PolyScalar& a, const PolyScalar& b) {
  PolyScalar out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  return out;
}

PolyScalar& PolyScalar::operator*=(const PolyScalar& o) { return *this = *this * o; }

PolyScalar& PolyScalar::operator*=(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

PolyScalar PolyScalar::operator-() const {
  PolyScalar out = *this;
  for (auto& [m, v] : out.terms_) v = -v;
  return out;
}

std::set<Generator> PolyScalar::generators() const {
  std::set<Generator> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& [g, e] : m) out.insert(g);
  }
  return out;
}

bool PolyScalar::has_functions() const {
  for (const auto& g : generators()) {
    if (!g.is_parameter()) return true;
  }
  return false;
}

bool PolyScalar::has_derivations() const {
  for (const auto& g : generators()) {
    if (g.is_derivation()) return true;
  }
  return false;
}

unsigned PolyScalar::degree_in(const std::set<Symbol>& symbols) const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (const auto& [g, e] : m) {
      if (!g.is_derivation() && symbols.count(g.symbol()) != 0) d += e;
    }
    best = std::max(best, d);
  }
  return best;
}

GaussianRational PolyScalar::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

PolyScalar PolyScalar::partial(const Generator& g) const {
  PolyScalar out;
  for (const auto& [m, c] : terms_) {
    auto it = std::find_if(m.begin(), m.end(), [&](const auto& f) { return f.first == g; });
    if (it == m.end()) continue;
    Monomial reduced = m;
    auto pos = reduced.begin() + (it - m.begin());
    unsigned e = pos->second;
    if (e == 1) {
      reduced.erase(pos);
    } else {
      --pos->second;
    }
    out.add_term(std::move(reduced), c * GaussianRational(static_cast<long>(e)));
  }
  return out;
}

PolyScalar PolyScalar::substitute(const SymbolBindings& bindings) const {
  PolyBindings poly;
  for (const auto& [s, v] : bindings) {
    if (!s.is_parameter()) {
      throw std::invalid_argument("cannot bind coefficient function '" + s.name() + "' to a value");
    }
    poly.emplace(s, PolyScalar(v));
  }
  return substitute(poly);
}

namespace {

PolyScalar power(const PolyScalar& base, unsigned e) {
  PolyScalar out(1);
  for (unsigned k = 0; k < e; ++k) out *= base;
  return out;
}

}  // namespace

PolyScalar PolyScalar::substitute(const PolyBindings& bindings) const {
  if (bindings.empty()) return *this;
  PolyScalar out;
  for (const auto& [m, c] : terms_) {
    PolyScalar term(c);
    Monomial kept;
    for (const auto& [g, e] : m) {
      auto it = bindings.find(g.symbol());
      if (it == bindings.end()) {
        kept.emplace_back(g, e);
      } else if (g.is_derivation()) {
        throw std::invalid_argument("cannot substitute into derivative " + g.str());
      } else {
        term *= power(it->second, e);
      }
    }
    out += term * PolyScalar::monomial(kept, GaussianRational(1));
  }
  return out;
}

std::string PolyScalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0);
    GaussianRational mag = negative ? -c : c;
    std::string coeff;
    if (m.empty()) {
      coeff = mag.str();
    } else if (!(mag == GaussianRational(1))) {
      bool mixed = sgn(mag.re()) != 0 && sgn(mag.im()) != 0;
      coeff = mixed ? "(" + mag.str() + ")" : mag.str();
      coeff += "*";
    }
    std::string term = coeff + render_monomial(m);
    if (first) {
      out = negative ? "-" + term : term;
      first = false;
    } else {
      out += negative ? " - " : " + ";
      out += term;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const PolyScalar& p) { return os << p.str(); }

// ---------------------------------------------------------------------------
// Linear solving
// ---------------------------------------------------------------------------

namespace {

struct LinearRow {
  std::vector<GaussianRational> coeffs;
  PolyScalar rest;  // part free of unknowns; row reads  sum coeffs*u + rest = 0
};

std::optional<LinearRow> as_linear(const PolyScalar& p, const std::map<Symbol, std::size_t>& index) {
  LinearRow row{std::vector<GaussianRational>(index.size()), {}};
  for (const auto& [m, c] : p.terms()) {
    std::optional<std::size_t> hit;
    unsigned degree = 0;
    for (const auto& [g, e] : m) {
      if (g.is_derivation()) continue;
      auto it = index.find(g.symbol());
      if (it == index.end()) continue;
      degree += e;
      hit = it->second;
    }
    if (degree == 0) {
      row.rest += PolyScalar::monomial(m, c);
    } else if (degree == 1 && m.size() == 1) {
      row.coeffs[*hit] += c;
    } else {
      return std::nullopt;
    }
  }
  return row;
}

bool is_single_power(const PolyScalar& p, const std::map<Symbol, std::size_t>& index, Symbol* var) {
  if (p.size() != 1) return false;
  const Monomial& m = p.terms().begin()->first;
  if (m.size() != 1 || m.front().first.is_derivation()) return false;
  Symbol s = m.front().first.symbol();
  if (index.count(s) == 0) return false;
  *var = s;
  return true;
}

}  // namespace

LinearSolution solve_linear(const std::vector<PolyScalar>& system, const std::vector<Symbol>& unknowns) {
  std::map<Symbol, std::size_t> index;
  for (std::size_t k = 0; k < unknowns.size(); ++k) index.emplace(unknowns[k], k);

  LinearSolution out;
  std::vector<LinearRow> rows;
  for (const auto& p : system) {
    if (p.is_zero()) continue;
    if (auto row = as_linear(p, index)) {
      rows.push_back(std::move(*row));
    } else {
      out.residual.push_back(p);
    }
  }

  const std::size_t n = unknowns.size();
  std::vector<std::optional<std::size_t>> pivot_row_of(n);
  std::size_t next = 0;
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t col = n - 1 - step;
    std::size_t r = next;
    while (r < rows.size() && rows[r].coeffs[col].is_zero()) ++r;
    if (r == rows.size()) continue;
    std::swap(rows[next], rows[r]);
    GaussianRational inv = GaussianRational(1) / rows[next].coeffs[col];
    for (auto& c : rows[next].coeffs) c *= inv;
    rows[next].rest *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == next || rows[o].coeffs[col].is_zero()) continue;
      GaussianRational f = rows[o].coeffs[col];
      for (std::size_t k = 0; k < n; ++k) rows[o].coeffs[k] -= f * rows[next].coeffs[k];
      rows[o].rest -= rows[next].rest * f;
    }
    pivot_row_of[col] = next;
    ++next;
  }

  for (std::size_t r = next; r < rows.size(); ++r) {
    const PolyScalar& rest = rows[r].rest;
    if (rest.is_zero()) continue;
    if (rest.is_constant()) {
      out.consistent = false;
    } else {
      out.residual.push_back(rest);
    }
  }

  for (std::size_t k = 0; k < n; ++k) {
    if (!pivot_row_of[k]) out.free.push_back(unknowns[k]);
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!pivot_row_of[k]) continue;
    const LinearRow& row = rows[*pivot_row_of[k]];
    PolyScalar value = -row.rest;
    for (const auto& f : out.free) {
      const auto& c = row.coeffs[index.at(f)];
      if (!c.is_zero()) value -= PolyScalar(f) * c;
    }
    out.bindings.emplace(unknowns[k], std::move(value));
  }
  return out;
}

LinearSolution solve_polynomial_system(const std::vector<PolyScalar>& system, const std::vector<Symbol>& unknowns) {
  std::map<Symbol, std::size_t> index;
  for (std::size_t k = 0; k < unknowns.size(); ++k) index.emplace(unknowns[k], k);

  std::vector<PolyScalar> rows = system;
  while (true) {
    LinearSolution sol = solve_linear(rows, unknowns);
    if (!sol.consistent) return sol;

    std::vector<PolyScalar> reduced;
    bool progressed = false;
    for (const auto& r : sol.residual) {
      PolyScalar p = r.substitute(sol.bindings);
      if (p.is_zero()) continue;
      if (p.is_constant()) {
        sol.consistent = false;
        return sol;
      }
      Symbol var = Symbol::parameter("");
      if (as_linear(p, index) && p.degree_in({unknowns.begin(), unknowns.end()}) > 0) {
        rows.push_back(p);
        progressed = true;
      } else if (is_single_power(p, index, &var)) {
        rows.emplace_back(var);
        progressed = true;
      }
      reduced.push_back(std::move(p));
    }
    if (!progressed) {
      sol.residual = std::move(reduced);
      return sol;
    }
  }
}

}  // namespace gcdeform
