#include "gcdeform/courant.hpp"

#include <algorithm>
#include <stdexcept>

#include "gcdeform/parallel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gcdeform {

int worker_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

GenSection::GenSection(Components tangent, Components cotangent)
    : tangent_(std::move(tangent)), cotangent_(std::move(cotangent)) {
  if (tangent_.size() != cotangent_.size()) throw std::invalid_argument("GenSection: part lengths differ");
}

GenSection GenSection::named(const FrameAlgebra& g, const std::string& name) {
  if (auto i = g.index_of(name)) return tangent_basis(g.dim(), *i);
  if (auto i = g.dual_index_of(name)) return cotangent_basis(g.dim(), *i);
  throw std::invalid_argument("unknown basis name '" + name + "'");
}

GenSection GenSection::tangent_basis(std::size_t frame_dim, std::size_t i) {
  GenSection s(frame_dim);
  s.tangent_.at(i) = 1;
  return s;
}

GenSection GenSection::cotangent_basis(std::size_t frame_dim, std::size_t i) {
  GenSection s(frame_dim);
  s.cotangent_.at(i) = 1;
  return s;
}

const PolyScalar& GenSection::entry(std::size_t k) const {
  return k < tangent_.size() ? tangent_[k] : cotangent_.at(k - tangent_.size());
}

bool GenSection::is_zero() const {
  auto zero = [](const PolyScalar& p) { return p.is_zero(); };
  return std::all_of(tangent_.begin(), tangent_.end(), zero) && std::all_of(cotangent_.begin(), cotangent_.end(), zero);
}

bool GenSection::is_constant() const {
  auto constant = [](const PolyScalar& p) { return p.is_constant(); };
  return std::all_of(tangent_.begin(), tangent_.end(), constant) &&
         std::all_of(cotangent_.begin(), cotangent_.end(), constant);
}

GenSection& GenSection::operator+=(const GenSection& o) {
  if (o.frame_dim() != frame_dim()) throw std::invalid_argument("GenSection: dimension mismatch");
  for (std::size_t k = 0; k < frame_dim(); ++k) {
    tangent_[k] += o.tangent_[k];
    cotangent_[k] += o.cotangent_[k];
  }
  return *this;
}

GenSection& GenSection::operator-=(const GenSection& o) {
  if (o.frame_dim() != frame_dim()) throw std::invalid_argument("GenSection: dimension mismatch");
  for (std::size_t k = 0; k < frame_dim(); ++k) {
    tangent_[k] -= o.tangent_[k];
    cotangent_[k] -= o.cotangent_[k];
  }
  return *this;
}

GenSection operator*(const PolyScalar& c, const GenSection& s) {
  GenSection out(s.frame_dim());
  for (std::size_t k = 0; k < s.frame_dim(); ++k) {
    out.tangent_[k] = c * s.tangent_[k];
    out.cotangent_[k] = c * s.cotangent_[k];
  }
  return out;
}

GenSection GenSection::substitute(const SymbolBindings& b) const {
  GenSection out(frame_dim());
  for (std::size_t k = 0; k < frame_dim(); ++k) {
    out.tangent_[k] = tangent_[k].substitute(b);
    out.cotangent_[k] = cotangent_[k].substitute(b);
  }
  return out;
}

std::string GenSection::str(const FrameAlgebra& g) const {
  std::string out;
  for (std::size_t k = 0; k < frame_dim(); ++k) append_term(out, tangent_[k], g.name(k));
  for (std::size_t k = 0; k < frame_dim(); ++k) append_term(out, cotangent_[k], g.dual_name(k));
  return out.empty() ? "0" : out;
}

PolyScalar pair(const GenSection& a, const GenSection& b) {
  PolyScalar out;
  for (std::size_t k = 0; k < a.frame_dim(); ++k) {
    out += a.cotangent()[k] * b.tangent()[k];
    out += b.cotangent()[k] * a.tangent()[k];
  }
  return out * GaussianRational::ratio(1, 2);
}

namespace {

// Partial derivatives of f in its coefficient functions.
using Partials = std::vector<std::pair<Symbol, PolyScalar>>;

Partials function_partials(const PolyScalar& f) {
  Partials out;
  if (f.is_constant()) return out;
  for (const auto& gen : f.generators()) {
    if (gen.is_parameter()) continue;
    if (gen.is_derivation()) {
      throw HigherDerivativeError("second derivative of coefficient function '" + gen.name() + "' requested");
    }
    out.emplace_back(gen.symbol(), f.partial(gen));
  }
  return out;
}

// e_k(f) for a single frame direction.
PolyScalar directional(const FrameAlgebra& g, std::size_t k, const Partials& partials) {
  PolyScalar out;
  for (const auto& [s, df] : partials) out += df * PolyScalar(DerivationSymbol(g.name(k), s));
  return out;
}

bool all_zero(const Components& c) {
  return std::all_of(c.begin(), c.end(), [](const PolyScalar& p) { return p.is_zero(); });
}

}  // namespace

PolyScalar apply_vector(const FrameAlgebra& g, const Components& x, const PolyScalar& f) {
  if (x.size() != g.dim()) throw std::invalid_argument("apply_vector: dimension mismatch");
  if (f.is_constant()) return {};
  const Partials partials = function_partials(f);
  PolyScalar out;
  for (std::size_t k = 0; k < g.dim(); ++k) {
    if (x[k].is_zero()) continue;
    out += x[k] * directional(g, k, partials);
  }
  return out;
}

Components vector_bracket(const FrameAlgebra& g, const Components& x, const Components& y) {
  const std::size_t n = g.dim();
  const auto& c = g.structure();
  Components out(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k].is_zero()) continue;
    for (std::size_t l = 0; l < n; ++l) {
      if (y[l].is_zero()) continue;
      PolyScalar w = x[k] * y[l];
      for (std::size_t m = 0; m < n; ++m) {
        if (!c(k, l, m).is_zero()) out[m] += w * c(k, l, m);
      }
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    out[m] += apply_vector(g, x, y[m]);
    out[m] -= apply_vector(g, y, x[m]);
  }
  return out;
}

PolyScalar interior(const Components& x, const Components& sigma) {
  PolyScalar out;
  for (std::size_t k = 0; k < x.size(); ++k) out += x[k] * sigma[k];
  return out;
}

Components exterior_derivative(const FrameAlgebra& g, const PolyScalar& f) {
  Components out(g.dim());
  if (f.is_constant()) return out;
  const Partials partials = function_partials(f);
  for (std::size_t k = 0; k < g.dim(); ++k) out[k] = directional(g, k, partials);
  return out;
}

// (L_X s)(e_j) = X(s_j) - s([X, e_j]),  [X, e_j] = sum_k x_k [e_k, e_j] - sum_k e_j(x_k) e_k.
Components lie_derivative(const FrameAlgebra& g, const Components& x, const Components& sigma) {
  const std::size_t n = g.dim();
  const auto& c = g.structure();
  Components out(n);
  if (all_zero(x) || all_zero(sigma)) return out;
  std::vector<Partials> dx(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!sigma[k].is_zero()) dx[k] = function_partials(x[k]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = apply_vector(g, x, sigma[j]);
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k].is_zero()) continue;
      for (std::size_t l = 0; l < n; ++l) {
        if (!c(k, j, l).is_zero() && !sigma[l].is_zero()) out[j] -= x[k] * sigma[l] * c(k, j, l);
      }
      if (!dx[k].empty()) out[j] += directional(g, j, dx[k]) * sigma[k];
    }
  }
  return out;
}

GenSection courant_bracket(const FrameAlgebra& g, const GenSection& a, const GenSection& b) {
  const std::size_t n = g.dim();
  if (a.frame_dim() != n || b.frame_dim() != n) throw std::invalid_argument("courant_bracket: dimension mismatch");
  GenSection out(vector_bracket(g, a.tangent(), b.tangent()), Components(n));
  auto lx = lie_derivative(g, a.tangent(), b.cotangent());
  auto ly = lie_derivative(g, b.tangent(), a.cotangent());
  PolyScalar contraction = interior(a.tangent(), b.cotangent()) - interior(b.tangent(), a.cotangent());
  auto dc = exterior_derivative(g, contraction);
  const GaussianRational half = GaussianRational::ratio(1, 2);
  for (std::size_t j = 0; j < n; ++j) out.cotangent()[j] = lx[j] - ly[j] - dc[j] * half;
  return out;
}

GenSection conjugate(const FrameAlgebra& g, const GenSection& s) {
  if (!s.is_constant()) throw std::invalid_argument("conjugate: section has non-constant coefficients");
  GenSection out(s.frame_dim());
  for (std::size_t k = 0; k < s.frame_dim(); ++k) {
    const std::size_t ck = g.conjugate(k);
    if (!s.tangent()[k].is_zero()) out.tangent()[ck] = s.tangent()[k].constant_value().conj();
    if (!s.cotangent()[k].is_zero()) out.cotangent()[ck] = s.cotangent()[k].constant_value().conj();
  }
  return out;
}

namespace {

void check_constant(const std::vector<GenSection>& gens) {
  for (const auto& s : gens) {
    if (!s.is_constant()) throw std::invalid_argument("bracket_table: generators must be constant sections");
  }
}

}  // namespace

BracketTable bracket_table(const FrameAlgebra& g, const std::vector<GenSection>& gens) {
  check_constant(gens);
  const std::size_t m = gens.size();
  BracketTable table(m, std::vector<GenSection>(m, GenSection(g.dim())));
  parallel_for(m * m, [&](std::size_t k) {
    const std::size_t a = k / m;
    const std::size_t b = k % m;
    table[a][b] = courant_bracket(g, gens[a], gens[b]);
  });
  return table;
}

BracketTable bracket_table_serial(const FrameAlgebra& g, const std::vector<GenSection>& gens) {
  check_constant(gens);
  const std::size_t m = gens.size();
  BracketTable table(m, std::vector<GenSection>(m, GenSection(g.dim())));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) table[a][b] = courant_bracket(g, gens[a], gens[b]);
  }
  return table;
}

}  // namespace gcdeform
