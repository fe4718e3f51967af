#include "gcdeform/deformation.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>

#include "gcdeform/parallel.hpp"

namespace gcdeform {

DeformationMap DeformationMap::zero(std::size_t rank) {
  DeformationMap e;
  e.eps.assign(rank, std::vector<PolyScalar>(rank));
  return e;
}

PolyScalar DeformationMap::tilde(const IsotropicSubbundle& l, std::size_t a, std::size_t j) const {
  PolyScalar out;
  for (std::size_t b = 0; b < rank(); ++b) {
    const auto& th = l.theta()(b, j);
    if (!th.is_zero() && !eps[b][a].is_zero()) out += eps[b][a] * th;
  }
  return out;
}

LForm DeformationMap::tilde_form(const IsotropicSubbundle& l) const {
  LForm out(rank());
  for (std::size_t a = 0; a < rank(); ++a) {
    for (std::size_t j = a + 1; j < rank(); ++j) out.add(indices_mask({a, j}), tilde(l, a, j));
  }
  return out;
}

GenSection DeformationMap::deformed_generator(const IsotropicSubbundle& l, std::size_t a) const {
  GenSection out = l.generators()[a];
  for (std::size_t b = 0; b < rank(); ++b) {
    if (!eps[b][a].is_zero()) out += eps[b][a] * l.conjugate_generators()[b];
  }
  return out;
}

namespace {

template <class Bindings>
DeformationMap substitute_map(const DeformationMap& e, const Bindings& b) {
  DeformationMap out;
  out.eps = e.eps;
  for (auto& row : out.eps) {
    for (auto& v : row) v = v.substitute(b);
  }
  for (const auto& p : e.parameters) {
    if (!b.count(p)) out.parameters.push_back(p);
  }
  out.eliminated = e.eliminated;
  return out;
}

}  // namespace

DeformationMap DeformationMap::substitute(const PolyBindings& b) const { return substitute_map(*this, b); }
DeformationMap DeformationMap::substitute(const SymbolBindings& b) const { return substitute_map(*this, b); }

std::string raw_parameter_name(const std::string& prefix, std::size_t b, std::size_t a, std::size_t rank) {
  std::string sep = rank >= 10 ? "_" : "";
  return prefix + std::to_string(b) + sep + std::to_string(a);
}

DeformationMap constrain_map(const IsotropicSubbundle& l, const std::string& prefix) {
  const std::size_t m = l.rank();
  std::vector<std::vector<Symbol>> raw;
  std::vector<Symbol> unknowns;
  for (std::size_t b = 0; b < m; ++b) {
    raw.emplace_back();
    for (std::size_t a = 0; a < m; ++a) {
      raw[b].push_back(Symbol::parameter(raw_parameter_name(prefix, b + 1, a + 1, m)));
      unknowns.push_back(raw[b].back());
    }
  }
  std::sort(unknowns.begin(), unknowns.end(), [](const Symbol& x, const Symbol& y) { return x.name() < y.name(); });

  const Matrix& th = l.theta();
  std::vector<PolyScalar> system;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = a; c < m; ++c) {
      PolyScalar row;
      for (std::size_t b = 0; b < m; ++b) {
        if (!th(b, c).is_zero()) row += PolyScalar(raw[b][a]) * th(b, c);
        if (!th(b, a).is_zero()) row += PolyScalar(raw[b][c]) * th(b, a);
      }
      if (!row.is_zero()) system.push_back(std::move(row));
    }
  }
  LinearSolution sol = solve_linear(system, unknowns);
  if (!sol.consistent || !sol.residual.empty()) throw std::logic_error("constrain_map: compatibility system is not linear");

  DeformationMap e;
  e.eps.assign(m, std::vector<PolyScalar>(m));
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < m; ++a) e.eps[b][a] = PolyScalar(raw[b][a]).substitute(sol.bindings);
  }
  e.parameters = sol.free;
  e.eliminated = sol.bindings;
  return e;
}

std::vector<PolyScalar> MCSystem::nonzero() const {
  std::vector<PolyScalar> out;
  for (const auto& c : constraints) {
    if (!c.is_zero()) out.push_back(c);
  }
  return out;
}

MCSystem mc_residual(const IsotropicSubbundle& l, const DeformationMap& e) {
  MCSystem mc;
  LForm et = e.tilde_form(l);
  mc.differential = d_L_invariant(l, et);
  mc.schouten = schouten_bracket(l, et, et);
  LForm total = mc.differential + PolyScalar(GaussianRational::ratio(1, 2)) * mc.schouten;
  mc.basis = basis_masks(l.rank(), 3);
  for (auto m : mc.basis) mc.constraints.push_back(total.coefficient(m));
  mc.unknowns = e.parameters;
  return mc;
}

LForm involutivity_defect(const IsotropicSubbundle& l, const DeformationMap& e) {
  const std::size_t m = l.rank();
  std::vector<GenSection> x;
  for (std::size_t a = 0; a < m; ++a) x.push_back(e.deformed_generator(l, a));
  LForm out(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      GenSection br = courant_bracket(l.frame(), x[a], x[b]);
      for (std::size_t c = b + 1; c < m; ++c) out.add(indices_mask({a, b, c}), pair(br, x[c]));
    }
  }
  return out;
}

std::vector<LForm> gauge_image(const IsotropicSubbundle& l) {
  const std::size_t m = l.rank();
  auto masks = basis_masks(m, 2);
  Matrix d(masks.size(), m);
  for (std::size_t a = 0; a < m; ++a) {
    LForm da = d_L_invariant(l, LForm::basis(m, {a}));
    for (std::size_t r = 0; r < masks.size(); ++r) {
      PolyScalar v = da.coefficient(masks[r]);
      if (!v.is_zero()) d(r, a) = v.constant_value();
    }
  }
  std::vector<LForm> out;
  for (const auto& col : column_space_basis(d)) {
    LForm f(m);
    for (std::size_t r = 0; r < masks.size(); ++r) f.add(masks[r], PolyScalar(col[r]));
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

// Coefficient vector of a 2-form over the degree-2 basis.
std::vector<GaussianRational> flatten(const LForm& f, const std::vector<BasisMask>& masks) {
  std::vector<GaussianRational> out(masks.size());
  for (std::size_t r = 0; r < masks.size(); ++r) {
    PolyScalar v = f.coefficient(masks[r]);
    if (!v.is_constant()) throw std::domain_error("reduce_family: family is not linear in its parameters");
    if (!v.is_zero()) out[r] = v.constant_value();
  }
  return out;
}

std::size_t span_rank(const std::vector<std::vector<GaussianRational>>& cols, std::size_t rows) {
  if (cols.empty()) return 0;
  Matrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return rank(m);
}

}  // namespace

DeformationFamily reduce_family(const IsotropicSubbundle& l, const DeformationMap& e, const MCSystem& mc) {
  DeformationFamily fam;
  fam.parameters = e.parameters;
  LinearSolution sol = solve_polynomial_system(mc.nonzero(), e.parameters);
  fam.consistent = sol.consistent;
  fam.solved = sol.bindings;
  fam.mc_free = sol.free;
  fam.residual = sol.residual;
  fam.gauge_basis = gauge_image(l);
  DeformationMap general = e.substitute(fam.solved);
  if (!fam.complete()) {
    fam.general = std::move(general);
    return fam;
  }

  const std::size_t m = l.rank();
  auto masks = basis_masks(m, 2);
  LForm et = general.tilde_form(l);
  std::map<Symbol, LForm> direction;
  std::vector<std::vector<GaussianRational>> dir_cols;
  for (const auto& f : fam.mc_free) {
    LForm d(m);
    for (const auto& [mask, coeff] : et.terms()) d.add(mask, coeff.partial(Generator(f)));
    dir_cols.push_back(flatten(d, masks));
    direction.emplace(f, std::move(d));
  }

  std::vector<Symbol> by_name = fam.mc_free;
  std::sort(by_name.begin(), by_name.end(), [](const Symbol& x, const Symbol& y) { return x.name() < y.name(); });
  std::set<Symbol> dropped;
  const std::size_t base_rank = span_rank(dir_cols, masks.size());
  for (const auto& g : fam.gauge_basis) {
    auto cols = dir_cols;
    cols.push_back(flatten(g, masks));
    if (span_rank(cols, masks.size()) != base_rank) {
      throw std::domain_error("reduce_family: gauge direction " + g.str(l.dual_labels()) +
                              " is not expressible in the solution coordinates");
    }
    const BasisMask lead = g.terms().begin()->first;
    std::vector<Symbol> candidates;
    for (const auto& f : by_name) {
      if (!dropped.count(f) && !direction.at(f).coefficient(lead).is_zero()) candidates.push_back(f);
    }
    if (candidates.empty()) {
      throw std::domain_error("reduce_family: no solution coordinate aligned with gauge direction " +
                              g.str(l.dual_labels()));
    }
    dropped.insert(candidates.front());
    fam.drops.push_back({g, candidates, candidates.front()});
  }

  SymbolBindings zero_dropped;
  for (const auto& f : fam.mc_free) {
    if (dropped.count(f)) {
      zero_dropped.emplace(f, GaussianRational());
    } else {
      fam.free.push_back(f);
      fam.reduced_basis.push_back(direction.at(f));
    }
  }
  fam.general = general.substitute(zero_dropped);
  return fam;
}

namespace {

std::vector<GenSection> ground_generators(const IsotropicSubbundle& l, const DeformationMap& e,
                                          const SymbolBindings& at) {
  DeformationMap sub = e.substitute(at);
  std::vector<GenSection> gens;
  for (std::size_t a = 0; a < l.rank(); ++a) {
    gens.push_back(sub.deformed_generator(l, a));
    if (!gens.back().is_constant()) {
      throw std::invalid_argument("parameter values do not ground the deformation (unbound parameter in row " +
                                  l.labels()[a] + ")");
    }
  }
  return gens;
}

}  // namespace

IsotropicSubbundle deform_subbundle(const IsotropicSubbundle& l, const DeformationMap& e, const SymbolBindings& at) {
  auto gens = ground_generators(l, e, at);
  std::vector<std::string> labels;
  for (const auto& s : l.labels()) labels.push_back(s + "'");
  return IsotropicSubbundle(l.frame(), std::move(gens), std::move(labels));
}

std::string type_label(std::size_t k, std::size_t half_dim, std::size_t cotangent_rank) {
  if (k == 0) return "symplectic type";
  if (k == half_dim) return cotangent_rank == half_dim ? "classical complex" : "complex type, non-classical";
  return "other";
}

namespace {

TypeInfo type_from_generators(const std::vector<GenSection>& gens, std::size_t m) {
  Matrix tangent(m, gens.size());
  Matrix cotangent(m, gens.size());
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t r = 0; r < m; ++r) {
      const auto& t = gens[a].tangent()[r];
      const auto& c = gens[a].cotangent()[r];
      if (!t.is_zero()) tangent(r, a) = t.constant_value();
      if (!c.is_zero()) cotangent(r, a) = c.constant_value();
    }
  }
  TypeInfo info;
  info.tangent_rank = rank(tangent);
  info.cotangent_rank = rank(cotangent);
  info.k = m - info.tangent_rank;
  info.label = type_label(info.k, m / 2, info.cotangent_rank);
  return info;
}

}  // namespace

TypeInfo type_of(const IsotropicSubbundle& l, const DeformationMap& e, const SymbolBindings& at) {
  return type_from_generators(ground_generators(l, e, at), l.frame().dim());
}

TypeInfo type_of(const IsotropicSubbundle& l) { return type_from_generators(l.generators(), l.frame().dim()); }

std::string TypeStratum::conditions() const {
  std::string out;
  for (const auto& [v, expr] : equalities) {
    if (!out.empty()) out += ", ";
    out += v.name() + " = " + expr.str();
  }
  for (const auto& q : nonzero) {
    if (!out.empty()) out += ", ";
    out += (q.size() > 1 ? "(" + q.str() + ")" : q.str()) + " != 0";
  }
  for (const auto& q : unresolved) {
    if (!out.empty()) out += ", ";
    out += (q.size() > 1 ? "(" + q.str() + ")" : q.str()) + " = 0";
  }
  return out.empty() ? "all parameters" : out;
}

namespace {

using PolyMatrix = std::vector<std::vector<PolyScalar>>;

PolyMatrix substitute_matrix(const PolyMatrix& p, const PolyBindings& b) {
  PolyMatrix out = p;
  for (auto& row : out) {
    for (auto& v : row) v = v.substitute(b);
  }
  return out;
}

void choose(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
            std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    choose(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Largest size with a nonzero minor, and the nonzero minor of that size with
// the fewest terms (first in enumeration order on ties).
std::pair<std::size_t, PolyScalar> symbolic_rank(const PolyMatrix& p) {
  const std::size_t rows = p.size();
  const std::size_t cols = rows == 0 ? 0 : p[0].size();
  for (std::size_t r = std::min(rows, cols); r > 0; --r) {
    std::vector<std::vector<std::size_t>> rsets, csets;
    std::vector<std::size_t> cur;
    choose(rows, r, 0, cur, rsets);
    choose(cols, r, 0, cur, csets);
    std::optional<PolyScalar> best;
    for (const auto& rs : rsets) {
      for (const auto& cs : csets) {
        PolyMatrix sub(r, std::vector<PolyScalar>(r));
        for (std::size_t i = 0; i < r; ++i) {
          for (std::size_t j = 0; j < r; ++j) sub[i][j] = p[rs[i]][cs[j]];
        }
        PolyScalar d = determinant(sub);
        if (d.is_zero()) continue;
        if (d.is_constant()) return {r, d};
        if (!best || d.size() < best->size()) best = d;
      }
    }
    if (best) return {r, *best};
  }
  return {0, PolyScalar(1)};
}

struct Piece {
  PolyBindings equalities;
  std::vector<PolyScalar> nonzero;
  std::optional<std::size_t> rank;
  std::vector<PolyScalar> unresolved;
};

bool is_single_monomial(const PolyScalar& q) { return q.size() == 1; }

// Nonzero conditions in normal form: a monomial becomes its variables, any
// other polynomial is scaled to leading coefficient 1; duplicates dropped.
std::vector<PolyScalar> normalize_nonzero(const std::vector<PolyScalar>& in) {
  std::vector<PolyScalar> out;
  auto push = [&out](PolyScalar q) {
    if (q.is_constant()) return;
    q *= GaussianRational(1) / q.terms().begin()->second;
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
  };
  for (const auto& q : in) {
    if (is_single_monomial(q)) {
      for (const auto& [gen, exp] : q.terms().begin()->first) push(PolyScalar::monomial({{gen, 1}}, 1));
    } else {
      push(q);
    }
  }
  return out;
}

// Splits {equalities, nonzero} by the rank of p; p already has the equalities substituted.
void split_rank(const PolyMatrix& p, const PolyBindings& eqs, const std::vector<PolyScalar>& neqs,
                const std::set<Symbol>& params, std::vector<Piece>& out) {
  auto [r, q] = symbolic_rank(p);
  if (q.is_constant()) {
    out.push_back({eqs, normalize_nonzero(neqs), r, {}});
    return;
  }
  auto with_q = neqs;
  with_q.push_back(q);
  out.push_back({eqs, normalize_nonzero(with_q), r, {}});

  auto branch = [&](const Symbol& v, const PolyScalar& value, const std::vector<PolyScalar>& extra_neqs) {
    PolyBindings b{{v, value}};
    PolyBindings next_eqs;
    for (const auto& [s, expr] : eqs) next_eqs.emplace(s, expr.substitute(b));
    next_eqs.emplace(v, value);
    std::vector<PolyScalar> next_neqs;
    for (const auto& n : neqs) next_neqs.push_back(n.substitute(b));
    for (const auto& n : extra_neqs) next_neqs.push_back(n.substitute(b));
    for (const auto& n : next_neqs) {
      if (n.is_zero()) return;  // empty branch
    }
    split_rank(substitute_matrix(p, b), next_eqs, next_neqs, params, out);
  };

  std::vector<Symbol> vars;
  for (const auto& g : q.generators()) {
    if (!g.is_derivation() && params.count(g.symbol())) vars.push_back(g.symbol());
  }
  if (vars.empty()) {
    out.push_back({eqs, normalize_nonzero(neqs), std::nullopt, {q}});
    return;
  }
  if (is_single_monomial(q)) {
    std::vector<PolyScalar> earlier;
    for (const auto& v : vars) {
      branch(v, PolyScalar(), earlier);
      earlier.push_back(PolyScalar(v));
    }
    return;
  }
  for (const auto& v : vars) {
    if (q.degree_in({v}) != 1) continue;
    PolyScalar c = q.partial(Generator(v));
    if (!c.is_constant()) continue;
    PolyScalar rest = q - c * PolyScalar(v);
    branch(v, rest * (GaussianRational(-1) / c.constant_value()), {});
    return;
  }
  out.push_back({eqs, normalize_nonzero(neqs), std::nullopt, {q}});
}

SymbolBindings sample_point(const std::vector<Symbol>& params, const PolyBindings& eqs,
                            const std::vector<PolyScalar>& neqs) {
  std::vector<Symbol> free;
  for (const auto& p : params) {
    if (!eqs.count(p)) free.push_back(p);
  }
  auto attempt = [&](const std::vector<GaussianRational>& values) -> std::optional<SymbolBindings> {
    SymbolBindings at;
    for (std::size_t k = 0; k < free.size(); ++k) at.emplace(free[k], values[k]);
    for (const auto& [v, expr] : eqs) {
      PolyScalar val = expr.substitute(at);
      if (!val.is_constant()) return std::nullopt;
      at.emplace(v, val.is_zero() ? GaussianRational() : val.constant_value());
    }
    for (const auto& n : neqs) {
      if (n.substitute(at).is_zero()) return std::nullopt;
    }
    return at;
  };
  std::vector<GaussianRational> values(free.size());
  if (auto at = attempt(values)) return *at;
  for (std::size_t k = 0; k < free.size(); ++k) {
    std::fill(values.begin(), values.end(), GaussianRational());
    values[k] = 1;
    if (auto at = attempt(values)) return *at;
  }
  std::fill(values.begin(), values.end(), GaussianRational(1));
  if (auto at = attempt(values)) return *at;
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> dist(-7, 7);
  for (int tries = 0; tries < 500; ++tries) {
    for (auto& v : values) v = dist(rng);
    if (auto at = attempt(values)) return *at;
  }
  return {};
}

PolyMatrix projection(const IsotropicSubbundle& l, const DeformationMap& e, bool tangent) {
  const std::size_t m = l.frame().dim();
  PolyMatrix p(m, std::vector<PolyScalar>(l.rank()));
  for (std::size_t a = 0; a < l.rank(); ++a) {
    GenSection s = e.deformed_generator(l, a);
    for (std::size_t r = 0; r < m; ++r) p[r][a] = tangent ? s.tangent()[r] : s.cotangent()[r];
  }
  return p;
}

}  // namespace

Stratification stratify_type(const IsotropicSubbundle& l, const DeformationMap& e) {
  Stratification out;
  const std::size_t m = l.frame().dim();
  const std::size_t n = m / 2;
  PolyMatrix tangent = projection(l, e, true);
  if (e.parameters.size() > kMaxStratifyParameters) {
    out.refused = true;
    out.generic_k = m - symbolic_rank(tangent).first;
    return out;
  }
  out.generic_k = m - symbolic_rank(tangent).first;
  std::set<Symbol> params(e.parameters.begin(), e.parameters.end());
  PolyMatrix cotangent = projection(l, e, false);

  std::vector<Piece> pieces;
  split_rank(tangent, {}, {}, params, pieces);
  for (auto& piece : pieces) {
    TypeStratum s;
    s.equalities = piece.equalities;
    s.nonzero = piece.nonzero;
    s.unresolved = piece.unresolved;
    if (piece.rank) {
      s.k = m - *piece.rank;
      s.label = *s.k == 0 ? "symplectic type" : *s.k == n ? "complex type" : "other";
    } else {
      s.label = "unresolved";
    }
    if (s.k) s.sample = sample_point(e.parameters, s.equalities, s.nonzero);
    if (s.k && *s.k == n && n > 0) {
      std::vector<Piece> sub;
      split_rank(substitute_matrix(cotangent, s.equalities), s.equalities, s.nonzero, params, sub);
      for (auto& sp : sub) {
        TypeStratum t;
        t.equalities = sp.equalities;
        t.nonzero = sp.nonzero;
        t.unresolved = sp.unresolved;
        t.k = s.k;
        t.label = sp.rank ? type_label(n, n, *sp.rank) : "unresolved";
        if (sp.rank) t.sample = sample_point(e.parameters, t.equalities, t.nonzero);
        s.substrata.push_back(std::move(t));
      }
    }
    out.strata.push_back(std::move(s));
  }
  return out;
}

namespace {

struct StratumRef {
  const TypeStratum* stratum;
  bool sub;
};

std::vector<StratumRef> flatten_strata(const Stratification& s) {
  std::vector<StratumRef> refs;
  for (const auto& t : s.strata) {
    refs.push_back({&t, false});
    for (const auto& u : t.substrata) refs.push_back({&u, true});
  }
  return refs;
}

std::optional<std::string> check_one(const IsotropicSubbundle& l, const DeformationMap& e, const StratumRef& ref) {
  const TypeStratum& t = *ref.stratum;
  if (!t.k) return std::nullopt;
  if (t.sample.empty() && !e.parameters.empty()) return t.conditions() + ": no sample point found";
  TypeInfo info = type_of(l, e, t.sample);
  bool ok = info.k == *t.k;
  if (ref.sub) ok = ok && info.label == t.label;
  if (ok) return std::nullopt;
  return t.conditions() + ": sample has k = " + std::to_string(info.k) + " (" + info.label + ")";
}

}  // namespace

std::vector<std::string> check_strata(const IsotropicSubbundle& l, const DeformationMap& e, const Stratification& s) {
  auto refs = flatten_strata(s);
  std::vector<std::optional<std::string>> results(refs.size());
  parallel_for(refs.size(), [&](std::size_t k) { results[k] = check_one(l, e, refs[k]); });
  std::vector<std::string> out;
  for (auto& r : results) {
    if (r) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<std::string> check_strata_serial(const IsotropicSubbundle& l, const DeformationMap& e,
                                             const Stratification& s) {
  std::vector<std::string> out;
  for (const auto& ref : flatten_strata(s)) {
    if (auto r = check_one(l, e, ref)) out.push_back(std::move(*r));
  }
  return out;
}

namespace {

PointCheck check_point(const IsotropicSubbundle& l, const DeformationMap& e, const SymbolBindings& at) {
  PointCheck pc;
  pc.at = at;
  DeformationMap sub = e.substitute(at);
  pc.mc_zero = mc_residual(l, sub).is_empty();
  IsotropicSubbundle le = deform_subbundle(l, e, at);
  pc.isotropic = le.isotropic();
  pc.involutive = le.involutive();
  pc.separated = le.separated();
  pc.k = type_of(le).k;
  return pc;
}

}  // namespace

std::vector<PointCheck> check_points(const IsotropicSubbundle& l, const DeformationMap& e,
                                     const std::vector<SymbolBindings>& points) {
  std::vector<PointCheck> out(points.size());
  parallel_for(points.size(), [&](std::size_t k) { out[k] = check_point(l, e, points[k]); });
  return out;
}

std::vector<PointCheck> check_points_serial(const IsotropicSubbundle& l, const DeformationMap& e,
                                            const std::vector<SymbolBindings>& points) {
  std::vector<PointCheck> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(check_point(l, e, p));
  return out;
}

std::vector<SymbolBindings> random_bindings(const std::vector<Symbol>& params, std::size_t count, std::uint32_t seed,
                                            long range) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<long> num(-range, range);
  std::uniform_int_distribution<long> den(1, range);
  std::vector<SymbolBindings> out(count);
  for (auto& at : out) {
    for (const auto& p : params) {
      const long rn = num(rng);
      const long rd = den(rng);
      const long in = num(rng);
      const long id = den(rng);
      Rational re{mpz_class(rn), mpz_class(rd)};
      Rational im{mpz_class(in), mpz_class(id)};
      re.canonicalize();
      im.canonicalize();
      at.emplace(p, GaussianRational(re, im));
    }
  }
  return out;
}

}  // namespace gcdeform
