#include "gcdeform/algebroid.hpp"

#include <stdexcept>

namespace gcdeform {

namespace {

// 2m x k matrix of constant generator entries.
Matrix generator_matrix(const std::vector<GenSection>& gens, std::size_t rows) {
  Matrix m(rows, gens.size());
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t r = 0; r < rows; ++r) {
      const PolyScalar& v = gens[a].entry(r);
      if (!v.is_zero()) m(r, a) = v.constant_value();
    }
  }
  return m;
}

// Left inverse of a full-column-rank matrix through a choice of pivot rows.
bool left_inverse(const Matrix& gm, Matrix& inv, std::vector<std::size_t>& rows) {
  auto echelon = rref(gm.transpose());
  if (echelon.pivot_columns.size() != gm.cols()) return false;
  rows = echelon.pivot_columns;
  Matrix sub(rows.size(), gm.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < gm.cols(); ++c) sub(r, c) = gm(rows[r], c);
  }
  auto si = inverse(sub);
  if (!si) return false;
  inv = std::move(*si);
  return true;
}

std::optional<Components> solve_coordinates(const std::vector<GenSection>& gens, const Matrix& inv,
                                            const std::vector<std::size_t>& rows, const GenSection& s) {
  const std::size_t k = gens.size();
  Components coords(k);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!inv(a, r).is_zero()) coords[a] += s.entry(rows[r]) * inv(a, r);
    }
  }
  GenSection back(s.frame_dim());
  for (std::size_t a = 0; a < k; ++a) {
    if (!coords[a].is_zero()) back += coords[a] * gens[a];
  }
  if (!(back == s)) return std::nullopt;
  return coords;
}

std::optional<std::size_t> unit_label(const GenSection& s, bool& tangent) {
  std::optional<std::size_t> hit;
  for (std::size_t k = 0; k < 2 * s.frame_dim(); ++k) {
    const PolyScalar& v = s.entry(k);
    if (v.is_zero()) continue;
    if (hit || !(v == PolyScalar(1))) return std::nullopt;
    hit = k;
  }
  if (!hit) return std::nullopt;
  tangent = *hit < s.frame_dim();
  return tangent ? *hit : *hit - s.frame_dim();
}

}  // namespace

IsotropicSubbundle::IsotropicSubbundle(FrameAlgebra g, std::vector<GenSection> generators,
                                       std::vector<std::string> labels)
    : g_(std::move(g)), gens_(std::move(generators)), labels_(std::move(labels)) {
  const std::size_t m = g_.dim();
  if (gens_.size() != m) throw std::invalid_argument("IsotropicSubbundle: need exactly " + std::to_string(m) + " generators");
  if (labels_.size() != m) throw std::invalid_argument("IsotropicSubbundle: label count does not match generators");
  for (const auto& s : gens_) {
    if (s.frame_dim() != m) throw std::invalid_argument("IsotropicSubbundle: generator has wrong dimension");
    if (!s.is_constant()) throw std::invalid_argument("IsotropicSubbundle: generators must be constant sections");
  }
  Matrix gm = generator_matrix(gens_, 2 * m);
  if (!left_inverse(gm, left_inverse_, pivot_rows_)) {
    throw std::invalid_argument("IsotropicSubbundle: generators are linearly dependent");
  }

  for (const auto& l : labels_) dual_labels_.push_back(l + "*");
  for (std::size_t a = 0; a < m; ++a) {
    conj_gens_.push_back(conjugate(g_, gens_[a]));
    bool tangent = false;
    if (auto k = unit_label(gens_[a], tangent)) {
      const std::size_t ck = g_.conjugate(*k);
      conj_labels_.push_back(tangent ? g_.name(ck) : g_.dual_name(ck));
    } else {
      conj_labels_.push_back(labels_[a] + "bar");
    }
  }
  Matrix cm = generator_matrix(conj_gens_, 2 * m);
  left_inverse(cm, conj_left_inverse_, conj_pivot_rows_);

  anchor_ = Matrix(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t r = 0; r < m; ++r) anchor_(r, a) = gm(r, a);
  }

  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      PolyScalar p = pair(gens_[a], gens_[b]);
      if (!p.is_zero()) {
        isotropic_ = false;
        failures_.push_back("<" + labels_[a] + ", " + labels_[b] + "> = " + p.str() + " (not isotropic)");
      }
    }
  }

  brackets_ = bracket_table(g_, gens_);
  c_ = StructureConstants(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      auto coords = coordinates(brackets_[a][b]);
      if (!coords) {
        if (a < b) {
          involutive_ = false;
          failures_.push_back("[" + labels_[a] + ", " + labels_[b] + "] = " + brackets_[a][b].str(g_) + " is not in L");
        }
        continue;
      }
      for (std::size_t c = 0; c < m; ++c) {
        if (!(*coords)[c].is_zero()) c_(a, b, c) = (*coords)[c].constant_value();
      }
    }
  }

  Matrix stacked(2 * m, 2 * m);
  for (std::size_t r = 0; r < 2 * m; ++r) {
    for (std::size_t a = 0; a < m; ++a) {
      stacked(r, a) = gm(r, a);
      stacked(r, m + a) = cm(r, a);
    }
  }
  if (gcdeform::rank(stacked) != 2 * m) {
    separated_ = false;
    failures_.push_back("L and its conjugate intersect nontrivially");
  }

  theta_ = Matrix(m, m);
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t a = 0; a < m; ++a) {
      PolyScalar p = pair(conj_gens_[b], gens_[a]);
      if (!p.is_zero()) theta_(b, a) = p.constant_value();
    }
  }

  if (!isotropic_ || !involutive_ || !separated_) return;
  auto theta_t_inv = inverse(theta_.transpose());
  if (!theta_t_inv) return;
  BracketTable conj_brackets = bracket_table(g_, conj_gens_);
  std::vector<std::vector<Components>> conj_coords(m, std::vector<Components>(m));
  for (std::size_t b = 0; b < m; ++b) {
    for (std::size_t d = 0; d < m; ++d) {
      auto coords = conjugate_coordinates(conj_brackets[b][d]);
      if (!coords) throw ConsistencyError("conjugate of an involutive L is not involutive");
      conj_coords[b][d] = std::move(*coords);
    }
  }
  transported_.assign(m, std::vector<ExteriorForm>(m, ExteriorForm(m)));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t c = 0; c < m; ++c) {
      std::vector<GaussianRational> r(m);
      for (std::size_t b = 0; b < m; ++b) {
        const auto& va = (*theta_t_inv)(b, a);
        if (va.is_zero()) continue;
        for (std::size_t d = 0; d < m; ++d) {
          const auto& vc = (*theta_t_inv)(d, c);
          if (vc.is_zero()) continue;
          for (std::size_t e = 0; e < m; ++e) {
            const PolyScalar& x = conj_coords[b][d][e];
            if (!x.is_zero()) r[e] += va * vc * x.constant_value();
          }
        }
      }
      for (std::size_t k = 0; k < m; ++k) {
        GaussianRational w;
        for (std::size_t e = 0; e < m; ++e) w += theta_(e, k) * r[e];
        if (!w.is_zero()) transported_[a][c].add(indices_mask({k}), PolyScalar(w));
      }
    }
  }
}

const StructureConstants& IsotropicSubbundle::structure() const {
  if (!involutive_) throw std::logic_error("L is not involutive; no algebroid structure");
  return c_;
}

GenSection IsotropicSubbundle::section(const Components& coords) const {
  if (coords.size() != rank()) throw std::invalid_argument("section: coordinate vector has wrong length");
  GenSection out(g_.dim());
  for (std::size_t a = 0; a < rank(); ++a) {
    if (!coords[a].is_zero()) out += coords[a] * gens_[a];
  }
  return out;
}

std::optional<Components> IsotropicSubbundle::coordinates(const GenSection& s) const {
  return solve_coordinates(gens_, left_inverse_, pivot_rows_, s);
}

std::optional<Components> IsotropicSubbundle::conjugate_coordinates(const GenSection& s) const {
  if (conj_pivot_rows_.empty()) return std::nullopt;
  return solve_coordinates(conj_gens_, conj_left_inverse_, conj_pivot_rows_, s);
}

LForm IsotropicSubbundle::theta_of(std::size_t b) const {
  LForm out(rank());
  for (std::size_t a = 0; a < rank(); ++a) {
    if (!theta_(b, a).is_zero()) out.add(indices_mask({a}), PolyScalar(theta_(b, a)));
  }
  return out;
}

const GeneratorBrackets& IsotropicSubbundle::transported_brackets() const {
  if (transported_.empty()) {
    throw std::logic_error("bracket on L* unavailable: L must be isotropic, involutive and separated");
  }
  return transported_;
}

IsotropicSubbundle build_complex_eigenbundle(const Eigenframe& e) {
  const FrameAlgebra& g = e.frame;
  const std::size_t m = g.dim();
  const std::size_t n = e.half_dim();
  std::vector<GenSection> gens;
  std::vector<std::string> labels;
  for (std::size_t b = 0; b < n; ++b) {
    gens.push_back(GenSection::tangent_basis(m, n + b));
    labels.push_back(g.name(n + b));
  }
  for (std::size_t b = 0; b < n; ++b) {
    gens.push_back(GenSection::cotangent_basis(m, b));
    labels.push_back(g.dual_name(b));
  }
  return IsotropicSubbundle(g, std::move(gens), std::move(labels));
}

IsotropicSubbundle build_symplectic_eigenbundle(const FrameAlgebra& g, const InvariantForm& w) {
  const std::size_t m = g.dim();
  if (g.is_complex()) throw std::invalid_argument("symplectic eigenbundle: frame must be real");
  if (w.dim() != m || !w.is_homogeneous(2)) throw std::invalid_argument("symplectic eigenbundle: w must be a 2-form on the frame");
  Matrix wm(m, m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      Components ea(m), eb(m);
      ea[a] = 1;
      eb[b] = 1;
      PolyScalar v = w.evaluate({ea, eb});
      if (!v.is_constant()) throw std::invalid_argument("symplectic eigenbundle: w must have constant coefficients");
      if (!v.is_zero()) wm(a, b) = v.constant_value();
    }
  }
  if (rank(wm) != m) throw std::invalid_argument("symplectic eigenbundle: w is degenerate");
  const GaussianRational minus_i = -GaussianRational::i();
  std::vector<GenSection> gens;
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    GenSection s = GenSection::tangent_basis(m, a);
    for (std::size_t b = 0; b < m; ++b) {
      if (!wm(a, b).is_zero()) s.cotangent()[b] = PolyScalar(minus_i * wm(a, b));
    }
    gens.push_back(std::move(s));
    labels.push_back("l_" + g.name(a));
  }
  return IsotropicSubbundle(g, std::move(gens), std::move(labels));
}

LForm d_L_invariant(const IsotropicSubbundle& l, const LForm& f) {
  if (f.has_functions()) throw std::invalid_argument("d_L_invariant: coefficient functions present; use d_L_general");
  return chevalley_eilenberg(f, l.structure());
}

PolyScalar d_L_general(const IsotropicSubbundle& l, const LForm& f, const std::vector<Components>& args) {
  if (args.empty() || args.size() > 3) throw std::invalid_argument("d_L_general: forms of degree 0 to 2 only");
  const std::size_t p = args.size() - 1;
  if (!f.is_homogeneous(p)) throw std::invalid_argument("d_L_general: form degree does not match argument count");
  std::vector<GenSection> xs;
  for (const auto& a : args) xs.push_back(l.section(a));

  auto omit = [&args](std::vector<std::size_t> skip) {
    std::vector<Components> out;
    for (std::size_t k = 0; k < args.size(); ++k) {
      bool drop = false;
      for (auto s : skip) drop = drop || s == k;
      if (!drop) out.push_back(args[k]);
    }
    return out;
  };

  PolyScalar out;
  for (std::size_t i = 0; i <= p; ++i) {
    PolyScalar v = f.evaluate(omit({i}));
    PolyScalar term = apply_vector(l.frame(), xs[i].tangent(), v);
    if (i % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  for (std::size_t i = 0; i <= p; ++i) {
    for (std::size_t j = i + 1; j <= p; ++j) {
      GenSection br = courant_bracket(l.frame(), xs[i], xs[j]);
      auto coords = l.coordinates(br);
      if (!coords) throw ConsistencyError("d_L_general: bracket of L-sections left L");
      std::vector<Components> rest = omit({i, j});
      rest.insert(rest.begin(), std::move(*coords));
      PolyScalar term = f.evaluate(rest);
      if ((i + j) % 2 == 0) {
        out += term;
      } else {
        out -= term;
      }
    }
  }
  if (!f.has_functions() && out.has_derivations()) {
    throw ConsistencyError("d_L_general: derivative terms survive for an invariant form: " + out.str());
  }
  return out;
}

LForm schouten_bracket(const IsotropicSubbundle& l, const LForm& a, const LForm& b) {
  if (a.has_functions() || b.has_functions()) {
    throw std::invalid_argument("schouten_bracket: coefficient functions present");
  }
  if (a.dim() != l.rank() || b.dim() != l.rank()) throw std::invalid_argument("schouten_bracket: dimension mismatch");
  return biderivation_bracket(a, b, l.transported_brackets());
}

}  // namespace gcdeform
