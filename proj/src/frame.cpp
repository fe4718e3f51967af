#include "gcdeform/frame.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

namespace gcdeform {

FrameAlgebra::FrameAlgebra(std::vector<std::string> names, StructureConstants c, std::vector<std::string> dual_names)
    : names_(std::move(names)), dual_names_(std::move(dual_names)), c_(std::move(c)) {
  if (dual_names_.empty()) {
    for (const auto& n : names_) dual_names_.push_back(n + "*");
  }
  conjugation_.resize(names_.size());
  std::iota(conjugation_.begin(), conjugation_.end(), std::size_t{0});
  check();
}

FrameAlgebra FrameAlgebra::complexified(std::vector<std::string> names, std::vector<std::string> dual_names,
                                        StructureConstants c, std::vector<std::size_t> conjugation) {
  FrameAlgebra g;
  g.names_ = std::move(names);
  g.dual_names_ = std::move(dual_names);
  g.c_ = std::move(c);
  g.conjugation_ = std::move(conjugation);
  g.complex_ = true;
  g.check();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (g.conjugation_[i] >= g.dim() || g.conjugation_[g.conjugation_[i]] != i) {
      throw std::invalid_argument("FrameAlgebra: conjugation is not an involution");
    }
  }
  return g;
}

void FrameAlgebra::check() const {
  const std::size_t n = names_.size();
  if (c_.dim() != n) throw std::invalid_argument("FrameAlgebra: structure constants have wrong dimension");
  if (dual_names_.size() != n || conjugation_.size() != n) {
    throw std::invalid_argument("FrameAlgebra: label lists have wrong length");
  }
  std::set<std::string> seen;
  for (const auto& s : names_) seen.insert(s);
  for (const auto& s : dual_names_) seen.insert(s);
  if (seen.size() != 2 * n) throw std::invalid_argument("FrameAlgebra: basis and dual names must be unique");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (!(c_(i, j, k) == -c_(j, i, k))) {
          throw std::invalid_argument("FrameAlgebra: bracket [" + names_[i] + ", " + names_[j] + "] is not skew");
        }
      }
    }
  }
}

std::optional<std::size_t> FrameAlgebra::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> FrameAlgebra::dual_index_of(const std::string& name) const {
  for (std::size_t i = 0; i < dual_names_.size(); ++i) {
    if (dual_names_[i] == name) return i;
  }
  return std::nullopt;
}

namespace {

// [v, e_k] for v given by components.
std::vector<GaussianRational> bracket_with(const StructureConstants& c, const std::vector<GaussianRational>& v,
                                           std::size_t k) {
  const std::size_t n = c.dim();
  std::vector<GaussianRational> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    if (v[a].is_zero()) continue;
    for (std::size_t b = 0; b < n; ++b) out[b] += v[a] * c(a, k, b);
  }
  return out;
}

}  // namespace

std::vector<JacobiViolation> validate_jacobi(const FrameAlgebra& g) {
  const auto& c = g.structure();
  const std::size_t n = g.dim();
  std::vector<JacobiViolation> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        auto a = bracket_with(c, c.bracket(i, j), k);
        auto b = bracket_with(c, c.bracket(j, k), i);
        auto d = bracket_with(c, c.bracket(k, i), j);
        bool zero = true;
        for (std::size_t m = 0; m < n; ++m) {
          a[m] += b[m] + d[m];
          zero = zero && a[m].is_zero();
        }
        if (!zero) out.push_back({i, j, k, std::move(a)});
      }
    }
  }
  return out;
}

ComplexOp::ComplexOp(Matrix j) : j_(std::move(j)) {
  if (j_.rows() != j_.cols()) throw std::invalid_argument("ComplexOp: matrix must be square");
  Matrix sq = j_ * j_;
  Matrix minus_one(j_.rows(), j_.rows());
  for (std::size_t k = 0; k < j_.rows(); ++k) minus_one(k, k) = -1;
  if (!(sq == minus_one)) throw std::invalid_argument("ComplexOp: J^2 != -1");
}

Eigenframe eigenframe(const FrameAlgebra& g, const ComplexOp& j, const EigenframeNames& names) {
  if (g.is_complex()) throw std::invalid_argument("eigenframe: input frame is already complexified");
  const std::size_t n2 = g.dim();
  if (j.dim() != n2) throw std::invalid_argument("eigenframe: J has wrong dimension");
  if (n2 % 2 != 0) throw std::invalid_argument("eigenframe: odd dimension");
  const std::size_t n = n2 / 2;
  const Matrix& jm = j.matrix();
  const GaussianRational half = GaussianRational::ratio(1, 2);
  const GaussianRational i = GaussianRational::i();

  // Greedy choice of real basis vectors whose (e - iJe)/2 are independent.
  std::vector<std::vector<GaussianRational>> holo;
  for (std::size_t a = 0; a < n2 && holo.size() < n; ++a) {
    std::vector<GaussianRational> v(n2);
    for (std::size_t r = 0; r < n2; ++r) v[r] = half * ((r == a ? GaussianRational(1) : GaussianRational()) - i * jm(r, a));
    Matrix trial(n2, holo.size() + 1);
    for (std::size_t c = 0; c < holo.size(); ++c) {
      for (std::size_t r = 0; r < n2; ++r) trial(r, c) = holo[c][r];
    }
    for (std::size_t r = 0; r < n2; ++r) trial(r, holo.size()) = v[r];
    if (rank(trial) == holo.size() + 1) holo.push_back(std::move(v));
  }
  if (holo.size() != n) throw std::invalid_argument("eigenframe: +i eigenspace has wrong dimension");

  Matrix to_real(n2, n2);
  for (std::size_t b = 0; b < n; ++b) {
    for (std::size_t r = 0; r < n2; ++r) {
      to_real(r, b) = holo[b][r];
      to_real(r, n + b) = holo[b][r].conj();
    }
  }
  auto from_real = inverse(to_real);
  if (!from_real) throw std::invalid_argument("eigenframe: eigenvectors are not a basis");

  const auto& c = g.structure();
  StructureConstants cc(n2);
  for (std::size_t p = 0; p < n2; ++p) {
    for (std::size_t q = 0; q < n2; ++q) {
      std::vector<GaussianRational> real(n2);
      for (std::size_t a = 0; a < n2; ++a) {
        if (to_real(a, p).is_zero()) continue;
        for (std::size_t d = 0; d < n2; ++d) {
          if (to_real(d, q).is_zero()) continue;
          GaussianRational w = to_real(a, p) * to_real(d, q);
          for (std::size_t k = 0; k < n2; ++k) real[k] += w * c(a, d, k);
        }
      }
      for (std::size_t k = 0; k < n2; ++k) {
        GaussianRational v;
        for (std::size_t r = 0; r < n2; ++r) v += (*from_real)(k, r) * real[r];
        cc(p, q, k) = v;
      }
    }
  }

  std::vector<std::string> frame_names(n2);
  std::vector<std::string> dual_names(n2);
  std::vector<std::size_t> conj(n2);
  for (std::size_t b = 0; b < n; ++b) {
    frame_names[b] = b < names.holomorphic.size() ? names.holomorphic[b] : "Z" + std::to_string(b + 1);
    dual_names[b] = b < names.coframe.size() ? names.coframe[b] : "zeta" + std::to_string(b + 1);
    frame_names[n + b] = frame_names[b] + "bar";
    dual_names[n + b] = dual_names[b] + "bar";
    conj[b] = n + b;
    conj[n + b] = b;
  }
  return Eigenframe{FrameAlgebra::complexified(std::move(frame_names), std::move(dual_names), std::move(cc), std::move(conj)),
                    std::move(to_real), std::move(*from_real)};
}

InvariantForm ce_differential(const FrameAlgebra& g, const InvariantForm& f) {
  if (f.has_functions()) {
    throw std::invalid_argument("ce_differential: coefficient functions present; use the algebroid d_L path");
  }
  return chevalley_eilenberg(f, g.structure());
}

std::pair<FrameAlgebra, ComplexOp> kodaira_preset() {
  StructureConstants c(4);
  c(0, 1, 2) = 1;  // [X, Y] = U
  c(1, 0, 2) = -1;
  Matrix j(4, 4);
  j(1, 0) = 1;   // JX = Y
  j(0, 1) = -1;  // JY = -X
  j(3, 2) = 1;   // JU = V
  j(2, 3) = -1;  // JV = -U
  return {FrameAlgebra({"X", "Y", "U", "V"}, std::move(c)), ComplexOp(std::move(j))};
}

EigenframeNames kodaira_names() { return {{"T", "W"}, {"omega", "rho"}}; }

}  // namespace gcdeform
