#include "gcdeform/exterior.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace gcdeform {

bool BasisOrder::operator()(BasisMask a, BasisMask b) const {
  int pa = std::popcount(a);
  int pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  if (a == b) return false;
  BasisMask diff = a ^ b;
  BasisMask lowest = diff & (~diff + 1);
  return (a & lowest) != 0;
}

std::vector<std::size_t> mask_indices(BasisMask m) {
  std::vector<std::size_t> out;
  while (m != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
    m &= m - 1;
  }
  return out;
}

BasisMask indices_mask(const std::vector<std::size_t>& sorted_indices) {
  BasisMask m = 0;
  for (auto i : sorted_indices) m |= BasisMask{1} << i;
  return m;
}

std::vector<BasisMask> basis_masks(std::size_t dim, std::size_t degree) {
  std::vector<BasisMask> out;
  if (dim > kMaxExteriorDim || degree > dim) return out;
  const std::uint64_t limit = std::uint64_t{1} << dim;
  for (std::uint64_t m = 0; m < limit; ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) == degree) out.push_back(static_cast<BasisMask>(m));
  }
  std::sort(out.begin(), out.end(), BasisOrder{});
  return out;
}

namespace {

// Sign of a ^ b for disjoint masks (inversions when merging a then b).
int merge_sign(BasisMask a, BasisMask b) {
  int inversions = 0;
  for (auto j : mask_indices(b)) {
    BasisMask above = j + 1 >= 32 ? 0 : ~((BasisMask{1} << (j + 1)) - 1);
    inversions += std::popcount(a & above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

ExteriorForm::ExteriorForm(std::size_t dim) : dim_(dim) {
  if (dim > kMaxExteriorDim) throw std::invalid_argument("ExteriorForm: dimension above 32");
}

ExteriorForm ExteriorForm::scalar(std::size_t dim, const PolyScalar& value) {
  ExteriorForm f(dim);
  f.add(0, value);
  return f;
}

ExteriorForm ExteriorForm::basis(std::size_t dim, const std::vector<std::size_t>& indices, const PolyScalar& coeff) {
  ExteriorForm f(dim);
  std::vector<std::size_t> idx = indices;
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] >= dim) throw std::out_of_range("ExteriorForm::basis: index out of range");
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return f;
      if (idx[a] > idx[b]) sign = -sign;
    }
  }
  std::sort(idx.begin(), idx.end());
  f.add(indices_mask(idx), sign > 0 ? coeff : -coeff);
  return f;
}

PolyScalar ExteriorForm::coefficient(BasisMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? PolyScalar() : it->second;
}

PolyScalar ExteriorForm::coefficient(const std::vector<std::size_t>& indices) const {
  ExteriorForm probe = basis(dim_, indices);
  if (probe.is_zero()) return {};
  const auto& [mask, sign] = *probe.terms_.begin();
  return sign * coefficient(mask);
}

void ExteriorForm::add(BasisMask m, const PolyScalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ExteriorForm::is_homogeneous(std::size_t k) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [k](const auto& t) { return static_cast<std::size_t>(std::popcount(t.first)) == k; });
}

ExteriorForm ExteriorForm::component(std::size_t k) const {
  ExteriorForm out(dim_);
  for (const auto& [m, c] : terms_) {
    if (static_cast<std::size_t>(std::popcount(m)) == k) out.terms_.emplace(m, c);
  }
  return out;
}

bool ExteriorForm::has_functions() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.has_functions(); });
}

ExteriorForm& ExteriorForm::operator+=(const ExteriorForm& o) {
  if (dim_ == 0 && terms_.empty()) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ExteriorForm& ExteriorForm::operator-=(const ExteriorForm& o) {
  if (dim_ == 0 && terms_.empty()) dim_ = o.dim_;
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

ExteriorForm operator*(const PolyScalar& c, const ExteriorForm& f) {
  ExteriorForm out(f.dim_);
  for (const auto& [m, v] : f.terms_) out.add(m, c * v);
  return out;
}

ExteriorForm ExteriorForm::operator-() const {
  ExteriorForm out(dim_);
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, -v);
  return out;
}

ExteriorForm ExteriorForm::substitute(const PolyBindings& bindings) const {
  ExteriorForm out(dim_);
  for (const auto& [m, v] : terms_) out.add(m, v.substitute(bindings));
  return out;
}

ExteriorForm ExteriorForm::substitute(const SymbolBindings& bindings) const {
  ExteriorForm out(dim_);
  for (const auto& [m, v] : terms_) out.add(m, v.substitute(bindings));
  return out;
}

PolyScalar determinant(const std::vector<std::vector<PolyScalar>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  PolyScalar out;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<PolyScalar>> minor(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      minor[r - 1].reserve(n - 1);
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) minor[r - 1].push_back(m[r][k]);
      }
    }
    PolyScalar term = m[0][c] * determinant(minor);
    if (c % 2 == 0) {
      out += term;
    } else {
      out -= term;
    }
  }
  return out;
}

PolyScalar ExteriorForm::evaluate(const std::vector<Components>& args) const {
  const std::size_t k = args.size();
  for (const auto& a : args) {
    if (a.size() != dim_) throw std::invalid_argument("ExteriorForm::evaluate: argument has wrong length");
  }
  PolyScalar out;
  for (const auto& [mask, coeff] : terms_) {
    auto idx = mask_indices(mask);
    if (idx.size() != k) throw std::invalid_argument("ExteriorForm::evaluate: degree does not match argument count");
    std::vector<std::vector<PolyScalar>> mat(k, std::vector<PolyScalar>(k));
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) mat[r][c] = args[c][idx[r]];
    }
    out += coeff * determinant(mat);
  }
  return out;
}

std::string render_basis(BasisMask m, const std::vector<std::string>& labels) {
  if (m == 0) return "1";
  std::string out;
  for (auto i : mask_indices(m)) {
    if (!out.empty()) out += "^";
    out += i < labels.size() ? labels[i] : "e" + std::to_string(i);
  }
  return out;
}

void append_term(std::string& out, const PolyScalar& c, const std::string& label) {
  if (c.is_zero()) return;
  std::string coeff = c.str();
  bool compound = c.size() > 1 || coeff.find(' ') != std::string::npos;
  bool negative = !compound && coeff.front() == '-';
  if (negative) coeff.erase(0, 1);
  std::string body;
  if (label.empty()) {
    body = compound ? "(" + coeff + ")" : coeff;
  } else if (coeff == "1" && !compound) {
    body = label;
  } else {
    body = (compound ? "(" + coeff + ")" : coeff) + " " + label;
  }
  if (out.empty()) {
    out = negative ? "-" + body : body;
  } else {
    out += negative ? " - " : " + ";
    out += body;
  }
}

std::string ExteriorForm::str(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) append_term(out, c, m == 0 ? "" : render_basis(m, labels));
  return out;
}

ExteriorForm wedge(const ExteriorForm& a, const ExteriorForm& b) {
  ExteriorForm out(std::max(a.dim(), b.dim()));
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if ((ma & mb) != 0) continue;
      PolyScalar c = ca * cb;
      out.add(ma | mb, merge_sign(ma, mb) > 0 ? c : -c);
    }
  }
  return out;
}

std::vector<GaussianRational> StructureConstants::bracket(std::size_t i, std::size_t j) const {
  std::vector<GaussianRational> out(dim_);
  for (std::size_t k = 0; k < dim_; ++k) out[k] = (*this)(i, j, k);
  return out;
}

bool StructureConstants::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const auto& v) { return v.is_zero(); });
}

ExteriorForm chevalley_eilenberg(const ExteriorForm& f, const StructureConstants& c) {
  const std::size_t n = c.dim();
  if (f.dim() != n) throw std::invalid_argument("chevalley_eilenberg: dimension mismatch");
  std::vector<ExteriorForm> d1(n, ExteriorForm(n));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const auto& v = c(i, j, k);
        if (!v.is_zero()) d1[k] += ExteriorForm::basis(n, {i, j}, PolyScalar(-v));
      }
    }
  }
  ExteriorForm out(n);
  for (const auto& [mask, coeff] : f.terms()) {
    auto idx = mask_indices(mask);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      if (d1[idx[r]].is_zero()) continue;
      std::vector<std::size_t> before(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(r));
      std::vector<std::size_t> after(idx.begin() + static_cast<std::ptrdiff_t>(r) + 1, idx.end());
      ExteriorForm term =
          wedge(wedge(ExteriorForm::basis(n, before), d1[idx[r]]), ExteriorForm::basis(n, after));
      PolyScalar sign = r % 2 == 0 ? coeff : -coeff;
      out += sign * term;
    }
  }
  return out;
}

ExteriorForm biderivation_bracket(const ExteriorForm& a, const ExteriorForm& b, const GeneratorBrackets& table) {
  const std::size_t n = a.dim();
  ExteriorForm out(n);
  for (const auto& [ma, ca] : a.terms()) {
    auto ia = mask_indices(ma);
    for (const auto& [mb, cb] : b.terms()) {
      auto ib = mask_indices(mb);
      PolyScalar coeff = ca * cb;
      for (std::size_t i = 0; i < ia.size(); ++i) {
        for (std::size_t j = 0; j < ib.size(); ++j) {
          const ExteriorForm& gen = table[ia[i]][ib[j]];
          if (gen.is_zero()) continue;
          std::vector<std::size_t> rest_a = ia;
          rest_a.erase(rest_a.begin() + static_cast<std::ptrdiff_t>(i));
          std::vector<std::size_t> rest_b = ib;
          rest_b.erase(rest_b.begin() + static_cast<std::ptrdiff_t>(j));
          ExteriorForm term = wedge(wedge(gen, ExteriorForm::basis(n, rest_a)), ExteriorForm::basis(n, rest_b));
          out += ((i + j) % 2 == 0 ? coeff : -coeff) * term;
        }
      }
    }
  }
  return out;
}

}  // namespace gcdeform
