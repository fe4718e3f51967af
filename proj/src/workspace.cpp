#include "gcdeform/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace gcdeform {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

struct Piece {
  std::string text;
  std::size_t column;  // 1-based
};

Piece trim(const Piece& p) {
  std::size_t b = 0;
  std::size_t e = p.text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(p.text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(p.text[e - 1]))) --e;
  return {p.text.substr(b, e - b), p.column + b};
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  std::size_t end = s.size();
  if (s.back() == '*') --end;
  for (std::size_t k = 0; k < end; ++k) {
    if (!(std::isalnum(static_cast<unsigned char>(s[k])) || s[k] == '_')) return false;
  }
  return end > 0 && s != "i";
}

bool is_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) { throw ParseError(line, column, msg); }

// Splits a sum at top-level '+' and '-'; leading signs fold into the first term.
std::vector<std::pair<char, Piece>> split_signed(const Piece& p, std::size_t line) {
  std::vector<std::pair<char, Piece>> out;
  int depth = 0;
  char sign = '+';
  std::size_t start = 0;
  bool seen_content = false;
  for (std::size_t k = 0; k < p.text.size(); ++k) {
    char c = p.text[k];
    if (c == '(') ++depth;
    if (c == ')') {
      if (--depth < 0) fail(line, p.column + k, "unbalanced ')'");
    }
    if (depth == 0 && (c == '+' || c == '-')) {
      if (!seen_content) {
        if (c == '-') sign = sign == '+' ? '-' : '+';
        start = k + 1;
        continue;
      }
      out.push_back({sign, {p.text.substr(start, k - start), p.column + start}});
      sign = c;
      start = k + 1;
      seen_content = false;
      continue;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) seen_content = true;
  }
  if (depth != 0) fail(line, p.column + p.text.size(), "unbalanced '('");
  if (!seen_content) fail(line, p.column + start, "missing term");
  out.push_back({sign, {p.text.substr(start), p.column + start}});
  return out;
}

std::vector<Piece> split_top(const Piece& p, char sep) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < p.text.size(); ++k) {
    char c = p.text[k];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == sep) {
      out.push_back({p.text.substr(start, k - start), p.column + start});
      start = k + 1;
    }
  }
  out.push_back({p.text.substr(start), p.column + start});
  return out;
}

struct Term {
  GaussianRational coeff{1};
  std::optional<std::string> name;
  std::size_t name_column = 0;
};

GaussianRational parse_constant(const Piece& p, std::size_t line);

// atom ('/' digits)? with atom = digits | i | '(' constant ')'.
GaussianRational parse_factor(const Piece& raw, std::size_t line) {
  Piece f = trim(raw);
  if (f.text.empty()) fail(line, f.column, "missing factor");
  auto parts = split_top(f, '/');
  if (parts.size() > 2) fail(line, f.column, "malformed coefficient '" + f.text + "'");
  Piece atom = trim(parts[0]);
  GaussianRational value;
  if (atom.text == "i") {
    value = GaussianRational::i();
  } else if (is_digits(atom.text)) {
    value = GaussianRational(Rational(mpz_class(atom.text)));
  } else if (atom.text.size() >= 2 && atom.text.front() == '(' && atom.text.back() == ')') {
    value = parse_constant({atom.text.substr(1, atom.text.size() - 2), atom.column + 1}, line);
  } else {
    fail(line, atom.column, "malformed coefficient '" + atom.text + "'");
  }
  if (parts.size() == 2) {
    Piece den = trim(parts[1]);
    if (!is_digits(den.text)) fail(line, den.column, "malformed denominator '" + den.text + "'");
    mpz_class d(den.text);
    if (d == 0) fail(line, den.column, "zero denominator");
    value /= GaussianRational(Rational(d));
  }
  return value;
}

Term parse_term(const Piece& body, char sign, std::size_t line, bool allow_name) {
  Term t;
  auto factors = split_top(body, '*');
  // Rejoin "X" "" produced by a trailing dual-name star: "U*" splits into "U" and "".
  std::vector<Piece> merged;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    Piece f = trim(factors[k]);
    if (f.text.empty() && !merged.empty() && is_identifier(trim(merged.back()).text + "*") &&
        trim(merged.back()).text.back() != '*') {
      merged.back().text = trim(merged.back()).text + "*";
      continue;
    }
    merged.push_back(factors[k]);
  }
  for (std::size_t k = 0; k < merged.size(); ++k) {
    Piece f = trim(merged[k]);
    if (is_identifier(f.text)) {
      if (!allow_name) fail(line, f.column, "expected a coefficient, found name '" + f.text + "'");
      if (t.name) fail(line, f.column, "term has more than one basis name");
      if (k + 1 != merged.size()) fail(line, f.column, "basis name must be the last factor");
      t.name = f.text;
      t.name_column = f.column;
      continue;
    }
    t.coeff *= parse_factor(f, line);
  }
  if (sign == '-') t.coeff = -t.coeff;
  return t;
}

GaussianRational parse_constant(const Piece& p, std::size_t line) {
  GaussianRational out;
  for (const auto& [sign, body] : split_signed(p, line)) out += parse_term(body, sign, line, false).coeff;
  return out;
}

// Linear combination over the names known to `index`, as an index -> coefficient map.
std::map<std::size_t, GaussianRational> parse_lincomb(const Piece& p, std::size_t line,
                                                      const std::map<std::string, std::size_t>& index) {
  std::map<std::size_t, GaussianRational> out;
  Piece t = trim(p);
  if (t.text == "0") return out;
  for (const auto& [sign, body] : split_signed(t, line)) {
    Term term = parse_term(body, sign, line, true);
    if (!term.name) fail(line, trim(body).column, "term has no basis name");
    auto it = index.find(*term.name);
    if (it == index.end()) fail(line, term.name_column, "unknown basis name '" + *term.name + "'");
    out[it->second] += term.coeff;
  }
  for (auto it = out.begin(); it != out.end();) {
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  }
  return out;
}

std::vector<Piece> words(const std::string& line) {
  std::vector<Piece> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    std::size_t s = k;
    while (k < line.size() && !std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    if (k > s) out.push_back({line.substr(s, k - s), s + 1});
  }
  return out;
}

// "<head words> = <rhs>": returns head words and rhs piece.
std::pair<std::vector<Piece>, Piece> split_equation(const std::string& line, std::size_t lineno) {
  auto eq = line.find('=');
  if (eq == std::string::npos) fail(lineno, line.size() + 1, "expected '='");
  auto head = words(line.substr(0, eq));
  Piece rhs = trim({line.substr(eq + 1), eq + 2});
  if (rhs.text.empty()) fail(lineno, eq + 2, "missing right-hand side");
  return {head, rhs};
}

const char* kind_name(StructureKind k) {
  switch (k) {
    case StructureKind::complex: return "complex";
    case StructureKind::symplectic: return "symplectic";
    case StructureKind::subbundle: return "subbundle";
    case StructureKind::none: break;
  }
  return "none";
}

}  // namespace

GaussianRational parse_coefficient(const std::string& text) {
  try {
    return parse_constant({text, 1}, 1);
  } catch (const ParseError& e) {
    throw std::invalid_argument("malformed coefficient '" + text + "'");
  }
}

WorkspaceSpec parse_workspace(const std::string& text) {
  WorkspaceSpec spec;
  std::map<std::string, std::size_t> index;       // basis names
  std::map<std::string, std::size_t> full_index;  // basis then dual names
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> bracket_lines;
  std::map<std::size_t, std::size_t> j_lines;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> form_lines;
  std::set<std::string> generator_labels;
  std::size_t structure_line = 0;
  std::size_t basis_line = 0;

  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    auto w = words(line);
    if (w.empty()) continue;
    const std::string& head = w[0].text;
    const std::size_t m = spec.basis.size();
    auto need_basis = [&]() {
      if (basis_line == 0) fail(lineno, w[0].column, "'" + head + "' before 'basis'");
    };
    auto need_kind = [&](StructureKind k) {
      need_basis();
      if (spec.kind != k) fail(lineno, w[0].column, "'" + head + "' outside a '" + kind_name(k) + "' section");
    };
    auto basis_index = [&](const Piece& p) {
      auto it = index.find(p.text);
      if (it == index.end()) fail(lineno, p.column, "unknown basis name '" + p.text + "'");
      return it->second;
    };

    if (head == "basis") {
      if (basis_line != 0) fail(lineno, w[0].column, "second 'basis' line (first on line " + std::to_string(basis_line) + ")");
      basis_line = lineno;
      for (std::size_t k = 1; k < w.size(); ++k) {
        const auto& name = w[k].text;
        if (!is_identifier(name) || name.back() == '*') fail(lineno, w[k].column, "invalid basis name '" + name + "'");
        if (index.count(name)) fail(lineno, w[k].column, "duplicate basis name '" + name + "'");
        index.emplace(name, spec.basis.size());
        spec.basis.push_back(name);
      }
      if (spec.basis.empty()) fail(lineno, w[0].column, "empty basis");
      if (spec.basis.size() > 16) fail(lineno, w[0].column, "at most 16 basis vectors are supported");
      const std::size_t n = spec.basis.size();
      for (std::size_t k = 0; k < n; ++k) {
        full_index.emplace(spec.basis[k], k);
        if (index.count(spec.basis[k] + "*")) fail(lineno, w[0].column, "basis name clashes with a dual name");
        full_index.emplace(spec.basis[k] + "*", n + k);
      }
      spec.brackets = StructureConstants(n);
    } else if (head == "bracket") {
      need_basis();
      auto [lhs, rhs] = split_equation(line, lineno);
      if (lhs.size() != 3) fail(lineno, w[0].column, "expected 'bracket A B = ...'");
      std::size_t a = basis_index(lhs[1]);
      std::size_t b = basis_index(lhs[2]);
      auto value = parse_lincomb(rhs, lineno, index);
      if (a == b) {
        if (!value.empty()) fail(lineno, rhs.column, "non-skew bracket: [" + lhs[1].text + ", " + lhs[1].text + "] must be 0");
        continue;
      }
      auto check_against = [&](std::size_t x, std::size_t y, const GaussianRational& sign, const char* what) {
        auto it = bracket_lines.find({x, y});
        if (it == bracket_lines.end()) return;
        for (std::size_t k = 0; k < m; ++k) {
          GaussianRational want = value.count(k) ? value.at(k) * sign : GaussianRational();
          if (!(spec.brackets(x, y, k) == want)) {
            fail(lineno, lhs[1].column,
                 std::string(what) + " with line " + std::to_string(it->second) + " for [" + spec.basis[x] + ", " +
                     spec.basis[y] + "]");
          }
        }
      };
      check_against(a, b, GaussianRational(1), "conflicting duplicate bracket");
      check_against(b, a, GaussianRational(-1), "non-skew bracket");
      bracket_lines[{a, b}] = lineno;
      for (std::size_t k = 0; k < m; ++k) {
        GaussianRational v = value.count(k) ? value.at(k) : GaussianRational();
        spec.brackets(a, b, k) = v;
        spec.brackets(b, a, k) = -v;
      }
    } else if (head == "complex" || head == "symplectic" || head == "subbundle") {
      need_basis();
      if (w.size() != 1) fail(lineno, w[1].column, "unexpected text after '" + head + "'");
      if (spec.kind != StructureKind::none) {
        fail(lineno, w[0].column, "second structure section (first on line " + std::to_string(structure_line) + ")");
      }
      structure_line = lineno;
      if (head == "complex") {
        spec.kind = StructureKind::complex;
        spec.j = Matrix(m, m);
      } else if (head == "symplectic") {
        spec.kind = StructureKind::symplectic;
        spec.form = Matrix(m, m);
      } else {
        spec.kind = StructureKind::subbundle;
      }
    } else if (head == "J") {
      need_kind(StructureKind::complex);
      auto [lhs, rhs] = split_equation(line, lineno);
      if (lhs.size() != 2) fail(lineno, w[0].column, "expected 'J A = ...'");
      std::size_t a = basis_index(lhs[1]);
      if (j_lines.count(a)) fail(lineno, lhs[1].column, "J " + lhs[1].text + " already given on line " + std::to_string(j_lines[a]));
      j_lines[a] = lineno;
      for (const auto& [k, v] : parse_lincomb(rhs, lineno, index)) spec.j(k, a) = v;
    } else if (head == "holomorphic" || head == "coframe") {
      need_kind(StructureKind::complex);
      auto& target = head == "holomorphic" ? spec.holomorphic : spec.coframe;
      if (!target.empty()) fail(lineno, w[0].column, "second '" + head + "' line");
      for (std::size_t k = 1; k < w.size(); ++k) {
        if (!is_identifier(w[k].text) || w[k].text.back() == '*') fail(lineno, w[k].column, "invalid name '" + w[k].text + "'");
        target.push_back(w[k].text);
      }
      if (target.size() * 2 != m) fail(lineno, w[0].column, "expected " + std::to_string(m / 2) + " names");
    } else if (head == "form") {
      need_kind(StructureKind::symplectic);
      auto [lhs, rhs] = split_equation(line, lineno);
      if (lhs.size() != 3) fail(lineno, w[0].column, "expected 'form A B = c'");
      std::size_t a = basis_index(lhs[1]);
      std::size_t b = basis_index(lhs[2]);
      GaussianRational v = parse_constant(rhs, lineno);
      if (a == b) {
        if (!v.is_zero()) fail(lineno, rhs.column, "non-skew form entry");
        continue;
      }
      for (auto key : {std::pair{a, b}, std::pair{b, a}}) {
        auto it = form_lines.find(key);
        if (it == form_lines.end()) continue;
        GaussianRational want = key.first == a ? v : -v;
        if (!(spec.form(key.first, key.second) == want)) {
          fail(lineno, lhs[1].column, "form entry conflicts with line " + std::to_string(it->second));
        }
      }
      form_lines[{a, b}] = lineno;
      spec.form(a, b) = v;
      spec.form(b, a) = -v;
    } else if (head == "generator") {
      need_kind(StructureKind::subbundle);
      auto [lhs, rhs] = split_equation(line, lineno);
      if (lhs.size() != 2 || !is_identifier(lhs[1].text) || lhs[1].text.back() == '*') {
        fail(lineno, w[0].column, "expected 'generator label = ...'");
      }
      if (!generator_labels.insert(lhs[1].text).second) fail(lineno, lhs[1].column, "duplicate generator label");
      SubbundleGenerator g{lhs[1].text, std::vector<GaussianRational>(2 * m)};
      for (const auto& [k, v] : parse_lincomb(rhs, lineno, full_index)) g.coefficients[k] = v;
      spec.generators.push_back(std::move(g));
    } else if (head == "parameters") {
      if (w.size() != 2 || !is_identifier(w[1].text) || w[1].text.back() == '*') {
        fail(lineno, w[0].column, "expected 'parameters <prefix>'");
      }
      spec.parameter_prefix = w[1].text;
    } else {
      fail(lineno, w[0].column, "unknown directive '" + head + "'");
    }
  }

  if (basis_line == 0) fail(lineno + 1, 1, "missing 'basis' line");
  const std::size_t m = spec.basis.size();
  if (spec.kind == StructureKind::complex) {
    Matrix minus_one(m, m);
    for (std::size_t k = 0; k < m; ++k) minus_one(k, k) = -1;
    if (!(spec.j * spec.j == minus_one)) fail(structure_line, 1, "J does not square to -1");
    if (spec.holomorphic.empty() != spec.coframe.empty()) {
      fail(structure_line, 1, "'holomorphic' and 'coframe' must be given together");
    }
    std::set<std::string> names(spec.basis.begin(), spec.basis.end());
    for (const auto& v : {spec.holomorphic, spec.coframe}) {
      for (const auto& s : v) {
        if (!names.insert(s).second || !names.insert(s + "bar").second) {
          fail(structure_line, 1, "eigenframe name '" + s + "' is not unique");
        }
      }
    }
  } else if (spec.kind == StructureKind::symplectic) {
    if (rank(spec.form) != m) fail(structure_line, 1, "symplectic form is degenerate");
  } else if (spec.kind == StructureKind::subbundle) {
    if (spec.generators.size() != m) {
      fail(structure_line, 1, "subbundle needs exactly " + std::to_string(m) + " generators");
    }
  }
  return spec;
}

namespace {

std::string render_scaled(const GaussianRational& c, const std::string& name, bool first) {
  bool mixed = !c.is_real() && sgn(c.re()) != 0;
  bool negative = !mixed && (c.is_real() ? sgn(c.re()) < 0 : sgn(c.im()) < 0);
  GaussianRational mag = negative ? -c : c;
  std::string body;
  if (mixed) {
    body = "(" + c.str() + ")";
  } else {
    body = mag.str();
  }
  if (!name.empty()) body = mag == GaussianRational(1) && !mixed ? name : body + "*" + name;
  if (first) return negative ? "-" + body : body;
  return (negative ? " - " : " + ") + body;
}

std::string render_lincomb(const std::vector<std::pair<std::string, GaussianRational>>& terms) {
  std::string out;
  for (const auto& [name, c] : terms) {
    if (c.is_zero()) continue;
    out += render_scaled(c, name, out.empty());
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string render_workspace(const WorkspaceSpec& spec) {
  std::ostringstream out;
  const std::size_t m = spec.basis.size();
  out << "basis";
  for (const auto& b : spec.basis) out << ' ' << b;
  out << '\n';
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      std::vector<std::pair<std::string, GaussianRational>> terms;
      for (std::size_t k = 0; k < m; ++k) terms.emplace_back(spec.basis[k], spec.brackets(a, b, k));
      std::string rhs = render_lincomb(terms);
      if (rhs != "0") out << "bracket " << spec.basis[a] << ' ' << spec.basis[b] << " = " << rhs << '\n';
    }
  }
  switch (spec.kind) {
    case StructureKind::complex:
      out << "complex\n";
      for (std::size_t a = 0; a < m; ++a) {
        std::vector<std::pair<std::string, GaussianRational>> terms;
        for (std::size_t k = 0; k < m; ++k) terms.emplace_back(spec.basis[k], spec.j(k, a));
        std::string rhs = render_lincomb(terms);
        if (rhs != "0") out << "J " << spec.basis[a] << " = " << rhs << '\n';
      }
      if (!spec.holomorphic.empty()) {
        out << "holomorphic";
        for (const auto& s : spec.holomorphic) out << ' ' << s;
        out << "\ncoframe";
        for (const auto& s : spec.coframe) out << ' ' << s;
        out << '\n';
      }
      break;
    case StructureKind::symplectic:
      out << "symplectic\n";
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
          if (!spec.form(a, b).is_zero()) {
            out << "form " << spec.basis[a] << ' ' << spec.basis[b] << " = " << render_scaled(spec.form(a, b), "", true)
                << '\n';
          }
        }
      }
      break;
    case StructureKind::subbundle:
      out << "subbundle\n";
      for (const auto& g : spec.generators) {
        std::vector<std::pair<std::string, GaussianRational>> terms;
        for (std::size_t k = 0; k < m; ++k) terms.emplace_back(spec.basis[k], g.coefficients[k]);
        for (std::size_t k = 0; k < m; ++k) terms.emplace_back(spec.basis[k] + "*", g.coefficients[m + k]);
        out << "generator " << g.label << " = " << render_lincomb(terms) << '\n';
      }
      break;
    case StructureKind::none:
      break;
  }
  out << "parameters " << spec.parameter_prefix << '\n';
  return out.str();
}

WorkspaceSpec kodaira_workspace() {
  return parse_workspace(
      "basis X Y U V\n"
      "bracket X Y = U\n"
      "complex\n"
      "J X = Y\n"
      "J Y = -X\n"
      "J U = V\n"
      "J V = -U\n"
      "holomorphic T W\n"
      "coframe omega rho\n"
      "parameters t\n");
}

}  // namespace gcdeform
