#include "gcdeform/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gcdeform/algebroid.hpp"
#include "gcdeform/deformation.hpp"

namespace gcdeform {

namespace {

using json = nlohmann::ordered_json;

class InputFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MathFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kFamilyChecks = 20;
constexpr std::uint32_t kFamilySeed = 20240611;

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (const auto& s : v) {
    if (!out.empty()) out += sep;
    out += s;
  }
  return out;
}

std::vector<std::string> names_of(const std::vector<Symbol>& v) {
  std::vector<std::string> out;
  for (const auto& s : v) out.push_back(s.name());
  return out;
}

std::string render_bindings(const SymbolBindings& at) {
  std::vector<std::string> parts;
  for (const auto& [s, v] : at) parts.push_back(s.name() + " = " + v.str());
  return join(parts, ", ");
}

json bindings_json(const SymbolBindings& at) {
  json j = json::object();
  for (const auto& [s, v] : at) j[s.name()] = v.str();
  return j;
}

std::string render_vector(const std::vector<GaussianRational>& v, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) append_term(out, PolyScalar(v[k]), names[k]);
  return out.empty() ? "0" : out;
}

struct Context {
  const WorkspaceSpec& spec;
  FrameAlgebra real;
  std::vector<JacobiViolation> jacobi;
  std::optional<Eigenframe> ef;
  std::optional<IsotropicSubbundle> l;
  std::optional<DeformationMap> map;
  std::optional<MCSystem> mc;
  std::optional<DeformationFamily> family;

  explicit Context(const WorkspaceSpec& s) : spec(s), real(s.basis, s.brackets) { jacobi = validate_jacobi(real); }

  const FrameAlgebra& working_frame() const { return ef ? ef->frame : real; }

  void build_structure() {
    if (l || spec.kind == StructureKind::none) return;
    const std::size_t m = spec.basis.size();
    switch (spec.kind) {
      case StructureKind::complex:
        ef = eigenframe(real, ComplexOp(spec.j), EigenframeNames{spec.holomorphic, spec.coframe});
        l = build_complex_eigenbundle(*ef);
        break;
      case StructureKind::symplectic: {
        InvariantForm w(m);
        for (std::size_t a = 0; a < m; ++a) {
          for (std::size_t b = a + 1; b < m; ++b) w.add(indices_mask({a, b}), PolyScalar(spec.form(a, b)));
        }
        l = build_symplectic_eigenbundle(real, w);
        break;
      }
      case StructureKind::subbundle: {
        std::vector<GenSection> gens;
        std::vector<std::string> labels;
        for (const auto& g : spec.generators) {
          GenSection s(m);
          for (std::size_t k = 0; k < m; ++k) {
            s.tangent()[k] = g.coefficients[k];
            s.cotangent()[k] = g.coefficients[m + k];
          }
          gens.push_back(std::move(s));
          labels.push_back(g.label);
        }
        try {
          l.emplace(real, std::move(gens), std::move(labels));
        } catch (const std::invalid_argument& e) {
          throw InputFailure(e.what());
        }
        break;
      }
      case StructureKind::none:
        break;
    }
  }

  const IsotropicSubbundle& algebroid() {
    if (spec.kind == StructureKind::none) throw InputFailure("workspace has no structure section");
    if (!jacobi.empty()) throw MathFailure("the bracket violates the Jacobi identity");
    build_structure();
    if (!l->isotropic() || !l->involutive() || !l->separated()) {
      throw MathFailure("L is not a generalized complex structure: " + join(l->failures(), "; "));
    }
    return *l;
  }

  const DeformationMap& deformation_map() {
    if (!map) map = constrain_map(algebroid(), spec.parameter_prefix);
    return *map;
  }

  const MCSystem& mc_system() {
    if (!mc) mc = mc_residual(algebroid(), deformation_map());
    return *mc;
  }

  const DeformationFamily& reduced() {
    if (!family) family = reduce_family(algebroid(), deformation_map(), mc_system());
    return *family;
  }
};

void validation_section(Context& ctx, ReportSection& s) {
  s = {"validation", "validation", {}, json::object()};
  s.lines.push_back("basis: " + join(ctx.spec.basis, " "));
  s.data["basis"] = ctx.spec.basis;
  json viol = json::array();
  if (ctx.jacobi.empty()) {
    s.lines.push_back("Jacobi identity: holds");
  } else {
    s.lines.push_back("Jacobi identity: fails");
    for (const auto& v : ctx.jacobi) {
      const auto& n = ctx.spec.basis;
      std::string defect = render_vector(v.defect, n);
      s.lines.push_back("  [[" + n[v.i] + ", " + n[v.j] + "], " + n[v.k] + "] + cyclic = " + defect);
      viol.push_back({{"triple", {n[v.i], n[v.j], n[v.k]}}, {"defect", defect}});
    }
  }
  s.data["jacobi"] = {{"holds", ctx.jacobi.empty()}, {"violations", viol}};
  const char* kind = ctx.spec.kind == StructureKind::complex      ? "complex"
                     : ctx.spec.kind == StructureKind::symplectic ? "symplectic"
                     : ctx.spec.kind == StructureKind::subbundle  ? "subbundle"
                                                                  : "none";
  s.lines.push_back(std::string("structure: ") + kind);
  s.data["structure"] = kind;
  if (ctx.spec.kind == StructureKind::none || !ctx.jacobi.empty()) return;

  ctx.build_structure();
  const IsotropicSubbundle& l = *ctx.l;
  const FrameAlgebra& f = ctx.working_frame();
  s.lines.push_back("L = span{" + join(l.labels(), ", ") + "}");
  json gens = json::array();
  for (std::size_t a = 0; a < l.rank(); ++a) {
    std::string value = l.generators()[a].str(f);
    if (value != l.labels()[a]) s.lines.push_back("  " + l.labels()[a] + " = " + value);
    gens.push_back({{"label", l.labels()[a]}, {"section", value}});
  }
  s.data["generators"] = gens;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  s.lines.push_back(std::string("isotropic: ") + yes(l.isotropic()));
  s.lines.push_back(std::string("involutive: ") + yes(l.involutive()));
  s.lines.push_back(std::string("L and its conjugate intersect trivially: ") + yes(l.separated()));
  for (const auto& msg : l.failures()) s.lines.push_back("  " + msg);
  s.data["isotropic"] = l.isotropic();
  s.data["involutive"] = l.involutive();
  s.data["separated"] = l.separated();
  s.data["failures"] = l.failures();
  if (l.isotropic() && l.separated()) {
    TypeInfo t = type_of(l);
    s.lines.push_back("type of L: k = " + std::to_string(t.k) + " (" + t.label + ")");
    s.data["type"] = {{"k", t.k}, {"label", t.label}};
  }
}

void eigenframe_section(Context& ctx, ReportSection& s) {
  s = {"eigenframe", "eigenframe", {}, json::object()};
  const Eigenframe& e = *ctx.ef;
  json vectors = json::object();
  for (std::size_t b = 0; b < e.frame.dim(); ++b) {
    std::string value = render_vector(e.to_real.column(b), ctx.spec.basis);
    s.lines.push_back(e.frame.name(b) + " = " + value);
    vectors[e.frame.name(b)] = value;
  }
  s.data["vectors"] = vectors;
  json brackets = json::array();
  for (std::size_t a = 0; a < e.frame.dim(); ++a) {
    for (std::size_t b = a + 1; b < e.frame.dim(); ++b) {
      auto v = e.frame.bracket(a, b);
      if (std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_zero(); })) continue;
      std::string value = render_vector(v, e.frame.names());
      s.lines.push_back("[" + e.frame.name(a) + ", " + e.frame.name(b) + "] = " + value);
      brackets.push_back({{"a", e.frame.name(a)}, {"b", e.frame.name(b)}, {"value", value}});
    }
  }
  s.data["brackets"] = brackets;
}

void bracket_section(Context& ctx, ReportSection& s) {
  s = {"brackets", "bracket table", {}, json::object()};
  const FrameAlgebra& f = ctx.working_frame();
  std::vector<GenSection> gens;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < f.dim(); ++k) {
    gens.push_back(GenSection::tangent_basis(f.dim(), k));
    labels.push_back(f.name(k));
  }
  for (std::size_t k = 0; k < f.dim(); ++k) {
    gens.push_back(GenSection::cotangent_basis(f.dim(), k));
    labels.push_back(f.dual_name(k));
  }
  BracketTable table = bracket_table(f, gens);
  std::size_t ordered = 0;
  json entries = json::array();
  for (std::size_t a = 0; a < gens.size(); ++a) {
    for (std::size_t b = 0; b < gens.size(); ++b) {
      if (table[a][b].is_zero()) continue;
      ++ordered;
      if (a > b) continue;
      std::string value = table[a][b].str(f);
      s.lines.push_back("[" + labels[a] + ", " + labels[b] + "] = " + value);
      entries.push_back({{"a", labels[a]}, {"b", labels[b]}, {"value", value}});
    }
  }
  s.lines.insert(s.lines.begin(), "nonzero ordered pairs: " + std::to_string(ordered) + " of " +
                                      std::to_string(gens.size() * gens.size()));
  s.data["nonzero_ordered_pairs"] = ordered;
  s.data["entries"] = entries;
}

void mc_section(Context& ctx, ReportSection& s) {
  s = {"mc", "MC system", {}, json::object()};
  const IsotropicSubbundle& l = ctx.algebroid();
  const DeformationMap& e = ctx.deformation_map();
  const MCSystem& mc = ctx.mc_system();
  const auto& labels = l.dual_labels();
  if (mc.is_empty()) s.title = "MC system: empty (all deformations unobstructed at this level)";
  s.lines.push_back("parameters: " + join(names_of(e.parameters), " "));
  std::vector<std::string> elim;
  json elim_j = json::object();
  for (const auto& [sym, v] : e.eliminated) {
    elim.push_back(sym.name() + " = " + v.str());
    elim_j[sym.name()] = v.str();
  }
  s.lines.push_back("eliminated by compatibility: " + join(elim, ", "));
  std::string et = e.tilde_form(l).str(labels);
  s.lines.push_back("eps~ = " + et);
  s.lines.push_back("d_L eps~ = " + mc.differential.str(labels));
  s.lines.push_back("[eps~, eps~] = " + mc.schouten.str(labels));
  json cons = json::array();
  if (!mc.is_empty()) s.lines.push_back("constraints:");
  for (std::size_t k = 0; k < mc.basis.size(); ++k) {
    if (mc.constraints[k].is_zero()) continue;
    std::string b = render_basis(mc.basis[k], labels);
    s.lines.push_back("  " + b + ": " + mc.constraints[k].str());
    cons.push_back({{"basis", b}, {"constraint", mc.constraints[k].str()}});
  }
  s.data["empty"] = mc.is_empty();
  s.data["parameters"] = names_of(e.parameters);
  s.data["eliminated"] = elim_j;
  s.data["eps_tilde"] = et;
  s.data["d_L"] = mc.differential.str(labels);
  s.data["schouten"] = mc.schouten.str(labels);
  s.data["constraints"] = cons;
}

void gauge_section(Context& ctx, ReportSection& s) {
  s = {"gauge", "gauge basis", {}, json::object()};
  const IsotropicSubbundle& l = ctx.algebroid();
  auto basis = gauge_image(l);
  s.lines.push_back("dimension: " + std::to_string(basis.size()));
  json items = json::array();
  for (const auto& g : basis) {
    s.lines.push_back("  " + g.str(l.dual_labels()));
    items.push_back(g.str(l.dual_labels()));
  }
  s.data["dimension"] = basis.size();
  s.data["basis"] = items;
}

void family_section(Context& ctx, ReportSection& s) {
  s = {"family", "reduced family", {}, json::object()};
  const IsotropicSubbundle& l = ctx.algebroid();
  const DeformationFamily& fam = ctx.reduced();
  const auto& labels = l.dual_labels();
  std::vector<std::string> solved;
  json solved_j = json::object();
  for (const auto& [sym, v] : fam.solved) {
    solved.push_back(sym.name() + " = " + v.str());
    solved_j[sym.name()] = v.str();
  }
  s.data["consistent"] = fam.consistent;
  s.data["solved"] = solved_j;
  if (!fam.consistent) {
    s.lines.push_back("MC solution: empty solution set");
    throw MathFailure("the MC system has an empty solution set");
  }
  s.lines.push_back("MC solution: " + (solved.empty() ? std::string("all parameters free") : join(solved, ", ")));
  json residual = json::array();
  for (const auto& r : fam.residual) residual.push_back(r.str());
  s.data["residual"] = residual;
  if (!fam.residual.empty()) {
    s.lines.push_back("unsolved nonlinear constraints:");
    for (const auto& r : fam.residual) s.lines.push_back("  " + r.str() + " = 0");
    return;
  }
  json drops = json::array();
  for (const auto& d : fam.drops) {
    s.lines.push_back("gauge direction " + d.direction.str(labels) + ": drop " + d.dropped.name() +
                      " (aligned: " + join(names_of(d.candidates), " ") + ")");
    drops.push_back({{"direction", d.direction.str(labels)},
                     {"dropped", d.dropped.name()},
                     {"candidates", names_of(d.candidates)}});
  }
  s.data["gauge_drops"] = drops;
  s.lines.push_back("free parameters (" + std::to_string(fam.free.size()) + "): " + join(names_of(fam.free), " "));
  s.data["free"] = names_of(fam.free);
  s.lines.push_back("reduced basis:");
  json basis = json::object();
  for (std::size_t k = 0; k < fam.free.size(); ++k) {
    s.lines.push_back("  " + fam.free[k].name() + ": " + fam.reduced_basis[k].str(labels));
    basis[fam.free[k].name()] = fam.reduced_basis[k].str(labels);
  }
  s.data["reduced_basis"] = basis;
  std::string general = fam.general.tilde_form(l).str(labels);
  s.lines.push_back("general element: eps~ = " + general);
  s.data["general_element"] = general;

  auto checks = check_points(l, fam.general, random_bindings(fam.free, kFamilyChecks, kFamilySeed));
  std::size_t good = 0;
  for (const auto& c : checks) good += c.ok() ? 1 : 0;
  s.lines.push_back("random points with zero MC residual and (1 + eps)L isotropic, involutive, separated: " +
                    std::to_string(good) + " of " + std::to_string(checks.size()));
  s.data["point_checks"] = {{"passed", good}, {"total", checks.size()}};
  if (good != checks.size()) throw MathFailure("family point checks failed");
}

void type_section(Context& ctx, const SymbolBindings& at, ReportSection& s) {
  const IsotropicSubbundle& l = ctx.algebroid();
  s = {"type", "type at " + render_bindings(at), {}, json::object()};
  const DeformationFamily& fam = ctx.reduced();
  if (!fam.complete()) throw MathFailure("the family is not reduced; no type at a point");
  std::set<Symbol> free(fam.free.begin(), fam.free.end());
  for (const auto& [sym, v] : at) {
    if (!free.count(sym)) {
      throw InputFailure("'" + sym.name() + "' is not a parameter of the reduced family (" +
                         join(names_of(fam.free), " ") + ")");
    }
  }
  for (const auto& f : fam.free) {
    if (!at.count(f)) throw InputFailure("parameter '" + f.name() + "' is not bound");
  }
  s.data["at"] = bindings_json(at);
  IsotropicSubbundle le = deform_subbundle(l, fam.general, at);
  s.data["separated"] = le.separated();
  if (!le.separated()) {
    s.lines.push_back("not a generalized complex structure at these parameter values");
    throw MathFailure("(1 + eps)L meets its conjugate");
  }
  TypeInfo t = type_of(l, fam.general, at);
  s.lines.push_back("k = " + std::to_string(t.k) + " (" + t.label + ")");
  s.data["k"] = t.k;
  s.data["label"] = t.label;
}

void stratum_lines(const TypeStratum& t, const std::string& indent, std::vector<std::string>& lines, json& out) {
  std::string verdict = t.k ? "k = " + std::to_string(*t.k) + " (" + t.label + ")" : "unresolved";
  lines.push_back(indent + t.conditions() + ": " + verdict);
  if (!t.sample.empty()) lines.push_back(indent + "  sample: " + render_bindings(t.sample));
  json j = {{"conditions", t.conditions()}, {"label", t.label}};
  j["k"] = t.k ? json(*t.k) : json(nullptr);
  j["sample"] = bindings_json(t.sample);
  json subs = json::array();
  for (const auto& u : t.substrata) stratum_lines(u, indent + "  ", lines, subs);
  j["substrata"] = subs;
  out.push_back(j);
}

void strata_section(Context& ctx, ReportSection& s) {
  s = {"strata", "type strata", {}, json::object()};
  const IsotropicSubbundle& l = ctx.algebroid();
  const DeformationFamily& fam = ctx.reduced();
  if (!fam.complete()) throw MathFailure("the family is not reduced; no type strata");
  Stratification st = stratify_type(l, fam.general);
  s.data["generic_k"] = st.generic_k;
  s.data["refused"] = st.refused;
  if (st.refused) {
    s.lines.push_back("stratification refused: " + std::to_string(fam.free.size()) + " parameters (limit " +
                      std::to_string(kMaxStratifyParameters) + ")");
    s.lines.push_back("generic k = " + std::to_string(st.generic_k));
    return;
  }
  json strata = json::array();
  for (const auto& t : st.strata) stratum_lines(t, "", s.lines, strata);
  s.data["strata"] = strata;
  auto mismatches = check_strata(l, fam.general, st);
  s.data["sample_mismatches"] = mismatches;
  if (mismatches.empty()) {
    s.lines.push_back("type at every sample point agrees with its stratum");
  } else {
    for (const auto& m : mismatches) s.lines.push_back("sample mismatch: " + m);
    throw MathFailure("stratum sample points disagree with type_of");
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& verb) {
  static const std::vector<std::pair<std::string, Command>> verbs = {
      {"validate", Command::validate}, {"brackets", Command::brackets}, {"mc", Command::mc},
      {"gauge", Command::gauge},       {"family", Command::family},     {"type", Command::type},
      {"strata", Command::strata},     {"report", Command::report}};
  for (const auto& [name, c] : verbs) {
    if (name == verb) return c;
  }
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::validate: return "validate";
    case Command::brackets: return "brackets";
    case Command::mc: return "mc";
    case Command::gauge: return "gauge";
    case Command::family: return "family";
    case Command::type: return "type";
    case Command::strata: return "strata";
    case Command::report: return "report";
  }
  return "report";
}

SymbolBindings parse_bindings(const std::string& text) {
  SymbolBindings out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("binding '" + item + "' has no '='");
    std::string name = item.substr(0, eq);
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    if (name.empty()) throw std::invalid_argument("binding '" + item + "' has no name");
    auto sym = Symbol::parameter(name);
    if (out.count(sym)) throw std::invalid_argument("parameter '" + name + "' bound twice");
    out.emplace(sym, parse_coefficient(item.substr(eq + 1)));
  }
  if (out.empty()) throw std::invalid_argument("no bindings given");
  return out;
}

Report run_pipeline(const WorkspaceSpec& spec, const PipelineRequest& request) {
  Report report;
  report.command = request.command;
  auto add = [&report](auto&& build) { build(report.sections.emplace_back()); };
  auto fail = [&report](int code, const char* what) {
    if (!report.sections.empty() && report.sections.back().lines.empty()) report.sections.pop_back();
    report.exit_code = code;
    report.diagnostics.emplace_back(what);
  };
  try {
    Context ctx(spec);
    const Command c = request.command;
    auto wants = [c](Command k) { return c == k || c == Command::report; };
    if (wants(Command::validate) || !ctx.jacobi.empty()) {
      add([&](ReportSection& s) { validation_section(ctx, s); });
      if (!ctx.jacobi.empty()) throw MathFailure("the bracket violates the Jacobi identity");
      if (ctx.l && !ctx.l->failures().empty()) {
        throw MathFailure("L is not a generalized complex structure: " + join(ctx.l->failures(), "; "));
      }
    }
    if (c == Command::report && ctx.ef) add([&](ReportSection& s) { eigenframe_section(ctx, s); });
    if (wants(Command::brackets)) {
      ctx.build_structure();
      add([&](ReportSection& s) { bracket_section(ctx, s); });
    }
    if (wants(Command::mc)) add([&](ReportSection& s) { mc_section(ctx, s); });
    if (wants(Command::gauge)) add([&](ReportSection& s) { gauge_section(ctx, s); });
    if (wants(Command::family)) add([&](ReportSection& s) { family_section(ctx, s); });
    if (c == Command::type) add([&](ReportSection& s) { type_section(ctx, request.at, s); });
    if (wants(Command::strata)) add([&](ReportSection& s) { strata_section(ctx, s); });
  } catch (const InputFailure& e) {
    fail(1, e.what());
  } catch (const std::invalid_argument& e) {
    fail(1, e.what());
  } catch (const MathFailure& e) {
    fail(2, e.what());
  } catch (const std::logic_error& e) {
    fail(2, e.what());
  }
  return report;
}

std::string render_text(const Report& r) {
  std::string out;
  for (const auto& s : r.sections) {
    if (!out.empty()) out += "\n";
    out += s.title + "\n";
    for (const auto& line : s.lines) out += "  " + line + "\n";
  }
  return out;
}

std::string render_machine(const Report& r) {
  json j;
  j["command"] = command_name(r.command);
  j["exit_code"] = r.exit_code;
  json sections = json::object();
  for (const auto& s : r.sections) sections[s.key] = s.data;
  j["sections"] = sections;
  j["diagnostics"] = r.diagnostics;
  return j.dump(2) + "\n";
}

}  // namespace gcdeform
