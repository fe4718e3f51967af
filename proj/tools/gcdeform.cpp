#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gcdeform/pipeline.hpp"
#include "gcdeform/workspace.hpp"

namespace {

int input_error(const std::string& message) {
  std::cerr << "gcdeform: " << message << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact deformations of generalized complex structures on Lie algebra frames"};
  std::string preset;
  std::string input;
  std::string format = "text";
  std::string verb = "report";
  std::string at;
  auto* preset_opt = app.add_option("--preset", preset, "Built-in workspace")->check(CLI::IsMember({"kodaira"}));
  app.add_option("--input", input, "Workspace file")->excludes(preset_opt);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--at", at, "Parameter bindings for type, e.g. t14=0,t32=1,t11=0,t22=0");
  app.add_option("command", verb, "validate | brackets | mc | gauge | family | type | strata | report");
  app.add_flag_function(
      "--print-workspace",
      [&](std::int64_t) { verb = "print-workspace"; },
      "Print the canonical workspace text and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 1;
  }

  gcdeform::WorkspaceSpec spec;
  try {
    if (!input.empty()) {
      std::ifstream in(input);
      if (!in) return input_error("cannot read '" + input + "'");
      std::stringstream text;
      text << in.rdbuf();
      spec = gcdeform::parse_workspace(text.str());
    } else if (preset == "kodaira") {
      spec = gcdeform::kodaira_workspace();
    } else {
      return input_error("no workspace given; use --preset kodaira or --input <file>");
    }
  } catch (const gcdeform::ParseError& e) {
    return input_error((input.empty() ? std::string("preset") : input) + ": " + e.what());
  }

  if (verb == "print-workspace") {
    std::cout << gcdeform::render_workspace(spec);
    return 0;
  }

  auto command = gcdeform::parse_command(verb);
  if (!command) return input_error("unknown command '" + verb + "'");
  gcdeform::PipelineRequest request{*command, {}};
  if (*command == gcdeform::Command::type) {
    if (at.empty()) return input_error("type requires --at <bindings>");
    try {
      request.at = gcdeform::parse_bindings(at);
    } catch (const std::invalid_argument& e) {
      return input_error(std::string("--at: ") + e.what());
    }
  } else if (!at.empty()) {
    return input_error("--at is only valid with the type command");
  }

  gcdeform::Report report = gcdeform::run_pipeline(spec, request);
  std::cout << (format == "machine" ? gcdeform::render_machine(report) : gcdeform::render_text(report));
  for (const auto& d : report.diagnostics) std::cerr << "gcdeform: " << d << "\n";
  return report.exit_code;
}
