#pragma once

// Runs workspace commands and collects deterministic report sections.
// Exit codes: 0 success, 1 input error, 2 mathematical failure.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gcdeform/scalar.hpp"
#include "gcdeform/workspace.hpp"

namespace gcdeform {

enum class Command { validate, brackets, mc, gauge, family, type, strata, report };

std::optional<Command> parse_command(const std::string& verb);
std::string command_name(Command c);

/// "t14=0,t32=1" -> bindings.  Throws std::invalid_argument when malformed.
SymbolBindings parse_bindings(const std::string& text);

struct ReportSection {
  std::string key;    // machine key: validation, eigenframe, brackets, mc, gauge, family, type, strata
  std::string title;  // text heading
  std::vector<std::string> lines;
  nlohmann::ordered_json data;
};

struct Report {
  Command command = Command::report;
  std::vector<ReportSection> sections;
  std::vector<std::string> diagnostics;
  int exit_code = 0;
};

struct PipelineRequest {
  Command command = Command::report;
  SymbolBindings at;  // for Command::type
};

Report run_pipeline(const WorkspaceSpec& spec, const PipelineRequest& request);

std::string render_text(const Report& r);
std::string render_machine(const Report& r);

}  // namespace gcdeform
