#pragma once

// Commands over a workspace, rendered as text and as deterministic JSON.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "hle/dsl.hpp"

namespace hle {

struct CommandOptions {
  std::uint64_t seed = 0;
  std::optional<int> depth;  // fattot and verify; 3 when unset
  unsigned threads = 1;
};

struct Report {
  nlohmann::ordered_json json;
  std::string text;
  /// 0 when the command succeeded and any verdict is pass, 2 for a failing verdict.
  int exit_code = 0;
};

/// Runs one command line such as "holim D W". Throws the engine's errors
/// (SyntaxError for a malformed command, UnknownBinding, TypeMismatch, ...).
Report run_command(const Workspace& ws, const std::string& command, const CommandOptions& opt = {});

/// JSON and text for an error raised while loading or running; exit code 1.
Report error_report(const std::string& kind, const std::string& message);

/// The JSON form of a Report, indented by two spaces, with a trailing newline.
std::string render_json(const Report& r);

}  // namespace hle
