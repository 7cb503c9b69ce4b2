#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hle/commands.hpp"
#include "hle/errors.hpp"
#include "hle/verify.hpp"

namespace {

int emit(const hle::Report& r, bool json) {
  if (json) {
    std::cout << hle::render_json(r);
  } else if (r.exit_code == 1) {
    std::cerr << r.text;
  } else {
    std::cout << r.text;
  }
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homotopy limits, ends and Kan extensions over finite models"};
  std::string path, command;
  bool json = false;
  std::uint64_t seed = 0;
  std::optional<int> depth;
  app.add_option("file", path, "Workspace file (.hle)")->required();
  app.add_option("--cmd", command, "Command to run, e.g. \"holim D\"")->required();
  app.add_flag("--json", json, "Emit a JSON report");
  app.add_option("--seed", seed, "Seed for verification suites");
  app.add_option("--depth", depth, "Truncation depth for fattot and verify")->check(CLI::NonNegativeNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) return emit(hle::error_report("IOError", "cannot read '" + path + "'"), json);
  std::ostringstream text;
  text << in.rdbuf();

  try {
    const hle::Workspace ws = hle::parse_workspace(text.str());
    hle::CommandOptions opt;
    opt.seed = seed;
    opt.depth = depth;
    opt.threads = hle::default_thread_count();
    return emit(hle::run_command(ws, command, opt), json);
  } catch (const hle::Error& e) {
    return emit(hle::error_report(e.kind(), e.what()), json);
  } catch (const std::exception& e) {
    return emit(hle::error_report("InternalError", e.what()), json);
  }
}
