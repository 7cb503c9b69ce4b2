// Runs every verification suite plus the corpus determinism check and prints
// one pass/fail line per criterion. Usage: acceptance [engine] [samples-dir]

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "hle/verify.hpp"

namespace {

struct Run {
  std::string output;
  int status = -1;
};

std::string quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) out += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return out + "'";
}

Run capture(const std::string& command) {
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t"), b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

// Every corpus entry twice, under different thread caps; exit codes must be
// 0 or 2 and the JSON byte-identical.
bool determinism(const std::string& engine, const std::string& samples, std::string& detail) {
  std::ifstream corpus(samples + "/corpus.txt");
  if (!corpus) {
    detail = "cannot read " + samples + "/corpus.txt";
    return false;
  }
  std::size_t entries = 0;
  for (std::string line; std::getline(corpus, line);) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos) continue;
    const std::string file = trim(line.substr(0, bar)), cmd = trim(line.substr(bar + 1));
    const std::string base = quote(engine) + " " + quote(samples + "/" + file) + " --cmd " + quote(cmd) + " --json";
    const Run a = capture("HOLIM_ENGINE_THREADS=1 " + base);
    const Run b = capture("HOLIM_ENGINE_THREADS=4 " + base);
    ++entries;
    if (a.status != 0 && a.status != 2) {
      detail = file + " '" + cmd + "' exited with " + std::to_string(a.status);
      return false;
    }
    if (a.output != b.output || a.status != b.status || a.output.empty()) {
      detail = file + " '" + cmd + "' differs between runs";
      return false;
    }
  }
  detail = std::to_string(entries) + " commands byte-identical";
  return entries > 0;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string engine = argc > 1 ? argv[1] : HLE_ENGINE_PATH;
  const std::string samples = argc > 2 ? argv[2] : HLE_SAMPLES_DIR;
  // Wall-clock budgets for the suites that have one.
  const std::vector<std::pair<std::string, double>> budgets{{"end-enumeration", 10.0}, {"pullback-oracle", 30.0}};

  hle::VerifyOptions opt;
  opt.threads = hle::default_thread_count();
  bool all = true;
  for (const auto& name : hle::suite_names()) {
    const auto start = std::chrono::steady_clock::now();
    const auto results = hle::run_verify(name, opt);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto& s = results.front();
    bool pass = s.pass();
    std::string extra;
    for (const auto& [suite, limit] : budgets) {
      if (suite != name) continue;
      pass = pass && secs < limit;
      char buf[64];
      std::snprintf(buf, sizeof buf, ", %.2fs of %.0fs", secs, limit);
      extra = buf;
    }
    std::cout << (pass ? "PASS" : "FAIL") << "  " << s.criterion << ". " << s.name << " (" << s.passed() << "/"
              << s.cases.size() << extra << ")\n";
    for (const auto& c : s.cases)
      if (!c.pass) std::cout << "        " << c.label << ": " << c.detail << "\n";
    all = all && pass;
  }
  std::string detail;
  const bool det = determinism(engine, samples, detail);
  std::cout << (det ? "PASS" : "FAIL") << "  13. determinism (" << detail << ")\n";
  all = all && det;
  return all ? 0 : 1;
}
