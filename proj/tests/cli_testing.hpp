#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pes_testing.hpp"
#include "pesgame/cli.hpp"
#include "pesgame/report.hpp"

namespace testing {

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

/// Runs the command line in-process. Arguments naming a fixture ("PAR.pes")
/// are resolved against the fixture directory.
inline CliRun run_cli(std::vector<std::string> args, const std::string& input = "") {
  for (auto& a : args) {
    if (a.size() > 4 && a.compare(a.size() - 4, 4, ".pes") == 0 && a.find('/') == std::string::npos) {
      a = fixture_path(a);
    }
  }
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = pesgame::run_cli(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  // Keep goldens independent of where the checkout lives.
  const std::string dir = std::string(PESGAME_FIXTURES) + "/";
  for (std::string* s : {&r.out, &r.err}) {
    for (std::size_t pos; (pos = s->find(dir)) != std::string::npos;) s->erase(pos, dir.size());
  }
  return r;
}

/// Compares text with a golden file; PESGAME_UPDATE_GOLDEN=1 rewrites it.
inline bool matches_golden(const std::string& name, const std::string& text) {
  const std::string path = golden_path(name);
  if (const char* update = std::getenv("PESGAME_UPDATE_GOLDEN"); update != nullptr && std::string(update) == "1") {
    std::ofstream(path, std::ios::binary) << text;
    return true;
  }
  std::ifstream probe(path);
  return probe.good() && read_file(path) == text;
}

}  // namespace testing
