#pragma once

// Subprocess helper for driving the installed CLI binary from tests. The
// build system injects GRPD_CLI_PATH and GRPD_DATA_DIR as compile
// definitions.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace grpd::testing {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved

  bool contains(const std::string& needle) const {
    return output.find(needle) != std::string::npos;
  }
};

inline std::string cli_path() { return GRPD_CLI_PATH; }
inline std::string data_file(const std::string& name) {
  return std::string(GRPD_DATA_DIR) + "/" + name;
}

/// Run `grpd <args>` and capture the combined output and exit code.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
  CliResult res;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), got);
  int status = pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace grpd::testing
