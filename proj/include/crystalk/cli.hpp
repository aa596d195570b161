#pragma once

#include "crystalk/report.hpp"

#include <iosfwd>
#include <optional>
#include <string>

namespace crystalk {

enum class Command { report, verify, oracle };
enum class Format { text, json };

// Exactly one of k and matrix_file selects the group.
struct CliConfig {
  Command command = Command::report;
  std::optional<long> p;
  std::optional<long> k;
  std::optional<std::string> matrix_file;
  std::optional<DegreeWindow> degree_window;
  Format format = Format::text;
  bool parallel = false;
  std::optional<std::string> output;  // stdout when absent
};

namespace exit_code {
constexpr int ok = 0;
constexpr int check_failed = 1;
constexpr int validation = 2;
constexpr int io = 3;
constexpr int internal = 4;
}  // namespace exit_code

// Each writes the product to out (or cfg.output) and diagnostics to err.
int run_report(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err);
int run_oracle(const CliConfig& cfg, std::ostream& out, std::ostream& err);

// Parses argv and dispatches; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "lo:hi" with lo <= hi, or a single degree.
std::optional<DegreeWindow> parse_degree_window(const std::string& text);

}  // namespace crystalk
