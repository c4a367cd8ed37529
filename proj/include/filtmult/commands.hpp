#pragma once

// Command layer shared by the CLI and the Python module. Each command takes
// the parsed input document and returns a JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "filtmult/json_io.hpp"

namespace filtmult {

enum class OutputFormat { kJson, kTable, kCsv };

struct RunConfig {
  std::string command;
  std::string input_path;
  std::optional<std::vector<std::int64_t>> schedule;
  std::int64_t m_max = 20;
  std::int64_t n_max = 50;
  std::int64_t r_max = 4;
  std::int64_t q_cap = 1000;
  OutputFormat format = OutputFormat::kTable;
  int digits = 12;

  /// Throws kSchema on non-positive caps or a schedule that is not strictly increasing.
  void validate() const;
};

/// "25,50,100" -> {25, 50, 100}.
std::vector<std::int64_t> parse_schedule(const std::string& text);
OutputFormat parse_format(const std::string& text);

const std::vector<std::string>& command_names();

/// Input is ignored by example-c7. Throws Error.
Json run_command(const RunConfig& config, const Json& input);

/// Renders a report; example-c7 has its own table layout.
std::string render(const std::string& command, const Json& report, OutputFormat format, int digits);

}  // namespace filtmult
