#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cyclica/json_io.hpp"

namespace cyclica::app {

enum class Backend { exact, float_ };
enum class Format { json, text };

struct RunConfig {
  /// closure, orbit, cyclic-vector, cyclic-subspace, decompose, hautus,
  /// reach, design or "mrb analyze".
  std::string command;
  io::Json input;
  std::uint64_t seed = 0;
  std::size_t trials = 64;
  Tolerance tol{};
  Backend backend = Backend::exact;
  /// hautus and cyclic-subspace target dimension.
  std::optional<std::size_t> r;
};

enum ExitCode : int { kDefinite = 0, kInputError = 1, kInconclusive = 2 };

struct Outcome {
  int exit_code = kDefinite;
  io::Json report;
};

const std::vector<std::string>& commands();

/// Never throws for bad input: errors become an exit code and an "error" field.
Outcome run(const RunConfig& cfg);

/// The config block embedded in every report.
io::Json config_json(const RunConfig& cfg);
/// Rebuilds a config from a report produced by run().
RunConfig config_from_report(const io::Json& report);

std::string render(const io::Json& report, Format format);

struct CorpusCase {
  std::string name;
  bool passed = false;
  std::string message;
};

/// Runs every <name>.input.json under `dir` and compares the report with
/// <name>.expected.json byte for byte. With `update`, rewrites the expectations.
std::vector<CorpusCase> run_corpus(const std::filesystem::path& dir, bool update = false);

}  // namespace cyclica::app
