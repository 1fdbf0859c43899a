#pragma once

// Command dispatch for the tropmech executable. Everything here is pure:
// input text in, output text and an exit code out, so tests can drive it
// without touching the filesystem or the environment.

#include <cstdint>
#include <optional>
#include <string>

namespace tropmech::cli {

enum ExitCode : int {
  kOk = 0,
  kUnexpected = 1,
  kMalformed = 2,
  kSemantic = 3,
  kBudget = 4,
  kCrossCheck = 5,
};

enum class Format { Default, Json, Svg };

struct Options {
  std::string command;
  std::string input;  // request JSON text
  std::uint64_t budget = 0;
  std::optional<std::string> epsilon;
  Format format = Format::Default;
};

struct Result {
  int exit_code = kOk;
  std::string out;  // JSON or SVG document, may be empty on failure
  std::string err;  // one-line diagnostic, empty on success
};

/// Flag value if present, else a parsable TROPMECH_BUDGET value, else the
/// library default. Throws UsageError on an unparsable value.
std::uint64_t resolve_budget(const std::optional<std::string>& flag, const char* env);

bool is_command(const std::string& name);

Result run(const Options& options);

}  // namespace tropmech::cli
