#pragma once

// Batch front end: `chroma <command> [flags] [--config file.json]`.
//
// Every command emits one JSON report (stdout, or --out). Wall-clock figures
// and cache status live under the "timing" key, so reports for a fixed
// config and seed are otherwise byte-identical.
//
// A config file is a JSON object holding "command" (e.g. "kneser chi-bound")
// and any of the command's long flag names without dashes. Unknown fields are
// rejected. Flags given on the command line take precedence.

#include <chrono>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace chroma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFinding = 2;

/// Runs one invocation; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "90", "90s", "1500ms", "2m" or "1h". Throws ParseError otherwise.
std::chrono::milliseconds parse_duration(std::string_view text);

/// Cache directory from CHROMA_CACHE_DIR, empty when unset.
std::string cache_dir();

}  // namespace chroma::cli
