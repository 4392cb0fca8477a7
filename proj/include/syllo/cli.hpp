#pragma once

#include <iosfwd>

namespace syllo {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitPartial = 3;  // quotas not met, or a check failed
inline constexpr int kExitData = 4;     // unreadable or malformed input

// Entry point of the `syllo` tool. Subcommands: gen-kbs, enum, stats,
// build-dataset, episodes, flatten-baseline, oracle, eval.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace syllo
