#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace perceprice::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

struct Environment {
    std::optional<std::string> corpus_path;  // PERCEPRICE_CORPUS
};

Environment environment_from_process();

/// Runs one command. `args` excludes the program name. Payload goes to
/// `out` (or the --out file), diagnostics to `err`. Never throws.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const Environment& env = {});

}  // namespace perceprice::cli
