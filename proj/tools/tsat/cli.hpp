#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsat/engine.hpp"

namespace tsat::cli {

enum ExitCode : int {
    kSat = 0,
    kUnsat = 1,
    kInconclusive = 2,
    kNodeLimit = 3,
    kUsage = 64,
};

struct OracleBounds {
    std::size_t length = 4;
    std::size_t prefix = 2;
    std::size_t period = 4;
};

struct RunOptions {
    std::string formula;
    std::optional<std::string> file;
    DecisionMode mode = DecisionMode::Both;
    bool model = false;
    bool show_internal = false;
    bool dump_invariant = false;
    bool dump_config = false;
    bool dump_bdd = false;
    bool h_literal = false;
    std::optional<std::uint64_t> max_iters;
    std::optional<OracleBounds> oracle;
    bool stats = false;
    bool json = false;
    std::size_t node_limit = 0;
};

// Runs one invocation.  args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tsat::cli
