#pragma once

#include "report.hpp"

namespace wc {

/// A validated run: the command, the expanded case list (cartesian product of
/// the configured q / zeta / k / h lists), and command-specific knobs.
struct RunConfig {
    std::string command;
    std::vector<TheoremConfig> cases;
    std::vector<int> sweep_m{512, 1024, 2048, 4096};
    std::vector<double> sweep_tail{1e-6, 1e-9, 1e-12};
    int unfold_grid_m = 1 << 18;
    int assumption_grid_m = 1 << 22;
    int threads = 0;  // 0 = ask the hardware
};

/// Parse + validate a config document. Validation failures list every
/// violated bound in one message (errc::validation); malformed JSON types
/// surface as errc::io.
RunConfig parse_run_config(const json& doc);

struct RunOutput {
    json report;      // {"schema_version","command","all_passed","cases",...,"meta"}
    std::string csv;  // header + one row per case
    bool all_passed = false;
};

/// Execute the command over all cases (case-level parallelism, deterministic
/// report order and content; wall-clock readings quarantined in `meta`).
RunOutput run_commands(const RunConfig& config);

}  // namespace wc
