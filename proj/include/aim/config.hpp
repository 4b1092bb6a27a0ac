#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aim/sim.hpp"

namespace aim {

// Raised for unreadable files, malformed lines, unknown keys, and semantic
// violations; the message lists every problem found.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigOverrides {
    std::optional<std::int64_t> horizon;
    std::optional<int> runs;
    std::optional<std::uint64_t> seed;
    std::optional<std::vector<std::string>> policies;
};

ExperimentConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

// Same grammar, from an in-memory buffer.
ExperimentConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides = {});

}  // namespace aim
