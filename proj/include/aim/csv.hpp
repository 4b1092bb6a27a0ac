#pragma once

#include <string>

#include "aim/sim.hpp"

namespace aim {

// Renders the table as `policy,t,mean_regret,stderr,runs` rows, reals with 9
// significant digits, sorted by (policy, t). Byte-stable for a fixed build.
std::string render_csv(const AggregatedTable& table);

// Writes render_csv output to path; I/O errors carry the path in the message.
void emit_csv(const AggregatedTable& table, const std::string& path);

}  // namespace aim
