#pragma once

#include <cstdint>
#include <utility>

namespace aim {

// Point index+1 of the two-dimensional Sobol sequence (Gray-code order,
// classic direction numbers), skipping the all-zeros point. Coordinates are
// dyadic rationals strictly inside (0,1).
std::pair<double, double> sobol_pair(std::uint64_t index);

}  // namespace aim
