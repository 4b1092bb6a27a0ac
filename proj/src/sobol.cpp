#include "aim/sobol.hpp"

#include <array>

namespace aim {

namespace {
constexpr int kBits = 32;

struct Directions {
    std::array<std::uint32_t, kBits> dim1;
    std::array<std::uint32_t, kBits> dim2;
};

// Dimension 1 is the van der Corput sequence; dimension 2 uses the primitive
// polynomial x + 1 (initial direction integer m1 = 1, recurrence
// m_k = 2 m_{k-1} xor m_{k-1}, i.e. m = 1, 3, 5, 15, 17, 51, ...).
Directions build_directions() {
    Directions d{};
    std::array<std::uint64_t, kBits> m{};
    m[0] = 1;
    for (int k = 1; k < kBits; ++k) m[k] = (2 * m[k - 1]) ^ m[k - 1];
    for (int j = 0; j < kBits; ++j) {
        d.dim1[j] = static_cast<std::uint32_t>(1ULL << (kBits - 1 - j));
        d.dim2[j] = static_cast<std::uint32_t>(m[j] << (kBits - 1 - j));
    }
    return d;
}

const Directions& directions() {
    static const Directions d = build_directions();
    return d;
}
}  // namespace

std::pair<double, double> sobol_pair(std::uint64_t index) {
    const Directions& d = directions();
    const std::uint64_t n = index + 1;  // skip the all-zeros point
    const std::uint64_t gray = n ^ (n >> 1);
    std::uint32_t x1 = 0, x2 = 0;
    for (int j = 0; j < kBits; ++j) {
        if (gray & (1ULL << j)) {
            x1 ^= d.dim1[j];
            x2 ^= d.dim2[j];
        }
    }
    constexpr double scale = 1.0 / 4294967296.0;  // 2^-32
    return {x1 * scale, x2 * scale};
}

}  // namespace aim
