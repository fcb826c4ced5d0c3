#pragma once

#include <array>
#include <cstdint>

namespace qcaps {

// GF(4) = {0, 1, w, w^2} encoded as {0, 1, 2, 3} over the basis {1, w},
// where w^2 + w + 1 = 0.  Addition is bitwise XOR of the 2-bit encodings.
// GF(2) = {0, 1} is the prime subfield, so the same tables serve both.
using Gf = std::uint8_t;

inline constexpr std::array<std::array<Gf, 4>, 4> kGfMul = {{
    {0, 0, 0, 0},
    {0, 1, 2, 3},
    {0, 2, 3, 1},
    {0, 3, 1, 2},
}};

constexpr Gf gf_add(Gf a, Gf b) { return static_cast<Gf>(a ^ b); }
constexpr Gf gf_mul(Gf a, Gf b) { return kGfMul[a][b]; }

// Frobenius square x -> x^2: fixes 0 and 1, swaps w and w^2.
constexpr Gf gf_conj(Gf a) { return kGfMul[a][a]; }

// Multiplicative inverse of a nonzero element (derived from kGfMul).
constexpr Gf gf_inv(Gf a) { return a < 2 ? a : static_cast<Gf>(5 - a); }

}  // namespace qcaps
