#pragma once

#include "rainbowcc/gf.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace rainbowcc {

/// Deterministic pseudo-random bytes keyed by (seed, tag, i, j).
inline Packet synth_bytes(std::uint64_t seed, std::uint32_t tag, std::size_t i, std::size_t j, std::size_t size) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), tag,
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
    std::mt19937_64 gen(seq);
    Packet out(size);
    for (std::size_t k = 0; k < size; k += 8) {
        auto word = gen();
        for (std::size_t b = k; b < size && b < k + 8; ++b) {
            out[b] = static_cast<std::uint8_t>(word & 0xFF);
            word >>= 8;
        }
    }
    return out;
}

}  // namespace rainbowcc
