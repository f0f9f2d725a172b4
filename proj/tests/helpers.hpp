#pragma once

#include "rainbowcc/error.hpp"
#include "rainbowcc/rainbow3ap.hpp"
#include "rainbowcc/schemes.hpp"

#include <doctest.h>

#include <random>

#define CHECK_ERROR_CODE(expr, ec)                                \
    do {                                                          \
        bool thrown_ = false;                                     \
        try {                                                     \
            (void)(expr);                                         \
        } catch (const rainbowcc::Error& e_) {                    \
            thrown_ = true;                                       \
            CHECK_MESSAGE(e_.code() == (ec), e_.what());          \
        }                                                         \
        CHECK_MESSAGE(thrown_, "expected " #ec " from " #expr);   \
    } while (0)

namespace testing {

inline rainbowcc::ColoredUniverse cyclic4() {
    return rainbowcc::cyclic_universe(4);
}

inline rainbowcc::RainbowAPSet ap_m4() {
    rainbowcc::ApSearch s;
    s.strategy = rainbowcc::ApStrategy::kExplicit;
    s.explicit_chi = {{2, 0}, {8, 0}, {3, 1}, {7, 1}, {4, 2}, {6, 2}};
    return rainbowcc::build_rainbow_ap(4, s);
}

inline rainbowcc::Library random_library(std::size_t N, std::size_t F, std::size_t size, unsigned seed) {
    std::mt19937 gen(seed);
    rainbowcc::Library lib{N, F, size, {}};
    for (std::size_t i = 0; i < N * F; ++i) {
        rainbowcc::Packet p(size);
        for (auto& b : p) b = static_cast<std::uint8_t>(gen());
        lib.packets.push_back(std::move(p));
    }
    return lib;
}

/// Delivers and decodes every demand vector in [N]^K; returns the number of
/// (demand, user) failures.
inline std::size_t exhaustive_failures(const rainbowcc::CachingScheme& scheme, std::size_t N, std::size_t size,
                                       unsigned seed = 7) {
    const std::size_t K = scheme.num_users();
    const std::size_t F = scheme.num_packets();
    const auto lib = random_library(N, F, size, seed);
    std::vector<rainbowcc::CacheContents> caches;
    for (std::size_t k = 0; k < K; ++k) caches.push_back(rainbowcc::place_cache(scheme, k, lib));
    std::size_t failures = 0;
    rainbowcc::DemandVector d(K, 0);
    while (true) {
        const auto x = rainbowcc::deliver(scheme, d, lib);
        for (std::size_t k = 0; k < K; ++k) {
            const auto got = rainbowcc::decode(scheme, k, d, caches[k], x);
            bool ok = got.size() == F;
            for (std::size_t f = 0; ok && f < F; ++f) ok = got[f] == lib.at(d[k], f);
            failures += !ok;
        }
        std::size_t i = 0;
        while (i < K && ++d[i] == N) d[i++] = 0;
        if (i == K) break;
    }
    return failures;
}

}  // namespace testing
