#pragma once

#include "rainbowcc/gf.hpp"
#include "rainbowcc/rational.hpp"
#include "rainbowcc/schemes.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace rainbowcc {

/// Map-phase state: node a stores file b whenever the pair (a, b) is
/// uncolored, and reduces the functions in reduce_map[a].
struct MapReduceInstance {
    std::size_t K = 0;
    std::size_t N = 0;
    std::size_t Q = 0;
    std::size_t value_size = 0;  // T, bytes per intermediate value
    std::uint64_t seed = 0;
    std::vector<std::vector<std::size_t>> assignment;  // node -> files
    std::vector<std::vector<std::size_t>> reduce_map;  // node -> functions
    std::vector<Packet> ivs;                           // Q×N row-major

    const Packet& iv(std::size_t q, std::size_t file) const { return ivs[q * N + file]; }
    bool holds(std::size_t node, std::size_t file) const;
    /// r = Σ|assignment| / N.
    Rational computation_load() const;
};

/// Requires K | Q. Functions go round-robin: node a reduces a, a+K, a+2K, ...
MapReduceInstance build_instance(const CachingScheme& scheme, std::size_t Q, std::size_t value_size = 16,
                                 std::uint64_t seed = 0);

/// One summand of a message: segment `segment` of `segments` equal slices of
/// v_{q,file}, scaled by coef. Whole values use a single segment.
struct IvTerm {
    std::size_t q = 0;
    std::size_t file = 0;
    std::size_t segment = 0;
    std::size_t segments = 1;
    std::uint8_t coef = 1;

    friend auto operator<=>(const IvTerm&, const IvTerm&) = default;
};

struct ShuffleMessage {
    std::size_t sender = 0;
    std::vector<IvTerm> terms;
    Rational size;  // in units of one intermediate value
    Packet payload;
    std::string description;
};

enum class ShuffleMode { kRainbow, kMulticast };

std::string_view to_string(ShuffleMode mode);

struct ShufflePlan {
    ShuffleMode mode = ShuffleMode::kRainbow;
    std::vector<ShuffleMessage> messages;
    std::size_t m_prime = 0;       // message count
    Rational load;                 // L = Σ sizes / (Q·N)
    Rational computation_load;     // r
    Rational multicast_load;       // load of the multicast-group plan
    std::size_t padding_bytes = 0; // zero bytes added to split values evenly
};

/// Decomposes every row of P·V into pieces that a single node can compute and
/// sends each distinct piece once. Falls back to the multicast-group plan when
/// that sends less.
ShufflePlan synthesize_shuffle(const MapReduceInstance& instance, const CachingScheme& scheme);

/// The multicast-group plan: in each class of g pairs every member sends the
/// XOR of its slice of the other g-1 members' values.
ShufflePlan multicast_shuffle(const MapReduceInstance& instance, const CachingScheme& scheme);

struct NodeReport {
    std::size_t node = 0;
    std::size_t needed = 0;
    std::size_t recovered = 0;
    bool pass = true;
};

struct ReduceReport {
    bool pass = true;
    std::vector<NodeReport> nodes;
};

/// Every node solves for its missing values from the received messages and
/// its own storage; passes when all of them equal the ground truth.
ReduceReport run_reduce(const MapReduceInstance& instance, const ShufflePlan& plan);

/// L* = (1/r)(1 - r/K), for 0 < r <= K.
Rational cdc_bound(const Rational& r, std::size_t K);

/// Σ_c g_c/(g_c - 1) per function layer, normalized by Q·N (g = 1 counts 1).
Rational multicast_baseline_load(const CachingScheme& scheme, std::size_t Q);

}  // namespace rainbowcc
