#pragma once

#include "rainbowcc/rational.hpp"
#include "rainbowcc/schemes.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rainbowcc {

enum class DemandPolicy { kExhaustive, kRandom, kWorstCaseDistinct };

std::string_view to_string(DemandPolicy policy);
DemandPolicy demand_policy_from_string(std::string_view name);

inline constexpr std::size_t kExhaustiveLimit = 1'000'000;

struct SweepOptions {
    DemandPolicy policy = DemandPolicy::kWorstCaseDistinct;
    std::size_t random_count = 100;
    std::uint64_t seed = 0;
    std::size_t packet_size = 64;
};

/// N files of F packets; bytes are a keyed function of (seed, file, packet).
Library synthesize_library(std::size_t N, std::size_t F, std::size_t packet_size, std::uint64_t seed);

/// The demand vectors a policy visits, in visiting order.
std::vector<DemandVector> demand_vectors(std::size_t K, std::size_t N, const SweepOptions& options);

struct DemandResult {
    DemandVector demands;
    std::size_t transmissions = 0;
    std::vector<bool> user_pass;
    bool pass = true;
};

struct RunReport {
    std::string kind;
    SchemeParams params;
    Field field = Field::kGF2;
    DeliveryMode delivery = DeliveryMode::kMAware;
    std::size_t N = 0;
    SweepOptions options;
    std::vector<DemandResult> results;
    std::size_t max_transmissions = 0;
    Rational realized_rate;  // max_d |X_d| / F
    std::size_t failures = 0;
    bool all_pass = true;
    bool rate_matches_m = true;  // realized rate == m/F
};

/// Places, delivers and decodes every demand the policy produces; every
/// decoded packet is compared bytewise with the library.
RunReport sweep(const CachingScheme& scheme, std::size_t N, const SweepOptions& options = {});

struct BoundRow {
    std::string name;
    bool applicable = true;
    Rational value;
    Rational slack;  // realized - value
};

/// Realized rate against m/F, |Φ|/F, the cut-set bound at M = N·(M/N) and the
/// closed form K(1 - M/N)/(1 + KM/N) when KM/N is an integer.
std::vector<BoundRow> compare_bounds(const RunReport& report, const CachingScheme& scheme);

}  // namespace rainbowcc
