#pragma once

#include "rainbowcc/gf.hpp"
#include "rainbowcc/rational.hpp"
#include "rainbowcc/universe.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rainbowcc {

/// kMAware sends m MDS-combined packets; kPerColor sends one XOR per color
/// class (P = identity, m = |Φ|).
enum class DeliveryMode { kMAware, kPerColor };

std::string_view to_string(DeliveryMode mode);
DeliveryMode delivery_mode_from_string(std::string_view name);

struct SchemeOptions {
    Field field = Field::kGF2;
    DeliveryMode delivery = DeliveryMode::kMAware;
};

struct UserPacket {
    std::size_t user = 0;
    std::size_t packet = 0;

    friend auto operator<=>(const UserPacket&, const UserPacket&) = default;
};

struct SchemeParams {
    std::size_t K = 0;
    std::size_t F = 0;
    std::size_t uncached = 0;  // Z: uncached packets per user
    Rational cache_fraction;   // M/N = 1 - Z/F
    std::size_t num_colors = 0;
    std::size_t m = 0;
    Rational rate;        // m/F
    Rational color_rate;  // |Φ|/F
};

/// A coded caching scheme in the rainbow framework: uncolored pairs are
/// cached, each color class is XORed into one coded packet, and the coded
/// packets are mixed by an m×|Φ| MDS matrix.
struct CachingScheme {
    std::string kind = "custom";
    Universe universe;
    Coloring coloring;                                // φ on Ĉ
    std::vector<int> pair_color;                      // Φ, K×F row-major, -1 = uncolored
    std::vector<std::vector<std::size_t>> placement;  // user -> cached packets
    std::vector<std::vector<UserPacket>> classes;     // color -> pairs
    std::vector<std::size_t> m_table;                 // K×F, 0 for uncolored pairs
    std::size_t max_local_m = 0;
    std::size_t m = 0;
    Matrix P;
    SchemeOptions options;
    SchemeParams params;

    std::size_t num_users() const { return universe.num_users(); }
    std::size_t num_packets() const { return universe.num_packets(); }
    std::optional<int> color_at(std::size_t user, std::size_t packet) const;
    bool caches(std::size_t user, std::size_t packet) const { return !color_at(user, packet); }
};

/// Φ(a, b) := φ(a ⊎ b). Rejects colorings that fail the σ check.
CachingScheme build_scheme(const Universe& universe, const Coloring& coloring, const Sigma& sigma,
                           SchemeOptions options = {});

/// Φ(a, b) := φ(a ⊎ b) without a σ check. Decodability is still enforced by
/// the per-class check.
CachingScheme build_scheme_lifted(const Universe& universe, const Coloring& coloring,
                                  SchemeOptions options = {});

/// Builds from an explicit pair coloring Φ (K×F, -1 = uncolored). Φ must be
/// defined exactly on the pairs whose combined element is colored by φ.
CachingScheme build_scheme_from_pairs(const Universe& universe, const Coloring& coloring,
                                      std::vector<int> pair_color, SchemeOptions options = {});

struct MTable {
    std::vector<std::size_t> per_pair;  // K×F
    std::size_t max_local = 0;
    std::size_t m = 0;
};

/// m(a,b) = #{Φ(a',b') : a' = a or a ⊎ b' ∈ Ĉ} and the delivery count m.
MTable compute_m_table(std::size_t num_users, std::size_t num_packets,
                       std::span<const int> pair_color, std::size_t num_colors,
                       SchemeOptions options);

/// Class check: within every class users and packets are distinct and
/// every cross pair (a_i, b_j), i != j, is uncolored. Returns a message for
/// the first violation.
std::optional<std::string> find_class_violation(const CachingScheme& scheme);

// --- delivery ---------------------------------------------------------------

using DemandVector = std::vector<std::size_t>;

struct Library {
    std::size_t N = 0;
    std::size_t F = 0;
    std::size_t packet_size = 0;
    std::vector<Packet> packets;  // N×F row-major

    const Packet& at(std::size_t file, std::size_t packet) const { return packets[file * F + packet]; }
};

struct Term {
    UserPacket pair;
    std::uint8_t coef = 1;
};

/// Symbolic content of every broadcast row: the demanded subfile
/// W_{d_user}^{(packet)} of each pair with its coefficient.
std::vector<std::vector<Term>> transmission_terms(const CachingScheme& scheme);

std::vector<Packet> deliver(const CachingScheme& scheme, const DemandVector& demands,
                            const Library& library);

struct CacheContents {
    std::size_t user = 0;
    std::map<std::size_t, std::vector<Packet>> subfiles;  // packet -> one entry per file
};

CacheContents place_cache(const CachingScheme& scheme, std::size_t user, const Library& library);

/// All F packets of file d_user, reconstructed from the cache and broadcast.
std::vector<Packet> decode(const CachingScheme& scheme, std::size_t user, const DemandVector& demands,
                           const CacheContents& cache, std::span<const Packet> broadcast);

// --- PDA interop ------------------------------------------------------------

/// F×K array over {*} ∪ integers.
struct Pda {
    std::size_t F = 0;
    std::size_t K = 0;
    std::vector<std::optional<std::int64_t>> cells;  // row-major; nullopt = "*"

    const std::optional<std::int64_t>& at(std::size_t f, std::size_t k) const { return cells[f * K + k]; }
};

Pda parse_pda(std::string_view text);
std::string format_pda(const Pda& pda);

struct PdaCheck {
    bool ok = true;
    std::string axiom;
    std::vector<std::pair<std::size_t, std::size_t>> cells;  // (row, column), 0-based
    std::string message;
};

PdaCheck check_pda(const Pda& pda);

/// A = columns, B = rows, CARTESIAN_PAIR, Ĉ = non-* cells. Throws PDA_INVALID.
CachingScheme pda_to_scheme(const Pda& pda, SchemeOptions options = {});
Pda scheme_to_pda(const CachingScheme& scheme);

// --- catalog ----------------------------------------------------------------

struct ColoredUniverse {
    Universe universe;
    Coloring coloring;
};

/// A = [K], B = t-subsets, Ĉ = (t+1)-subsets, all colors distinct.
CachingScheme scheme_man(std::size_t K, std::size_t t, SchemeOptions options = {});

/// A = a-subsets of [n], B = b-subsets, Ĉ = (a+b)-subsets, all colors distinct.
CachingScheme scheme_union_subsets(std::size_t n, std::size_t a, std::size_t b,
                                   SchemeOptions options = {});

/// Linear block code construction for n = k + 1 over a prime field GF(q).
CachingScheme scheme_linear_block(const std::vector<std::vector<int>>& generator, int q,
                                  SchemeOptions options = {});

/// A = [n], B = the n cyclic windows of n-2 consecutive labels, Ĉ = the
/// (n-1)-subsets, all colors distinct. n = 4 gives B = {12, 23, 34, 41}.
ColoredUniverse cyclic_universe(std::size_t n);
CachingScheme scheme_cyclic(std::size_t n, SchemeOptions options = {});

/// max over s in [1, min(N, K)] of s - s/floor(N/s)·M, floored at zero.
Rational cutset_bound(std::size_t K, std::size_t N, const Rational& M);

/// K(1 - M/N)/(1 + KM/N).
Rational man_rate(std::size_t K, const Rational& cache_fraction);

}  // namespace rainbowcc
