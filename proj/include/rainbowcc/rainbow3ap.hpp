#pragma once

#include "rainbowcc/schemes.hpp"
#include "rainbowcc/universe.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace rainbowcc {

/// A ⊆ [2, 2m] with a coloring χ under which no 3-AP repeats a color at its
/// endpoints when the midpoint is in A. `strict_rainbow` additionally records
/// whether every 3-AP in A uses three distinct colors.
struct RainbowAPSet {
    std::size_t m = 0;
    std::vector<std::int64_t> members;  // sorted
    std::map<std::int64_t, int> chi;    // dense color ids
    std::size_t num_colors = 0;
    double alpha_emp = 0.0;  // log(|[2m] \ A| + 1) / log(2m)
    double beta_emp = 0.0;   // log(colors) / log(2m)
    bool strict_rainbow = false;

    std::size_t n() const { return 2 * m; }
    bool contains(std::int64_t x) const { return chi.count(x) != 0; }
};

enum class ApStrategy { kGreedy, kExact, kExplicit };

std::string_view to_string(ApStrategy strategy);
ApStrategy ap_strategy_from_string(std::string_view name);

struct ApSearch {
    ApStrategy strategy = ApStrategy::kGreedy;
    std::optional<std::size_t> budget;  // maximum number of colors
    std::vector<std::int64_t> deletions;  // sums removed from A up front
    std::map<std::int64_t, std::int64_t> explicit_chi;  // kExplicit only
};

/// Sums s and s+m (s in [2, m]) and the single sum m+1. Deleting whole blocks
/// keeps every user's cached packet count equal.
std::vector<std::vector<std::int64_t>> uniform_deletion_blocks(std::size_t m);

/// Number of 3-APs (x, x+d, x+2d) inside `members`, by brute force.
std::size_t count_three_aps(const std::vector<std::int64_t>& members);

/// The INTEGER_SUM universe A = B = [m], whose combined set is [2, 2m].
Universe sum_universe(std::size_t m);

RainbowAPSet build_rainbow_ap(std::size_t m, const ApSearch& search);

/// Ψ(x, y) = (x - y, χ(x + y)) on [m]², uncolored when x + y ∉ A.
struct PsiLabel {
    std::int64_t difference = 0;
    int chi = 0;

    friend auto operator<=>(const PsiLabel&, const PsiLabel&) = default;
};

struct PsiColoring {
    std::size_t m = 0;
    std::vector<std::optional<PsiLabel>> grid;  // m×m row-major, (x-1, y-1)
    std::map<PsiLabel, int> ids;                // dense ids in label order

    const std::optional<PsiLabel>& at(std::size_t x, std::size_t y) const { return grid[(x - 1) * m + (y - 1)]; }
    std::size_t num_colors() const { return ids.size(); }
};

PsiColoring build_psi(const RainbowAPSet& raps);

/// Users and packets are [m] under INTEGER_SUM; pair (x, y) takes color
/// Ψ(x, y). Defaults to one transmission per Ψ class.
CachingScheme build_rainbow_scheme(const RainbowAPSet& raps,
                                   SchemeOptions options = {Field::kGF2, DeliveryMode::kPerColor});

}  // namespace rainbowcc
