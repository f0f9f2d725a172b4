#include "rainbowcc/rainbow3ap.hpp"

#include "rainbowcc/error.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rainbowcc {

std::string_view to_string(ApStrategy strategy) {
    switch (strategy) {
    case ApStrategy::kGreedy: return "greedy";
    case ApStrategy::kExact: return "exact";
    case ApStrategy::kExplicit: return "explicit";
    }
    return "greedy";
}

ApStrategy ap_strategy_from_string(std::string_view name) {
    if (name == "greedy") return ApStrategy::kGreedy;
    if (name == "exact") return ApStrategy::kExact;
    if (name == "explicit") return ApStrategy::kExplicit;
    throw Error(ErrorCode::kParse, "unknown strategy '" + std::string(name) + "'");
}

std::vector<std::vector<std::int64_t>> uniform_deletion_blocks(std::size_t m) {
    const auto mm = static_cast<std::int64_t>(m);
    std::vector<std::vector<std::int64_t>> blocks;
    for (std::int64_t s = 2; s <= mm; ++s) blocks.push_back({s, s + mm});
    blocks.push_back({mm + 1});
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

std::size_t count_three_aps(const std::vector<std::int64_t>& members) {
    const std::set<std::int64_t> in(members.begin(), members.end());
    std::size_t count = 0;
    for (auto x : in) {
        for (auto y : in) {
            if (y <= x) continue;
            if (in.count(2 * y - x)) ++count;
        }
    }
    return count;
}

Universe sum_universe(std::size_t m) {
    if (m < 1) throw Error(ErrorCode::kRange, "m must be at least 1");
    std::vector<Element> side;
    for (std::size_t i = 1; i <= m; ++i) side.push_back(Element::integer(static_cast<std::int64_t>(i)));
    return build_universe(side, side, CombineOp::kIntegerSum);
}

namespace {

std::vector<std::size_t> indices_for(const Universe& u, const std::vector<std::int64_t>& members) {
    std::vector<std::size_t> out;
    out.reserve(members.size());
    for (auto s : members) out.push_back(*u.find(Element::integer(s)));
    return out;
}

/// How many 3-APs inside `members` touch at least one element of `block`.
std::size_t participation(const std::vector<std::int64_t>& members, const std::vector<std::int64_t>& block) {
    const std::set<std::int64_t> in(members.begin(), members.end());
    const std::set<std::int64_t> hit(block.begin(), block.end());
    std::size_t count = 0;
    for (auto x : in) {
        for (auto y : in) {
            if (y <= x) continue;
            const auto z = 2 * y - x;
            if (!in.count(z)) continue;
            if (hit.count(x) || hit.count(y) || hit.count(z)) ++count;
        }
    }
    return count;
}

Coloring color_greedy(const Universe& u, const std::vector<std::int64_t>& members) {
    if (members.empty()) return Coloring{};
    const auto domain = indices_for(u, members);
    return greedy_color(u, domain, Sigma::three_ap());
}

}  // namespace

RainbowAPSet build_rainbow_ap(std::size_t m, const ApSearch& search) {
    const auto universe = sum_universe(m);
    const auto top = static_cast<std::int64_t>(2 * m);
    for (auto d : search.deletions) {
        if (d < 1 || d > top) throw Error(ErrorCode::kRange, "deletion " + std::to_string(d) + " outside [1, 2m]");
    }
    const std::set<std::int64_t> deleted(search.deletions.begin(), search.deletions.end());

    std::vector<std::int64_t> members;
    Coloring coloring;

    switch (search.strategy) {
    case ApStrategy::kExplicit: {
        std::map<std::size_t, std::int64_t> raw;
        for (const auto& [x, c] : search.explicit_chi) {
            if (x < 1 || x > top) throw Error(ErrorCode::kRange, "colored value " + std::to_string(x) + " outside [1, 2m]");
            // 1 is not a sum of two elements of [m].
            if (x == 1 || deleted.count(x)) continue;
            raw.emplace(*universe.find(Element::integer(x)), c);
            members.push_back(x);
        }
        coloring = Coloring(raw);
        const auto report = validate_rainbow(universe, coloring, Sigma::three_ap_endpoints());
        if (!report.pass) {
            const auto& c = universe.combined();
            throw Error(ErrorCode::kRainbowViolation,
                        "3-AP endpoints " + c[report.violation[0]].to_string() + " and " +
                            c[report.violation[1]].to_string() + " share a color");
        }
        break;
    }
    case ApStrategy::kGreedy: {
        for (std::int64_t s = 2; s <= top; ++s) {
            if (!deleted.count(s)) members.push_back(s);
        }
        coloring = color_greedy(universe, members);
        const auto blocks = uniform_deletion_blocks(m);
        while (search.budget && coloring.num_colors() > *search.budget) {
            std::size_t best = blocks.size();
            std::size_t best_score = 0;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                const bool present = std::any_of(blocks[i].begin(), blocks[i].end(), [&](std::int64_t s) {
                    return std::binary_search(members.begin(), members.end(), s);
                });
                if (!present) continue;
                const auto score = participation(members, blocks[i]);
                if (best == blocks.size() || score > best_score) {
                    best = i;
                    best_score = score;
                }
            }
            if (best == blocks.size()) break;
            std::erase_if(members, [&](std::int64_t s) {
                return std::find(blocks[best].begin(), blocks[best].end(), s) != blocks[best].end();
            });
            coloring = color_greedy(universe, members);
        }
        break;
    }
    case ApStrategy::kExact: {
        if (2 * m > kExactDomainLimit) {
            throw Error(ErrorCode::kDomainTooLarge, "exact search needs 2m <= " + std::to_string(kExactDomainLimit));
        }
        for (std::int64_t s = 2; s <= top; ++s) {
            if (!deleted.count(s)) members.push_back(s);
        }
        const auto domain = indices_for(universe, members);
        const auto cap = search.budget.value_or(domain.size());
        auto best = exact_min_colors(universe, domain, Sigma::three_ap(), cap);
        if (!best) {
            throw Error(ErrorCode::kBudgetInfeasible,
                        "no rainbow 3-AP coloring of A with at most " + std::to_string(cap) + " colors");
        }
        coloring = std::move(best->coloring);
        break;
    }
    }

    RainbowAPSet raps;
    raps.m = m;
    for (const auto& [idx, c] : coloring.colors()) raps.chi.emplace(universe.combined()[idx].as_integer(), c);
    for (const auto& [x, c] : raps.chi) raps.members.push_back(x);
    raps.num_colors = coloring.num_colors();
    const double log_n = std::log(static_cast<double>(2 * m));
    const auto missing = static_cast<double>(2 * m - raps.members.size());
    raps.alpha_emp = log_n > 0 ? std::log(missing + 1.0) / log_n : 0.0;
    raps.beta_emp = raps.num_colors > 1 && log_n > 0 ? std::log(static_cast<double>(raps.num_colors)) / log_n : 0.0;
    raps.strict_rainbow = validate_rainbow(universe, coloring, Sigma::three_ap()).pass;
    return raps;
}

PsiColoring build_psi(const RainbowAPSet& raps) {
    PsiColoring psi;
    psi.m = raps.m;
    psi.grid.resize(raps.m * raps.m);
    std::set<PsiLabel> labels;
    for (std::size_t x = 1; x <= raps.m; ++x) {
        for (std::size_t y = 1; y <= raps.m; ++y) {
            const auto sum = static_cast<std::int64_t>(x + y);
            auto it = raps.chi.find(sum);
            if (it == raps.chi.end()) continue;
            PsiLabel label{static_cast<std::int64_t>(x) - static_cast<std::int64_t>(y), it->second};
            psi.grid[(x - 1) * raps.m + (y - 1)] = label;
            labels.insert(label);
        }
    }
    int next = 0;
    for (const auto& l : labels) psi.ids.emplace(l, next++);
    return psi;
}

CachingScheme build_rainbow_scheme(const RainbowAPSet& raps, SchemeOptions options) {
    const auto universe = sum_universe(raps.m);
    const auto psi = build_psi(raps);
    const std::size_t m = raps.m;

    if (psi.num_colors() > 2 * m * raps.num_colors) {
        throw Error(ErrorCode::kClaimViolation, "Ψ uses more than 2m·|χ| colors");
    }

    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> classes(psi.num_colors());
    std::vector<int> pair_color(m * m, -1);
    for (std::size_t x = 1; x <= m; ++x) {
        for (std::size_t y = 1; y <= m; ++y) {
            if (const auto& label = psi.at(x, y)) {
                const int id = psi.ids.at(*label);
                pair_color[(x - 1) * m + (y - 1)] = id;
                classes[static_cast<std::size_t>(id)].emplace_back(x, y);
            }
        }
    }

    // Within a class, x_s + y_t lands in A only on the diagonal.
    for (const auto& cls : classes) {
        for (std::size_t s = 0; s < cls.size(); ++s) {
            for (std::size_t t = 0; t < cls.size(); ++t) {
                if (s == t) continue;
                const auto sum = static_cast<std::int64_t>(cls[s].first + cls[t].second);
                if (raps.contains(sum)) {
                    throw Error(ErrorCode::kClaimViolation,
                                "x=" + std::to_string(cls[s].first) + " and y=" + std::to_string(cls[t].second) +
                                    " from one Ψ class sum to " + std::to_string(sum) + " in A");
                }
            }
        }
    }

    std::size_t uncached = 0;
    for (std::size_t x = 1; x <= m; ++x) {
        std::size_t count = 0;
        for (std::size_t y = 1; y <= m; ++y) count += raps.contains(static_cast<std::int64_t>(x + y));
        if (x == 1) {
            uncached = count;
        } else if (count != uncached) {
            throw Error(ErrorCode::kNonuniformCache, "user " + std::to_string(x) + " misses " +
                                                         std::to_string(count) + " packets, user 1 misses " +
                                                         std::to_string(uncached));
        }
    }

    std::map<std::size_t, std::int64_t> raw;
    for (const auto& [x, c] : raps.chi) raw.emplace(*universe.find(Element::integer(x)), c);
    auto scheme = build_scheme_from_pairs(universe, Coloring(raw), std::move(pair_color), options);
    scheme.kind = "rainbow-3ap";
    return scheme;
}

}  // namespace rainbowcc
