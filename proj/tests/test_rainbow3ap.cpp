#include "helpers.hpp"
#include "oracles.hpp"

#include "rainbowcc/rainbow3ap.hpp"

#include <random>
#include <set>

using namespace rainbowcc;

TEST_CASE("six-sum set and its Ψ grid") {
    const auto raps = testing::ap_m4();
    CHECK(raps.members == std::vector<std::int64_t>{2, 3, 4, 6, 7, 8});
    CHECK(raps.num_colors == 3);
    CHECK_FALSE(raps.strict_rainbow);

    const auto psi = build_psi(raps);
    CHECK(psi.num_colors() == 6);
    // (difference, letter) per cell; letters a, b, c are chi ids 0, 1, 2.
    using Cell = std::optional<std::pair<int, int>>;
    const std::vector<std::vector<Cell>> expected{
        {{{0, 0}}, {{-1, 1}}, {{-2, 2}}, std::nullopt},
        {{{1, 1}}, {{0, 2}}, std::nullopt, {{-2, 2}}},
        {{{2, 2}}, std::nullopt, {{0, 2}}, {{-1, 1}}},
        {std::nullopt, {{2, 2}}, {{1, 1}}, {{0, 0}}},
    };
    for (std::size_t x = 1; x <= 4; ++x) {
        for (std::size_t y = 1; y <= 4; ++y) {
            const auto& got = psi.at(x, y);
            const auto& want = expected[x - 1][y - 1];
            REQUIRE(got.has_value() == want.has_value());
            if (got) {
                CHECK(got->difference == want->first);
                CHECK(got->chi == want->second);
            }
        }
    }
}

TEST_CASE("K=F=4 rainbow scheme") {
    const auto s = build_rainbow_scheme(testing::ap_m4());
    CHECK(s.kind == "rainbow-3ap");
    CHECK(s.params.K == 4);
    CHECK(s.params.F == 4);
    CHECK(s.params.cache_fraction == Rational(1, 4));
    CHECK(s.params.num_colors == 6);
    CHECK(s.params.rate == Rational(3, 2));
    CHECK(testing::exhaustive_failures(s, 2, 16) == 0);
    CHECK_FALSE(find_class_violation(s).has_value());
}

TEST_CASE("uniform deletion blocks keep cache sizes equal") {
    for (std::size_t m = 1; m <= 9; ++m) {
        const auto blocks = uniform_deletion_blocks(m);
        std::set<std::int64_t> covered;
        for (const auto& b : blocks) covered.insert(b.begin(), b.end());
        CHECK(covered.size() == 2 * m - 1);
        for (const auto& b : blocks) {
            // Count, per user x, how many of x+1..x+m fall in the block.
            std::set<std::size_t> counts;
            for (std::int64_t x = 1; x <= static_cast<std::int64_t>(m); ++x) {
                std::size_t c = 0;
                for (auto s : b) c += s >= x + 1 && s <= x + static_cast<std::int64_t>(m);
                counts.insert(c);
            }
            CHECK(counts.size() == 1);
        }
    }
}

TEST_CASE("greedy search is valid and never below the exact minimum") {
    for (std::size_t m : {4u, 6u, 8u}) {
        const auto greedy = build_rainbow_ap(m, ApSearch{});
        CHECK(greedy.strict_rainbow);
        ApSearch exact;
        exact.strategy = ApStrategy::kExact;
        const auto best = build_rainbow_ap(m, exact);
        CHECK(best.strict_rainbow);
        CHECK(best.num_colors <= greedy.num_colors);
        if (best.members.size() <= 8) CHECK(best.num_colors == oracle::brute_force_3ap_colors(best.members));
    }
}

TEST_CASE("budgets") {
    ApSearch g;
    g.budget = 3;
    const auto raps = build_rainbow_ap(8, g);
    CHECK(raps.num_colors <= 3);
    CHECK(raps.strict_rainbow);
    // Deletions remove whole blocks.
    for (const auto& block : uniform_deletion_blocks(8)) {
        std::size_t kept = 0;
        for (auto x : block) kept += raps.contains(x);
        CHECK((kept == 0 || kept == block.size()));
    }
    CHECK_NOTHROW(build_rainbow_scheme(raps));

    ApSearch e;
    e.strategy = ApStrategy::kExact;
    e.budget = 2;
    CHECK_ERROR_CODE(build_rainbow_ap(4, e), ErrorCode::kBudgetInfeasible);
    e.budget = std::nullopt;
    CHECK_ERROR_CODE(build_rainbow_ap(13, e), ErrorCode::kDomainTooLarge);
}

TEST_CASE("per-user uncached count equals the number of colored sums in reach") {
    for (std::size_t m : {3u, 5u, 7u}) {
        ApSearch g;
        g.budget = 3;
        const auto raps = build_rainbow_ap(m, g);
        const auto s = build_rainbow_scheme(raps);
        for (std::size_t x = 1; x <= m; ++x) {
            std::size_t uncached = 0;
            for (std::size_t y = 1; y <= m; ++y) uncached += raps.contains(static_cast<std::int64_t>(x + y));
            CHECK(uncached == s.params.uncached);
        }
    }
}

TEST_CASE("tiny and empty sets") {
    const auto one = build_rainbow_ap(1, ApSearch{});
    CHECK(one.members == std::vector<std::int64_t>{2});
    CHECK(one.num_colors == 1);
    const auto psi = build_psi(one);
    CHECK(psi.at(1, 1).has_value());

    ApSearch none;
    none.strategy = ApStrategy::kExplicit;
    const auto empty = build_rainbow_ap(4, none);
    const auto s = build_rainbow_scheme(empty);
    CHECK(s.params.rate == 0);
    CHECK(s.params.cache_fraction == 1);
    CHECK(testing::exhaustive_failures(s, 2, 4) == 0);
}

TEST_CASE("explicit colorings are checked") {
    ApSearch bad;
    bad.strategy = ApStrategy::kExplicit;
    bad.explicit_chi = {{2, 0}, {3, 1}, {4, 0}, {6, 0}};
    CHECK_ERROR_CODE(build_rainbow_ap(4, bad), ErrorCode::kRainbowViolation);
    bad.explicit_chi = {{20, 0}};
    CHECK_ERROR_CODE(build_rainbow_ap(4, bad), ErrorCode::kRange);

    ApSearch lopsided;
    lopsided.strategy = ApStrategy::kExplicit;
    lopsided.explicit_chi = {{2, 0}, {3, 1}, {4, 2}, {5, 3}, {6, 4}, {7, 5}};
    CHECK_ERROR_CODE(build_rainbow_scheme(build_rainbow_ap(4, lopsided)), ErrorCode::kNonuniformCache);
}

TEST_CASE("Ψ classes share a difference and satisfy x_s + y_t ∈ A iff s = t") {
    for (std::size_t m : {6u, 8u, 10u}) {
        ApSearch g;
        g.budget = 4;
        const auto raps = build_rainbow_ap(m, g);
        const auto psi = build_psi(raps);
        CHECK(psi.num_colors() <= 2 * m * raps.num_colors);
        std::map<int, std::vector<std::pair<std::int64_t, std::int64_t>>> classes;
        for (std::size_t x = 1; x <= m; ++x) {
            for (std::size_t y = 1; y <= m; ++y) {
                if (const auto& l = psi.at(x, y)) {
                    classes[psi.ids.at(*l)].emplace_back(static_cast<std::int64_t>(x), static_cast<std::int64_t>(y));
                }
            }
        }
        for (const auto& [id, cls] : classes) {
            for (std::size_t s = 0; s < cls.size(); ++s) {
                CHECK(cls[s].first - cls[s].second == cls[0].first - cls[0].second);
                for (std::size_t t = 0; t < cls.size(); ++t) {
                    CHECK(raps.contains(cls[s].first + cls[t].second) == (s == t));
                }
            }
        }
    }
}

TEST_CASE("greedy m = 8 scheme decodes every demand over two files") {
    const auto raps = build_rainbow_ap(8, ApSearch{});
    const auto s = build_rainbow_scheme(raps);
    CHECK(testing::exhaustive_failures(s, 2, 4) == 0);
}

TEST_CASE("empirical exponents") {
    const auto raps = testing::ap_m4();
    CHECK(raps.alpha_emp == doctest::Approx(std::log(3.0) / std::log(8.0)));
    CHECK(raps.beta_emp == doctest::Approx(std::log(3.0) / std::log(8.0)));
}
