#include "helpers.hpp"

#include "rainbowcc/schemes.hpp"

#include <set>

using namespace rainbowcc;

namespace {

/// m(a, b) read off the definition: colors of pairs (a', b') with a' = a or
/// with (a, b') colored.
std::size_t m_by_definition(const CachingScheme& s, std::size_t a) {
    std::set<int> colors;
    for (std::size_t a2 = 0; a2 < s.num_users(); ++a2) {
        for (std::size_t b2 = 0; b2 < s.num_packets(); ++b2) {
            const auto c = s.color_at(a2, b2);
            if (!c) continue;
            if (a2 == a || s.color_at(a, b2)) colors.insert(*c);
        }
    }
    return colors.size();
}

std::set<std::set<std::string>> rows_as_class_sets(const CachingScheme& s) {
    std::set<std::set<std::string>> out;
    for (std::size_t r = 0; r < s.P.rows(); ++r) {
        std::set<std::string> row;
        for (std::size_t c = 0; c < s.P.cols(); ++c) {
            if (!s.P.at(r, c)) continue;
            const auto& p = s.classes[c].front();
            row.insert(s.universe.combined()[s.universe.pair_element(p.user, p.packet)].to_string());
        }
        out.insert(row);
    }
    return out;
}

}  // namespace

TEST_CASE("four-user cyclic scheme: parameters and broadcast rows") {
    const auto s = scheme_cyclic(4);
    CHECK(s.params.K == 4);
    CHECK(s.params.F == 4);
    CHECK(s.params.cache_fraction == Rational(1, 2));
    CHECK(s.params.num_colors == 4);
    CHECK(s.max_local_m == 3);
    CHECK(s.m == 3);
    CHECK(s.params.rate == Rational(3, 4));
    const std::set<std::set<std::string>> expected{
        {"{1,2,3}", "{2,3,4}"}, {"{1,2,4}", "{2,3,4}"}, {"{1,3,4}", "{2,3,4}"}};
    CHECK(rows_as_class_sets(s) == expected);
    CHECK(testing::exhaustive_failures(s, 4, 8) == 0);
}

TEST_CASE("m table agrees with the definition") {
    for (const auto& s : {scheme_cyclic(4), scheme_cyclic(7), scheme_man(5, 2), scheme_union_subsets(5, 1, 2),
                          scheme_linear_block({{1, 0, 1}, {0, 1, 1}}, 2)}) {
        std::size_t max_local = 0;
        for (std::size_t a = 0; a < s.num_users(); ++a) {
            for (std::size_t b = 0; b < s.num_packets(); ++b) {
                if (!s.color_at(a, b)) {
                    CHECK(s.m_table[a * s.num_packets() + b] == 0);
                    continue;
                }
                CHECK(s.m_table[a * s.num_packets() + b] == m_by_definition(s, a));
                max_local = std::max(max_local, m_by_definition(s, a));
            }
        }
        CHECK(s.max_local_m == max_local);
        CHECK(s.m == std::max(max_local, s.params.num_colors - 1));
    }
}

TEST_CASE("cyclic family keeps local m at three") {
    for (std::size_t n = 5; n <= 10; ++n) {
        const auto s = scheme_cyclic(n);
        CHECK(s.params.num_colors == n);
        CHECK(s.max_local_m == 3);
        CHECK(s.m == n - 1);
        CHECK(s.params.cache_fraction == Rational(static_cast<std::int64_t>(n - 2), static_cast<std::int64_t>(n)));
    }
    CHECK_ERROR_CODE(scheme_cyclic(3), ErrorCode::kRange);
}

TEST_CASE("MAN colors-per-packet equals the closed form") {
    for (auto [K, t] : std::vector<std::pair<std::size_t, std::size_t>>{{4, 2}, {5, 2}, {6, 3}, {5, 1}, {6, 2}}) {
        const auto s = scheme_man(K, t);
        const Rational closed(static_cast<std::int64_t>(K - t), static_cast<std::int64_t>(t + 1));
        CHECK(s.params.color_rate == closed);
        CHECK(s.params.cache_fraction == Rational(static_cast<std::int64_t>(t), static_cast<std::int64_t>(K)));
        CHECK(man_rate(K, s.params.cache_fraction) == closed);
        // Every uncached packet is blocked by every class.
        CHECK(s.max_local_m == s.params.num_colors);
    }
    CHECK_ERROR_CODE(scheme_man(4, 4), ErrorCode::kRange);
    CHECK_ERROR_CODE(scheme_man(4, 0), ErrorCode::kRange);
}

TEST_CASE("exhaustive decode across fields, deliveries and packet sizes") {
    for (std::size_t size : {1u, 64u, 1024u}) {
        for (SchemeOptions opt : {SchemeOptions{Field::kGF2, DeliveryMode::kMAware},
                                  SchemeOptions{Field::kGF2, DeliveryMode::kPerColor},
                                  SchemeOptions{Field::kGF256, DeliveryMode::kMAware}}) {
            CHECK(testing::exhaustive_failures(scheme_cyclic(4, opt), 2, size) == 0);
            CHECK(testing::exhaustive_failures(scheme_man(4, 2, opt), 2, size) == 0);
        }
    }
    CHECK(testing::exhaustive_failures(scheme_cyclic(6), 2, 16) == 0);
    CHECK(testing::exhaustive_failures(scheme_union_subsets(4, 1, 2), 2, 8) == 0);
}

TEST_CASE("GF256 m-aware delivery drops below |Φ| - 1 when local m allows") {
    const auto s = scheme_cyclic(7, {Field::kGF256, DeliveryMode::kMAware});
    CHECK(s.m == 3);
    CHECK(s.params.rate == Rational(3, 7));
    CHECK(verify_mds(s.P));
    CHECK(testing::exhaustive_failures(s, 2, 4) == 0);
}

TEST_CASE("linear block code scheme") {
    const auto s = scheme_linear_block({{1, 0, 1}, {0, 1, 1}}, 2, {Field::kGF2, DeliveryMode::kPerColor});
    CHECK(s.params.K == 6);
    CHECK(s.params.F == 4);
    CHECK(s.params.cache_fraction == Rational(1, 2));
    CHECK(s.params.rate == 1);
    CHECK(s.params.num_colors == 4);
    CHECK(testing::exhaustive_failures(s, 2, 4) == 0);
    CHECK_ERROR_CODE(scheme_linear_block({{1, 0, 1}, {0, 1, 1}}, 4), ErrorCode::kRange);
    CHECK_ERROR_CODE(scheme_linear_block({{1, 0, 1, 1}, {0, 1, 1, 0}}, 2), ErrorCode::kUnsupportedN);
    CHECK_ERROR_CODE(scheme_linear_block({{1, 0, 0}, {0, 1, 0}}, 2), ErrorCode::kRankPropertyFail);
    CHECK_ERROR_CODE(scheme_linear_block({{1, 0, 2}, {0, 1, 1}}, 2), ErrorCode::kRange);
    const auto ternary = scheme_linear_block({{1, 0, 1}, {0, 1, 1}}, 3);
    CHECK(ternary.params.K == 9);
    CHECK(ternary.params.F == 9);
    CHECK(testing::exhaustive_failures(ternary, 2, 2) == 0);
}

TEST_CASE("colorings that break the structure are rejected") {
    auto cu = testing::cyclic4();
    std::map<std::size_t, std::int64_t> raw;
    for (auto idx : cu.coloring.domain()) raw.emplace(idx, 0);
    CHECK_ERROR_CODE(build_scheme(cu.universe, Coloring(raw), Sigma::subset_rainbow(1)), ErrorCode::kRainbowViolation);
    // Without the σ check the class check still catches it.
    CHECK_ERROR_CODE(build_scheme_lifted(cu.universe, Coloring(raw)), ErrorCode::kRainbowViolation);
}

TEST_CASE("non-uniform placement is rejected") {
    // User 1 misses {1,2} ∪ {3}; user 2 caches both packets.
    auto u = build_universe({Element::integer(1), Element::integer(2)}, {Element::set_of({2}), Element::set_of({3})},
                            CombineOp::kSetUnion);
    std::map<std::size_t, std::int64_t> raw{{*u.find(Element::set_of({1, 2})), 0}, {*u.find(Element::set_of({1, 3})), 1}};
    CHECK_ERROR_CODE(build_scheme_lifted(u, Coloring(raw)), ErrorCode::kNonuniformCache);
}

TEST_CASE("decode errors") {
    const auto s = scheme_cyclic(4);
    const auto lib = testing::random_library(2, 4, 8, 1);
    const DemandVector d{0, 1, 0, 1};
    const auto x = deliver(s, d, lib);
    const auto cache = place_cache(s, 0, lib);
    const std::vector<Packet> short_x(x.begin(), x.begin() + 2);
    CHECK_ERROR_CODE(decode(s, 0, d, cache, short_x), ErrorCode::kUndecodable);
    CHECK(transmission_terms(s).size() == 3);
}

TEST_CASE("cut-set bound") {
    CHECK(cutset_bound(4, 4, Rational(2)) == Rational(1, 2));
    CHECK(cutset_bound(4, 4, Rational(4)) == 0);
    CHECK(cutset_bound(4, 4, Rational(0)) == 4);
    CHECK(cutset_bound(6, 6, Rational(4)) == Rational(1, 3));
}
