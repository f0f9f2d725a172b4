#include "helpers.hpp"

#include "rainbowcc/simulator.hpp"

using namespace rainbowcc;

TEST_CASE("demand policies") {
    SweepOptions ex;
    ex.policy = DemandPolicy::kExhaustive;
    const auto all = demand_vectors(3, 2, ex);
    CHECK(all.size() == 8);
    CHECK(all.front() == DemandVector{0, 0, 0});
    CHECK(all.back() == DemandVector{1, 1, 1});
    CHECK_ERROR_CODE(demand_vectors(7, 8, ex), ErrorCode::kSweepTooLarge);
    CHECK_NOTHROW(demand_vectors(6, 10, ex));

    SweepOptions rnd;
    rnd.policy = DemandPolicy::kRandom;
    rnd.random_count = 20;
    rnd.seed = 9;
    CHECK(demand_vectors(4, 3, rnd) == demand_vectors(4, 3, rnd));
    CHECK(demand_vectors(4, 3, rnd).size() == 20);

    SweepOptions dist;
    CHECK(demand_vectors(4, 6, dist) == std::vector<DemandVector>{{0, 1, 2, 3}});
    CHECK(demand_vectors(4, 2, dist) == std::vector<DemandVector>{{0, 1, 0, 1}});
    CHECK(demand_policy_from_string("exhaustive") == DemandPolicy::kExhaustive);
    CHECK_ERROR_CODE(demand_policy_from_string("all"), ErrorCode::kParse);
}

TEST_CASE("library synthesis is reproducible") {
    const auto a = synthesize_library(3, 4, 33, 5);
    const auto b = synthesize_library(3, 4, 33, 5);
    const auto c = synthesize_library(3, 4, 33, 6);
    CHECK(a.packets == b.packets);
    CHECK(a.packets != c.packets);
    CHECK(a.at(2, 3).size() == 33);
    CHECK(a.at(0, 0) != a.at(0, 1));
}

TEST_CASE("four-user cyclic scheme over every demand") {
    SweepOptions opt;
    opt.policy = DemandPolicy::kExhaustive;
    const auto s = scheme_cyclic(4);
    const auto report = sweep(s, 4, opt);
    CHECK(report.results.size() == 256);
    CHECK(report.all_pass);
    CHECK(report.realized_rate == Rational(3, 4));
    CHECK(report.rate_matches_m);
    const auto rows = compare_bounds(report, s);
    REQUIRE(rows.size() == 5);
    CHECK(rows[3].name == "cut-set");
    CHECK(rows[3].value == Rational(1, 2));
    CHECK(rows[3].slack >= 0);
    CHECK(rows[4].applicable);
    CHECK(rows[4].value == Rational(2, 3));
}

TEST_CASE("K=F=4 rainbow scheme over every demand with two files") {
    SweepOptions opt;
    opt.policy = DemandPolicy::kExhaustive;
    const auto report = sweep(build_rainbow_scheme(testing::ap_m4()), 2, opt);
    CHECK(report.results.size() == 16);
    CHECK(report.all_pass);
    CHECK(report.max_transmissions == 6);
}

TEST_CASE("MAN rates under both deliveries") {
    SweepOptions opt;
    opt.policy = DemandPolicy::kExhaustive;
    for (SchemeOptions o : {SchemeOptions{Field::kGF2, DeliveryMode::kPerColor},
                            SchemeOptions{Field::kGF2, DeliveryMode::kMAware}}) {
        const auto s = scheme_man(4, 2, o);
        const auto report = sweep(s, 4, opt);
        CHECK(report.all_pass);
        // Every class blocks every user, so m stays at |Φ|.
        CHECK(report.realized_rate == Rational(2, 3));
        const auto rows = compare_bounds(report, s);
        CHECK(rows[4].slack == 0);
    }
}

TEST_CASE("single user and full cache") {
    const auto u = build_universe({Element::integer(1)}, {Element::set_of({1}), Element::set_of({2})},
                                  CombineOp::kSetUnion);
    const auto s = build_scheme_lifted(u, Coloring{});
    const auto report = sweep(s, 3, SweepOptions{DemandPolicy::kExhaustive});
    CHECK(report.all_pass);
    CHECK(report.realized_rate == 0);
    for (const auto& row : compare_bounds(report, s)) {
        if (row.applicable) CHECK(row.value == 0);
    }
}

TEST_CASE("corrupted delivery shows up as failures") {
    // Swap in a scheme whose P no longer matches the class layout.
    auto s = scheme_cyclic(4);
    s.P = Matrix::from_rows(Field::kGF2, {{1, 0, 0, 1}, {0, 1, 0, 1}, {1, 1, 0, 0}});
    const auto report = sweep(s, 2, SweepOptions{DemandPolicy::kExhaustive});
    CHECK_FALSE(report.all_pass);
    CHECK(report.failures > 0);
}

TEST_CASE("random sweeps are reproducible") {
    SweepOptions opt;
    opt.policy = DemandPolicy::kRandom;
    opt.random_count = 10;
    opt.seed = 77;
    const auto s = scheme_man(5, 2);
    const auto a = sweep(s, 5, opt);
    const auto b = sweep(s, 5, opt);
    REQUIRE(a.results.size() == b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) CHECK(a.results[i].demands == b.results[i].demands);
    CHECK(a.all_pass);
}
