#include "helpers.hpp"

#include "rainbowcc/mapreduce.hpp"

#include <set>

using namespace rainbowcc;

namespace {

/// (sender, {(function, file label)}) with 1-based function ids.
using MessageKey = std::pair<std::size_t, std::set<std::pair<std::size_t, std::string>>>;

std::set<MessageKey> message_keys(const ShufflePlan& plan, const CachingScheme& s) {
    std::set<MessageKey> out;
    for (const auto& msg : plan.messages) {
        std::set<std::pair<std::size_t, std::string>> terms;
        for (const auto& t : msg.terms) terms.emplace(t.q + 1, s.universe.packets()[t.file].to_string());
        out.emplace(msg.sender + 1, std::move(terms));
    }
    return out;
}

}  // namespace

TEST_CASE("four-node map phase") {
    const auto s = scheme_cyclic(4);
    const auto inst = build_instance(s, 4);
    CHECK(inst.assignment[0] == std::vector<std::size_t>{0, 3});  // {1,2} and {1,4}
    CHECK(inst.computation_load() == 2);
    for (std::size_t a = 0; a < 4; ++a) CHECK(inst.reduce_map[a] == std::vector<std::size_t>{a});
    CHECK_ERROR_CODE(build_instance(s, 6), ErrorCode::kDivisibility);
    CHECK_ERROR_CODE(build_instance(s, 0), ErrorCode::kDivisibility);
    CHECK_ERROR_CODE(build_instance(s, 4, 0), ErrorCode::kRange);
}

TEST_CASE("four-node shuffle sends one class XOR per node") {
    const auto s = scheme_cyclic(4);
    const auto inst = build_instance(s, 4);
    const auto plan = synthesize_shuffle(inst, s);
    CHECK(plan.mode == ShuffleMode::kRainbow);
    CHECK(plan.m_prime == 4);
    CHECK(plan.load == Rational(1, 4));
    const std::set<MessageKey> expected{
        {1, {{2, "{1,4}"}, {4, "{1,2}"}}},
        {2, {{1, "{2,3}"}, {3, "{1,2}"}}},
        {3, {{2, "{3,4}"}, {4, "{2,3}"}}},
        {4, {{1, "{3,4}"}, {3, "{1,4}"}}},
    };
    CHECK(message_keys(plan, s) == expected);
    for (const auto& msg : plan.messages) CHECK(msg.size == 1);
    CHECK(run_reduce(inst, plan).pass);
    CHECK(cdc_bound(inst.computation_load(), 4) == plan.load);
    CHECK(multicast_baseline_load(s, 4) == Rational(1, 2));
}

TEST_CASE("cyclic family sends n - 1 messages") {
    for (std::size_t n = 5; n <= 12; ++n) {
        const auto s = scheme_cyclic(n);
        const auto inst = build_instance(s, n, 8, n);
        const auto plan = synthesize_shuffle(inst, s);
        const auto nn = static_cast<std::int64_t>(n);
        CHECK(inst.computation_load() == nn - 2);
        CHECK(plan.m_prime == n - 1);
        CHECK(plan.load == Rational(nn - 1, nn * nn));
        CHECK(plan.load >= cdc_bound(inst.computation_load(), n));
        CHECK(Rational(static_cast<std::int64_t>(plan.m_prime)) < Rational(2) * nn);
        CHECK(run_reduce(inst, plan).pass);
        // Each message is one whole row held by a single node.
        for (const auto& msg : plan.messages) CHECK(msg.terms.size() == 4);
    }
}

TEST_CASE("several functions per node") {
    const auto s = scheme_cyclic(6);
    const auto inst = build_instance(s, 18);
    CHECK(inst.reduce_map[1] == std::vector<std::size_t>{1, 7, 13});
    const auto plan = synthesize_shuffle(inst, s);
    CHECK(plan.m_prime == 15);
    CHECK(plan.load == Rational(5, 36));
    CHECK(run_reduce(inst, plan).pass);
}

TEST_CASE("multicast plan splits values across the other members") {
    for (std::size_t T : {1u, 7u, 64u}) {
        const auto s = scheme_man(4, 2);
        const auto inst = build_instance(s, 4, T);
        const auto plan = multicast_shuffle(inst, s);
        CHECK(plan.mode == ShuffleMode::kMulticast);
        CHECK(plan.m_prime == 12);
        CHECK(plan.load == Rational(1, 4));
        CHECK(run_reduce(inst, plan).pass);
        if (T == 7) CHECK(plan.padding_bytes == 12);
    }
    // The MAN classes cannot be cut into fewer single-node pieces.
    const auto s = scheme_man(5, 2);
    const auto inst = build_instance(s, 5);
    const auto plan = synthesize_shuffle(inst, s);
    CHECK(plan.mode == ShuffleMode::kMulticast);
    CHECK(plan.load == cdc_bound(inst.computation_load(), 5));
    CHECK(run_reduce(inst, plan).pass);
}

TEST_CASE("every catalog instance reduces and respects the CDC bound") {
    std::vector<CachingScheme> schemes{scheme_cyclic(4),
                                       scheme_cyclic(8),
                                       scheme_man(4, 1),
                                       scheme_man(6, 3),
                                       scheme_union_subsets(5, 1, 2),
                                       scheme_linear_block({{1, 0, 1}, {0, 1, 1}}, 2),
                                       scheme_cyclic(5, {Field::kGF256, DeliveryMode::kMAware}),
                                       scheme_cyclic(5, {Field::kGF2, DeliveryMode::kPerColor}),
                                       build_rainbow_scheme(testing::ap_m4())};
    for (const auto& s : schemes) {
        const auto inst = build_instance(s, s.num_users(), 5);
        for (const auto& plan : {synthesize_shuffle(inst, s), multicast_shuffle(inst, s)}) {
            CHECK_MESSAGE(run_reduce(inst, plan).pass, s.kind);
            CHECK(plan.load >= cdc_bound(inst.computation_load(), s.num_users()));
            for (const auto& msg : plan.messages) {
                for (const auto& t : msg.terms) CHECK(inst.holds(msg.sender, t.file));
            }
        }
    }
}

TEST_CASE("full storage needs no shuffle") {
    const auto u = build_universe({Element::integer(1), Element::integer(2)},
                                  {Element::set_of({1}), Element::set_of({2})}, CombineOp::kSetUnion);
    const auto s = build_scheme_lifted(u, Coloring{});
    const auto inst = build_instance(s, 2);
    CHECK(inst.computation_load() == 2);
    const auto plan = synthesize_shuffle(inst, s);
    CHECK(plan.m_prime == 0);
    CHECK(plan.load == 0);
    CHECK(run_reduce(inst, plan).pass);
    CHECK(cdc_bound(Rational(2), 2) == 0);
}

TEST_CASE("CDC bound") {
    CHECK(cdc_bound(Rational(2), 4) == Rational(1, 4));
    CHECK(cdc_bound(Rational(4), 6) == Rational(1, 12));
    CHECK_ERROR_CODE(cdc_bound(Rational(0), 4), ErrorCode::kRange);
    CHECK_ERROR_CODE(cdc_bound(Rational(5), 4), ErrorCode::kRange);
}

TEST_CASE("tampered messages fail reduce verification") {
    const auto s = scheme_cyclic(5);
    const auto inst = build_instance(s, 5);
    auto plan = synthesize_shuffle(inst, s);
    plan.messages[0].payload[0] ^= 1;
    CHECK_FALSE(run_reduce(inst, plan).pass);
    plan = synthesize_shuffle(inst, s);
    plan.messages.pop_back();
    CHECK_FALSE(run_reduce(inst, plan).pass);
}
