#include "helpers.hpp"

#include "rainbowcc/serialize.hpp"

#include <set>
#include <sstream>

using namespace rainbowcc;

TEST_CASE("element encoding") {
    CHECK(element_to_json(Element::integer(5)) == Json(5));
    CHECK(element_to_json(Element::set_of({3, 1})) == Json::parse("[1,3]"));
    CHECK(element_to_json(Element::pair(2, 0)) == Json::parse(R"({"pair":[2,0]})"));
    const auto paired = Element::set({Label::paired(1, 0), Label::paired(2, 1)});
    CHECK(element_to_json(paired) == Json::parse("[[1,0],[2,1]]"));
    for (const auto& e : {Element::integer(-4), Element::set_of({2, 9}), Element::pair(3, 1), paired}) {
        CHECK(element_from_json(element_to_json(e)) == e);
    }
    CHECK_ERROR_CODE(element_from_json(Json("x")), ErrorCode::kParse);
}

TEST_CASE("rationals") {
    CHECK(rational_to_json(Rational(6, 4)) == Json("3/2"));
    CHECK(rational_from_json(Json("3/2")) == Rational(3, 2));
    CHECK(rational_from_json(Json(2)) == Rational(2));
    CHECK_ERROR_CODE(rational_from_json(Json("3/0")), ErrorCode::kParse);
}

TEST_CASE("universe documents") {
    const auto cu = testing::cyclic4();
    const auto j = universe_doc_to_json(cu.universe, cu.coloring, Sigma::subset_rainbow(1));
    const auto doc = universe_doc_from_json(j);
    CHECK(doc.universe.num_users() == 4);
    CHECK(doc.coloring.size() == 4);
    REQUIRE(doc.sigma.has_value());
    const auto s = scheme_from_doc(doc);
    CHECK(s.m == 3);
    CHECK(s.pair_color == scheme_cyclic(4).pair_color);
}

TEST_CASE("scheme round trips") {
    std::vector<CachingScheme> schemes{scheme_cyclic(4), scheme_man(4, 2, {Field::kGF256, DeliveryMode::kMAware}),
                                       build_rainbow_scheme(testing::ap_m4()),
                                       pda_to_scheme(parse_pda("* 0\n0 *\n"))};
    for (const auto& s : schemes) {
        const auto text = scheme_to_json(s).dump();
        const auto back = scheme_from_json(Json::parse(text));
        CHECK(back.kind == s.kind);
        CHECK(back.pair_color == s.pair_color);
        CHECK(back.P == s.P);
        CHECK(back.params.rate == s.params.rate);
        CHECK(scheme_to_json(back).dump() == text);
    }
}

TEST_CASE("tampered scheme files are rejected") {
    auto j = scheme_to_json(scheme_cyclic(4));
    j["P"]["entries"][0][0] = 0;
    CHECK_ERROR_CODE(scheme_from_json(j), ErrorCode::kParse);
    j = scheme_to_json(scheme_cyclic(4));
    j["params"]["m"] = 4;
    CHECK_ERROR_CODE(scheme_from_json(j), ErrorCode::kParse);
    CHECK_ERROR_CODE(parse_json("{\"A\": [1,"), ErrorCode::kParse);
    CHECK_ERROR_CODE(read_json_file("/nonexistent/scheme.json"), ErrorCode::kParse);
}

TEST_CASE("rainbow AP documents") {
    const auto raps = testing::ap_m4();
    const auto j = rainbow_ap_to_json(raps);
    CHECK(j["n"] == 8);
    CHECK(j["A"] == Json::parse("[2,3,4,6,7,8]"));
    CHECK(j["strict_rainbow"] == false);
    const auto back = rainbow_ap_from_json(j);
    CHECK(back.members == raps.members);
    CHECK(back.chi == raps.chi);
    // Letters are numbered in sorted order.
    const auto letters = rainbow_ap_from_json(Json::parse(
        R"({"n": 8, "A": [2,3,4,6,7,8], "chi": {"2":"a","8":"a","3":"b","7":"b","4":"c","6":"c"}})"));
    CHECK(letters.chi == raps.chi);
}

TEST_CASE("run report CSV") {
    SweepOptions opt;
    opt.policy = DemandPolicy::kExhaustive;
    const auto report = sweep(scheme_cyclic(4), 2, opt);
    const auto csv = run_report_csv(report);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,d1,d2,d3,d4,transmissions,rate,pass,failed_users");
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 16);
    const auto j = run_report_to_json(report, compare_bounds(report, scheme_cyclic(4)));
    CHECK(j["realized_rate"] == "3/4");
    CHECK(j["all_pass"] == true);
}

TEST_CASE("plan report uses 1-based ids") {
    const auto s = scheme_cyclic(4);
    const auto inst = build_instance(s, 4);
    const auto j = plan_to_json(synthesize_shuffle(inst, s), s);
    CHECK(j["m_prime"] == 4);
    CHECK(j["L"] == "1/4");
    std::set<std::size_t> senders;
    for (const auto& msg : j["messages"]) senders.insert(msg["sender"].get<std::size_t>());
    CHECK(senders == std::set<std::size_t>{1, 2, 3, 4});
}
