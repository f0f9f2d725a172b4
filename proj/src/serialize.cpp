#include "rainbowcc/serialize.hpp"

#include "rainbowcc/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace rainbowcc {

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
    throw Error(ErrorCode::kParse, what);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing key '") + key + "'");
    return j.at(key);
}

template <typename F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::kParse) throw;
        parse_fail(std::string(what) + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
        parse_fail(std::string(what) + ": " + e.what());
    }
}

std::vector<Element> elements_from_json(const Json& j) {
    if (!j.is_array()) parse_fail("expected an array of elements");
    std::vector<Element> out;
    for (const auto& e : j) out.push_back(element_from_json(e));
    return out;
}

Json colored_to_json(const Universe& universe, const Coloring& coloring) {
    Json colored = Json::array();
    for (const auto& [idx, c] : coloring.colors()) {
        colored.push_back(Json{{"element", element_to_json(universe.combined()[idx])}, {"color", c}});
    }
    return colored;
}

Coloring colored_from_json(const Universe& universe, const Json& j) {
    if (!j.is_array()) parse_fail("'colored' must be an array");
    std::map<std::size_t, std::int64_t> raw;
    for (const auto& entry : j) {
        const auto element = element_from_json(field(entry, "element"));
        const auto idx = universe.find(element);
        if (!idx) throw Error(ErrorCode::kRange, "colored element " + element.to_string() + " is not in C");
        if (!raw.emplace(*idx, field(entry, "color").get<std::int64_t>()).second) {
            parse_fail("element " + element.to_string() + " colored twice");
        }
    }
    return Coloring(raw);
}

Universe universe_from_json(const Json& j) {
    return build_universe(elements_from_json(field(j, "A")), elements_from_json(field(j, "B")),
                          combine_op_from_string(field(j, "op").get<std::string>()));
}

}  // namespace

Json element_to_json(const Element& element) {
    switch (element.kind()) {
    case Element::Kind::kInteger: return element.as_integer();
    case Element::Kind::kPair: {
        const auto p = element.as_pair();
        return Json{{"pair", {p.position, p.symbol}}};
    }
    case Element::Kind::kSet: {
        Json arr = Json::array();
        for (const auto& l : element.as_set()) {
            if (l.is_pair()) {
                arr.push_back({l.value, l.symbol});
            } else {
                arr.push_back(l.value);
            }
        }
        return arr;
    }
    }
    return nullptr;
}

Element element_from_json(const Json& j) {
    if (j.is_number_integer()) return Element::integer(j.get<std::int64_t>());
    if (j.is_object() && j.contains("pair")) {
        const auto& p = j.at("pair");
        if (!p.is_array() || p.size() != 2) parse_fail("pair element needs [position, symbol]");
        return Element::pair(p[0].get<std::int64_t>(), p[1].get<std::int64_t>());
    }
    if (j.is_array()) {
        std::vector<Label> labels;
        for (const auto& l : j) {
            if (l.is_number_integer()) {
                labels.push_back(Label::plain(l.get<std::int64_t>()));
            } else if (l.is_array() && l.size() == 2 && l[0].is_number_integer() && l[1].is_number_integer()) {
                labels.push_back(Label::paired(l[0].get<std::int64_t>(), l[1].get<std::int64_t>()));
            } else {
                parse_fail("bad set label " + l.dump());
            }
        }
        return Element::set(std::move(labels));
    }
    parse_fail("bad element " + j.dump());
}

Json universe_doc_to_json(const Universe& universe, const Coloring& coloring, const std::optional<Sigma>& sigma) {
    Json j;
    Json a = Json::array();
    for (const auto& e : universe.users()) a.push_back(element_to_json(e));
    Json b = Json::array();
    for (const auto& e : universe.packets()) b.push_back(element_to_json(e));
    j["A"] = std::move(a);
    j["B"] = std::move(b);
    j["op"] = std::string(to_string(universe.op()));
    if (sigma && sigma->kind() != Sigma::Kind::kCustom) j["sigma"] = sigma->name();
    j["colored"] = colored_to_json(universe, coloring);
    return j;
}

UniverseDoc universe_doc_from_json(const Json& j) {
    return guarded("universe document", [&] {
        UniverseDoc doc{universe_from_json(j), Coloring{}, std::nullopt};
        doc.coloring = colored_from_json(doc.universe, field(j, "colored"));
        if (j.contains("sigma")) doc.sigma = sigma_from_string(j.at("sigma").get<std::string>());
        return doc;
    });
}

CachingScheme scheme_from_doc(const UniverseDoc& doc, SchemeOptions options) {
    if (doc.sigma) return build_scheme(doc.universe, doc.coloring, *doc.sigma, options);
    return build_scheme_lifted(doc.universe, doc.coloring, options);
}

Json matrix_to_json(const Matrix& p) {
    return Json{{"field", std::string(to_string(p.field()))}, {"rows", p.rows()}, {"cols", p.cols()},
                {"entries", p.to_rows()}};
}

Matrix matrix_from_json(const Json& j) {
    return guarded("matrix", [&] {
        const auto f = field_from_string(field(j, "field").get<std::string>());
        const auto rows = field(j, "entries").get<std::vector<std::vector<std::uint8_t>>>();
        auto p = Matrix::from_rows(f, rows);
        if (j.contains("cols") && rows.empty()) p = Matrix(f, 0, j.at("cols").get<std::size_t>());
        return p;
    });
}

Json rational_to_json(const Rational& value) {
    return exact_string(value);
}

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (!j.is_string()) parse_fail("expected a rational, got " + j.dump());
    const auto s = j.get<std::string>();
    try {
        const auto slash = s.find('/');
        if (slash == std::string::npos) return Rational(std::stoll(s));
        return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        parse_fail("bad rational '" + s + "'");
    }
}

Json params_to_json(const SchemeParams& p) {
    return Json{{"K", p.K},
                {"F", p.F},
                {"Z", p.uncached},
                {"cache_fraction", rational_to_json(p.cache_fraction)},
                {"num_colors", p.num_colors},
                {"m", p.m},
                {"rate", rational_to_json(p.rate)},
                {"color_rate", rational_to_json(p.color_rate)}};
}

Json scheme_to_json(const CachingScheme& scheme) {
    auto j = universe_doc_to_json(scheme.universe, scheme.coloring);
    Json out;
    out["kind"] = scheme.kind;
    for (auto& [k, v] : j.items()) out[k] = v;
    Json grid = Json::array();
    const std::size_t F = scheme.num_packets();
    for (std::size_t a = 0; a < scheme.num_users(); ++a) {
        grid.push_back(std::vector<int>(scheme.pair_color.begin() + static_cast<std::ptrdiff_t>(a * F),
                                        scheme.pair_color.begin() + static_cast<std::ptrdiff_t>((a + 1) * F)));
    }
    out["pair_coloring"] = std::move(grid);
    out["field"] = std::string(to_string(scheme.options.field));
    out["delivery"] = std::string(to_string(scheme.options.delivery));
    out["P"] = matrix_to_json(scheme.P);
    out["params"] = params_to_json(scheme.params);
    return out;
}

CachingScheme scheme_from_json(const Json& j) {
    return guarded("scheme file", [&] {
        auto universe = universe_from_json(j);
        auto coloring = colored_from_json(universe, field(j, "colored"));
        const auto grid = field(j, "pair_coloring").get<std::vector<std::vector<int>>>();
        if (grid.size() != universe.num_users()) parse_fail("pair_coloring needs one row per user");
        std::vector<int> pair_color;
        for (const auto& row : grid) {
            if (row.size() != universe.num_packets()) parse_fail("pair_coloring needs one column per packet");
            pair_color.insert(pair_color.end(), row.begin(), row.end());
        }
        SchemeOptions options;
        options.field = field_from_string(field(j, "field").get<std::string>());
        options.delivery = delivery_mode_from_string(field(j, "delivery").get<std::string>());
        auto scheme = build_scheme_from_pairs(universe, coloring, std::move(pair_color), options);
        if (j.contains("kind")) scheme.kind = j.at("kind").get<std::string>();
        if (j.contains("P") && !(matrix_from_json(j.at("P")) == scheme.P)) {
            parse_fail("stored P differs from the rebuilt delivery matrix");
        }
        if (j.contains("params") && params_to_json(scheme.params) != j.at("params")) {
            parse_fail("stored params differ from the rebuilt scheme");
        }
        return scheme;
    });
}

Json rainbow_ap_to_json(const RainbowAPSet& raps) {
    Json chi = Json::object();
    for (const auto& [x, c] : raps.chi) chi[std::to_string(x)] = c;
    return Json{{"n", raps.n()},
                {"A", raps.members},
                {"chi", std::move(chi)},
                {"num_colors", raps.num_colors},
                {"alpha_emp", raps.alpha_emp},
                {"beta_emp", raps.beta_emp},
                {"strict_rainbow", raps.strict_rainbow}};
}

RainbowAPSet rainbow_ap_from_json(const Json& j) {
    return guarded("rainbow AP file", [&] {
        const auto n = field(j, "n").get<std::size_t>();
        if (n == 0 || n % 2 != 0) parse_fail("n must be a positive even number");
        const auto& chi = field(j, "chi");
        if (!chi.is_object()) parse_fail("'chi' must be an object");
        std::set<std::string> names;
        for (const auto& [key, value] : chi.items()) {
            if (value.is_string()) names.insert(value.get<std::string>());
        }
        ApSearch search;
        search.strategy = ApStrategy::kExplicit;
        for (const auto& [key, value] : chi.items()) {
            std::int64_t x = 0;
            try {
                std::size_t used = 0;
                x = std::stoll(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                parse_fail("bad chi key '" + key + "'");
            }
            std::int64_t color = 0;
            if (value.is_string()) {
                color = std::distance(names.begin(), names.find(value.get<std::string>()));
            } else {
                color = value.get<std::int64_t>();
            }
            search.explicit_chi.emplace(x, color);
        }
        auto raps = build_rainbow_ap(n / 2, search);
        if (j.contains("A")) {
            auto listed = j.at("A").get<std::vector<std::int64_t>>();
            std::erase(listed, 1);
            std::sort(listed.begin(), listed.end());
            if (listed != raps.members) parse_fail("'A' disagrees with the colored values in 'chi'");
        }
        return raps;
    });
}

Json plan_to_json(const ShufflePlan& plan, const CachingScheme& scheme) {
    Json messages = Json::array();
    for (const auto& msg : plan.messages) {
        Json terms = Json::array();
        for (const auto& t : msg.terms) {
            terms.push_back(Json{{"q", t.q + 1},
                                 {"file", element_to_json(scheme.universe.packets()[t.file])},
                                 {"segment", t.segment + 1},
                                 {"segments", t.segments},
                                 {"coef", t.coef}});
        }
        messages.push_back(Json{{"sender", msg.sender + 1},
                                {"size", rational_to_json(msg.size)},
                                {"description", msg.description},
                                {"terms", std::move(terms)}});
    }
    return Json{{"mode", std::string(to_string(plan.mode))},
                {"r", rational_to_json(plan.computation_load)},
                {"L", rational_to_json(plan.load)},
                {"m_prime", plan.m_prime},
                {"multicast_L", rational_to_json(plan.multicast_load)},
                {"padding_bytes", plan.padding_bytes},
                {"messages", std::move(messages)}};
}

Json reduce_report_to_json(const ReduceReport& report) {
    Json nodes = Json::array();
    for (const auto& n : report.nodes) {
        nodes.push_back(Json{{"node", n.node + 1}, {"needed", n.needed}, {"recovered", n.recovered}, {"pass", n.pass}});
    }
    return Json{{"pass", report.pass}, {"nodes", std::move(nodes)}};
}

Json bounds_to_json(const std::vector<BoundRow>& rows) {
    Json out = Json::array();
    for (const auto& r : rows) {
        Json row{{"name", r.name}, {"applicable", r.applicable}};
        if (r.applicable) {
            row["value"] = rational_to_json(r.value);
            row["slack"] = rational_to_json(r.slack);
        }
        out.push_back(std::move(row));
    }
    return out;
}

Json run_report_to_json(const RunReport& report, const std::vector<BoundRow>& bounds) {
    Json results = Json::array();
    for (const auto& r : report.results) {
        std::vector<std::size_t> failed;
        for (std::size_t k = 0; k < r.user_pass.size(); ++k) {
            if (!r.user_pass[k]) failed.push_back(k + 1);
        }
        Json demands = Json::array();
        for (auto d : r.demands) demands.push_back(d + 1);
        results.push_back(Json{{"demands", std::move(demands)},
                               {"transmissions", r.transmissions},
                               {"pass", r.pass},
                               {"failed_users", failed}});
    }
    return Json{{"kind", report.kind},
                {"params", params_to_json(report.params)},
                {"field", std::string(to_string(report.field))},
                {"delivery", std::string(to_string(report.delivery))},
                {"N", report.N},
                {"policy", std::string(to_string(report.options.policy))},
                {"seed", report.options.seed},
                {"packet_size", report.options.packet_size},
                {"demand_count", report.results.size()},
                {"max_transmissions", report.max_transmissions},
                {"realized_rate", rational_to_json(report.realized_rate)},
                {"rate_matches_m", report.rate_matches_m},
                {"failures", report.failures},
                {"all_pass", report.all_pass},
                {"bounds", bounds_to_json(bounds)},
                {"results", std::move(results)}};
}

std::string run_report_csv(const RunReport& report) {
    std::ostringstream os;
    const std::size_t K = report.params.K;
    os << "index";
    for (std::size_t k = 1; k <= K; ++k) os << ",d" << k;
    os << ",transmissions,rate,pass,failed_users\n";
    const auto F = static_cast<std::int64_t>(report.params.F);
    for (std::size_t i = 0; i < report.results.size(); ++i) {
        const auto& r = report.results[i];
        os << i;
        for (auto d : r.demands) os << ',' << d + 1;
        os << ',' << r.transmissions << ',' << exact_string(Rational(static_cast<std::int64_t>(r.transmissions), F))
           << ',' << (r.pass ? 1 : 0) << ',';
        bool first = true;
        for (std::size_t k = 0; k < r.user_pass.size(); ++k) {
            if (r.user_pass[k]) continue;
            os << (first ? "" : " ") << k + 1;
            first = false;
        }
        os << '\n';
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) parse_fail("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) parse_fail("cannot write '" + path + "'");
    out << text;
    if (!out) parse_fail("write to '" + path + "' failed");
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        parse_fail(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::string& path) {
    return parse_json(read_text_file(path));
}

}  // namespace rainbowcc
