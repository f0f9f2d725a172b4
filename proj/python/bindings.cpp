// Python bindings. Structured results cross the boundary as JSON text; the
// package __init__ turns them into dicts.

#include "rainbowcc/error.hpp"
#include "rainbowcc/gf.hpp"
#include "rainbowcc/mapreduce.hpp"
#include "rainbowcc/rainbow3ap.hpp"
#include "rainbowcc/schemes.hpp"
#include "rainbowcc/serialize.hpp"
#include "rainbowcc/simulator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace rainbowcc;

namespace {

SchemeOptions options(const std::string& field, const std::string& delivery) {
    return SchemeOptions{field_from_string(field), delivery_mode_from_string(delivery)};
}

Rational parse_rational(const std::string& text) { return rational_from_json(Json(text)); }

std::string simulate(const CachingScheme& scheme, std::size_t N, const std::string& policy, std::size_t count,
                     std::uint64_t seed, std::size_t packet_size) {
    SweepOptions opts;
    opts.policy = demand_policy_from_string(policy);
    opts.random_count = count;
    opts.seed = seed;
    opts.packet_size = packet_size;
    const auto report = sweep(scheme, N, opts);
    return run_report_to_json(report, compare_bounds(report, scheme)).dump();
}

std::string mapreduce(const CachingScheme& scheme, std::optional<std::size_t> Q, std::size_t value_size,
                      std::uint64_t seed, bool multicast) {
    const auto inst = build_instance(scheme, Q.value_or(scheme.num_users()), value_size, seed);
    const auto plan = multicast ? multicast_shuffle(inst, scheme) : synthesize_shuffle(inst, scheme);
    auto j = plan_to_json(plan, scheme);
    j["cdc_bound"] = rational_to_json(cdc_bound(inst.computation_load(), scheme.num_users()));
    j["reduce"] = reduce_report_to_json(run_reduce(inst, plan));
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Rainbow-framework coded caching and coded MapReduce";

    static py::exception<Error> error(m, "RainbowError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
            exc.attr("code") = std::string(error_code_name(e.code()));
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<CachingScheme>(m, "Scheme")
        .def_readonly("kind", &CachingScheme::kind)
        .def_property_readonly("K", [](const CachingScheme& s) { return s.params.K; })
        .def_property_readonly("F", [](const CachingScheme& s) { return s.params.F; })
        .def_property_readonly("m", [](const CachingScheme& s) { return s.m; })
        .def_property_readonly("num_colors", [](const CachingScheme& s) { return s.params.num_colors; })
        .def_property_readonly("rate", [](const CachingScheme& s) { return exact_string(s.params.rate); })
        .def_property_readonly("cache_fraction",
                               [](const CachingScheme& s) { return exact_string(s.params.cache_fraction); })
        .def_property_readonly("P", [](const CachingScheme& s) { return s.P.to_rows(); })
        .def("color_at", &CachingScheme::color_at, py::arg("user"), py::arg("packet"))
        .def("to_json", [](const CachingScheme& s) { return scheme_to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return scheme_from_json(parse_json(text)); })
        .def("__repr__", [](const CachingScheme& s) {
            return "<Scheme " + s.kind + " K=" + std::to_string(s.params.K) + " F=" + std::to_string(s.params.F) +
                   " m=" + std::to_string(s.m) + " R=" + exact_string(s.params.rate) + ">";
        });

    m.def("man", [](std::size_t K, std::size_t t, const std::string& f, const std::string& d) {
        return scheme_man(K, t, options(f, d));
    }, py::arg("K"), py::arg("t"), py::arg("field") = "GF2", py::arg("delivery") = "m-aware");
    m.def("cyclic", [](std::size_t n, const std::string& f, const std::string& d) {
        return scheme_cyclic(n, options(f, d));
    }, py::arg("n"), py::arg("field") = "GF2", py::arg("delivery") = "m-aware");
    m.def("union_subsets", [](std::size_t n, std::size_t a, std::size_t b, const std::string& f, const std::string& d) {
        return scheme_union_subsets(n, a, b, options(f, d));
    }, py::arg("n"), py::arg("a"), py::arg("b"), py::arg("field") = "GF2", py::arg("delivery") = "m-aware");
    m.def("linear_block", [](const std::vector<std::vector<int>>& g, int q, const std::string& f,
                             const std::string& d) { return scheme_linear_block(g, q, options(f, d)); },
          py::arg("generator"), py::arg("q") = 2, py::arg("field") = "GF2", py::arg("delivery") = "m-aware");
    m.def("pda_import", [](const std::string& text, const std::string& f, const std::string& d) {
        return pda_to_scheme(parse_pda(text), options(f, d));
    }, py::arg("text"), py::arg("field") = "GF2", py::arg("delivery") = "m-aware");
    m.def("universe_scheme", [](const std::string& doc, const std::string& f, const std::string& d) {
        return scheme_from_doc(universe_doc_from_json(parse_json(doc)), options(f, d));
    }, py::arg("doc"), py::arg("field") = "GF2", py::arg("delivery") = "m-aware");

    m.def("search_rainbow", [](std::size_t m_, const std::string& strategy, std::optional<std::size_t> budget,
                               const std::vector<std::int64_t>& deletions,
                               const std::map<std::int64_t, std::int64_t>& chi) {
        ApSearch s;
        s.strategy = ap_strategy_from_string(strategy);
        s.budget = budget;
        s.deletions = deletions;
        s.explicit_chi = chi;
        return rainbow_ap_to_json(build_rainbow_ap(m_, s)).dump();
    }, py::arg("m"), py::arg("strategy") = "greedy", py::arg("budget") = py::none(),
          py::arg("deletions") = std::vector<std::int64_t>{}, py::arg("chi") = std::map<std::int64_t, std::int64_t>{});
    m.def("rainbow_3ap", [](const std::string& ap_json, const std::string& f, const std::string& d) {
        return build_rainbow_scheme(rainbow_ap_from_json(parse_json(ap_json)), options(f, d));
    }, py::arg("ap_json"), py::arg("field") = "GF2", py::arg("delivery") = "per-color");

    m.def("simulate_json", &simulate, py::arg("scheme"), py::arg("N"), py::arg("policy") = "worst-case-distinct",
          py::arg("count") = 100, py::arg("seed") = 0, py::arg("packet_size") = 64);
    m.def("mapreduce_json", &mapreduce, py::arg("scheme"), py::arg("Q") = py::none(), py::arg("value_size") = 16,
          py::arg("seed") = 0, py::arg("multicast") = false);

    m.def("cdc_bound", [](const std::string& r, std::size_t K) { return exact_string(cdc_bound(parse_rational(r), K)); },
          py::arg("r"), py::arg("K"));
    m.def("cutset_bound", [](std::size_t K, std::size_t N, const std::string& M) {
        return exact_string(cutset_bound(K, N, parse_rational(M)));
    }, py::arg("K"), py::arg("N"), py::arg("M"));
    m.def("man_rate", [](std::size_t K, const std::string& frac) { return exact_string(man_rate(K, parse_rational(frac))); },
          py::arg("K"), py::arg("cache_fraction"));

    m.def("gf_mul", &gf256::mul, py::arg("a"), py::arg("b"));
    m.def("mds_matrix", [](std::size_t rows, std::size_t cols, const std::string& f) {
        return mds_matrix(rows, cols, field_from_string(f)).to_rows();
    }, py::arg("rows"), py::arg("cols"), py::arg("field") = "GF256");
    m.def("verify_mds", [](const std::vector<std::vector<std::uint8_t>>& rows, const std::string& f) {
        return verify_mds(Matrix::from_rows(field_from_string(f), rows));
    }, py::arg("rows"), py::arg("field") = "GF256");
}
