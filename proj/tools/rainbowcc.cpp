// Command line front end: build, validate, simulate, mapreduce, bounds and
// search-rainbow. Every run ends with a "RESULT {json}" summary line.
#include "rainbowcc/error.hpp"
#include "rainbowcc/mapreduce.hpp"
#include "rainbowcc/rainbow3ap.hpp"
#include "rainbowcc/schemes.hpp"
#include "rainbowcc/serialize.hpp"
#include "rainbowcc/simulator.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>

using namespace rainbowcc;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitParse = 2;

struct Result {
    Json summary = Json::object();
    int code = 0;
};

void print_result(const std::string& command, Result& r) {
    Json out{{"command", command}, {"ok", r.code == 0}};
    for (auto& [k, v] : r.summary.items()) out[k] = v;
    std::cout << "RESULT " << out.dump() << std::endl;
}

SchemeOptions parse_options(const std::string& field, const std::string& delivery, SchemeOptions defaults) {
    if (!field.empty()) defaults.field = field_from_string(field);
    if (!delivery.empty()) defaults.delivery = delivery_mode_from_string(delivery);
    return defaults;
}

std::vector<std::vector<int>> parse_generator(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::istringstream rows_in(text);
    std::string row;
    while (std::getline(rows_in, row, ';')) {
        std::vector<int> values;
        std::istringstream vals(row);
        std::string v;
        while (std::getline(vals, v, ',')) {
            try {
                values.push_back(std::stoi(v));
            } catch (const std::exception&) {
                throw Error(ErrorCode::kParse, "bad generator entry '" + v + "'");
            }
        }
        rows.push_back(std::move(values));
    }
    return rows;
}

std::string params_line(const CachingScheme& s) {
    const auto& p = s.params;
    return "K=" + std::to_string(p.K) + " F=" + std::to_string(p.F) + " M/N=" + display_string(p.cache_fraction) +
           " colors=" + std::to_string(p.num_colors) + " m=" + std::to_string(p.m) + " R=" + display_string(p.rate);
}

Json rational_summary(const Rational& r) {
    return Json{{"exact", exact_string(r)}, {"decimal", to_double(r)}};
}

void report_scheme(const CachingScheme& s, const std::string& out_path, Result& r) {
    std::cout << s.kind << ": " << params_line(s) << "\n";
    if (!out_path.empty()) {
        write_text_file(out_path, scheme_to_json(s).dump(2) + "\n");
        std::cout << "wrote " << out_path << "\n";
    }
    r.summary["kind"] = s.kind;
    r.summary["params"] = params_to_json(s.params);
    r.summary["field"] = std::string(to_string(s.options.field));
    r.summary["delivery"] = std::string(to_string(s.options.delivery));
}

/// Loads either a scheme file or a universe document.
CachingScheme load_scheme(const std::string& path, SchemeOptions options, bool override_options) {
    const auto j = read_json_file(path);
    if (j.contains("pair_coloring")) {
        auto s = scheme_from_json(j);
        if (!override_options) return s;
        auto kind = s.kind;
        auto rebuilt = build_scheme_from_pairs(s.universe, s.coloring, s.pair_color, options);
        rebuilt.kind = kind;
        return rebuilt;
    }
    auto s = scheme_from_doc(universe_doc_from_json(j), options);
    s.kind = "universe";
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rainbow-framework coded caching and coded MapReduce toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "Seed for synthesized content and random demands");

    std::string field_name;
    std::string delivery_name;
    std::string out_path;
    auto add_scheme_flags = [&](CLI::App* cmd) {
        cmd->add_option("--field", field_name, "GF2 or GF256");
        cmd->add_option("--delivery", delivery_name, "m-aware or per-color");
        cmd->add_option("-o,--out", out_path, "Write the scheme JSON here");
    };

    // build
    auto* build = app.add_subcommand("build", "Construct a scheme");
    build->require_subcommand(1);
    std::size_t man_K = 0, man_t = 0;
    auto* b_man = build->add_subcommand("man", "MAN scheme: users [K], packets the t-subsets");
    b_man->add_option("--K", man_K)->required();
    b_man->add_option("--t", man_t)->required();
    add_scheme_flags(b_man);

    std::size_t us_n = 0, us_a = 0, us_b = 0;
    auto* b_union = build->add_subcommand("union-subsets", "Users a-subsets, packets b-subsets of [n]");
    b_union->add_option("--n", us_n)->required();
    b_union->add_option("--a", us_a)->required();
    b_union->add_option("--b", us_b)->required();
    add_scheme_flags(b_union);

    std::string generator;
    int lb_q = 2;
    auto* b_linear = build->add_subcommand("linear-block", "Linear block code scheme, n = k + 1");
    b_linear->add_option("--generator", generator, "Rows separated by ';', entries by ','")->required();
    b_linear->add_option("--q", lb_q, "Prime alphabet size");
    add_scheme_flags(b_linear);

    std::size_t cyc_n = 0;
    auto* b_cyclic = build->add_subcommand("cyclic", "Cyclic window family on [n]");
    b_cyclic->add_option("--n", cyc_n)->required();
    add_scheme_flags(b_cyclic);

    std::size_t rb_m = 0;
    std::string rb_explicit, rb_strategy = "greedy", rb_export;
    std::optional<std::size_t> rb_budget;
    std::vector<std::int64_t> rb_delete;
    auto* b_rainbow = build->add_subcommand("rainbow-3ap", "Rainbow 3-AP scheme with F = K = m");
    b_rainbow->add_option("--m", rb_m);
    b_rainbow->add_option("--explicit", rb_explicit, "Rainbow AP JSON with the coloring chi");
    b_rainbow->add_option("--strategy", rb_strategy, "greedy or exact");
    b_rainbow->add_option("--budget", rb_budget, "Maximum number of colors for chi");
    b_rainbow->add_option("--delete", rb_delete, "Sums to remove from A")->delimiter(',');
    b_rainbow->add_option("--export-ap", rb_export, "Write the rainbow AP set JSON here");
    add_scheme_flags(b_rainbow);

    std::string pda_path;
    auto* b_pda = build->add_subcommand("pda-import", "Scheme from a placement delivery array");
    b_pda->add_option("path", pda_path)->required();
    add_scheme_flags(b_pda);

    std::string doc_path;
    auto* b_universe = build->add_subcommand("universe", "Scheme from a universe and coloring JSON");
    b_universe->add_option("path", doc_path)->required();
    add_scheme_flags(b_universe);

    // validate
    std::string validate_path;
    bool validate_pda = false;
    auto* validate = app.add_subcommand("validate", "Check a scheme, universe document or PDA");
    validate->add_option("path", validate_path)->required();
    validate->add_flag("--pda", validate_pda, "Treat the input as a PDA text file");

    // simulate
    std::string sim_path, sim_policy = "worst-case-distinct", sim_json, sim_csv;
    std::size_t sim_N = 0, sim_count = 100, sim_packet = 64;
    auto* simulate = app.add_subcommand("simulate", "Place, deliver and decode across demands");
    simulate->add_option("path", sim_path)->required();
    simulate->add_option("--N", sim_N, "Number of files")->required();
    simulate->add_option("--policy", sim_policy, "exhaustive, random or worst-case-distinct");
    simulate->add_option("--count", sim_count, "Demands for the random policy");
    simulate->add_option("--packet-size", sim_packet, "Bytes per packet");
    simulate->add_option("--field", field_name, "Override the scheme field");
    simulate->add_option("--delivery", delivery_name, "Override the delivery mode");
    simulate->add_option("--json", sim_json, "Write the run report JSON here");
    simulate->add_option("--csv", sim_csv, "Write one CSV row per demand here");

    // mapreduce
    std::string mr_path, mr_json;
    std::size_t mr_cyclic = 0, mr_Q = 0, mr_T = 16;
    bool mr_compare = false, mr_multicast = false;
    auto* mapreduce = app.add_subcommand("mapreduce", "Shuffle plan for coded MapReduce");
    mapreduce->add_option("path", mr_path, "Universe document or scheme file");
    mapreduce->add_option("--cyclic", mr_cyclic, "Use the cyclic family on [n] instead of a file");
    mapreduce->add_option("--Q", mr_Q, "Number of functions (default K)");
    mapreduce->add_option("--value-size", mr_T, "Bytes per intermediate value");
    mapreduce->add_flag("--compare", mr_compare, "Also print the multicast-group baseline");
    mapreduce->add_flag("--multicast", mr_multicast, "Force the multicast-group plan");
    mapreduce->add_option("--field", field_name, "GF2 or GF256");
    mapreduce->add_option("--delivery", delivery_name, "m-aware or per-color");
    mapreduce->add_option("--json", mr_json, "Write the plan report JSON here");

    // bounds
    std::size_t bd_K = 0, bd_N = 0;
    std::string bd_M, bd_r;
    auto* bounds = app.add_subcommand("bounds", "Cut-set, MAN and CDC reference values");
    bounds->add_option("--K", bd_K)->required();
    bounds->add_option("--N", bd_N, "Files (caching bounds)");
    bounds->add_option("--M", bd_M, "Cache size in files, e.g. 2 or 3/2");
    bounds->add_option("--r", bd_r, "Computation load for the CDC bound");

    // search-rainbow
    std::size_t sr_m = 0;
    std::string sr_strategy = "greedy", sr_out;
    std::optional<std::size_t> sr_budget;
    std::vector<std::int64_t> sr_delete;
    auto* search = app.add_subcommand("search-rainbow", "Find a rainbow 3-AP coloring of A ⊆ [2m]");
    search->add_option("--m", sr_m)->required();
    search->add_option("--strategy", sr_strategy, "greedy or exact");
    search->add_option("--budget", sr_budget, "Maximum number of colors");
    search->add_option("--delete", sr_delete, "Sums to remove from A")->delimiter(',');
    search->add_option("-o,--out", sr_out, "Write the rainbow AP set JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        Result r;
        r.code = kExitParse;
        r.summary["error"] = "PARSE";
        r.summary["message"] = e.what();
        print_result("cli", r);
        return kExitParse;
    }

    std::string command = app.get_subcommands().front()->get_name();
    Result r;
    try {
        if (build->parsed()) {
            SchemeOptions catalog_defaults;
            CachingScheme scheme;
            if (b_man->parsed()) {
                command = "build man";
                scheme = scheme_man(man_K, man_t, parse_options(field_name, delivery_name, catalog_defaults));
            } else if (b_union->parsed()) {
                command = "build union-subsets";
                scheme = scheme_union_subsets(us_n, us_a, us_b, parse_options(field_name, delivery_name, catalog_defaults));
            } else if (b_linear->parsed()) {
                command = "build linear-block";
                scheme = scheme_linear_block(parse_generator(generator), lb_q,
                                             parse_options(field_name, delivery_name, catalog_defaults));
            } else if (b_cyclic->parsed()) {
                command = "build cyclic";
                scheme = scheme_cyclic(cyc_n, parse_options(field_name, delivery_name, catalog_defaults));
            } else if (b_rainbow->parsed()) {
                command = "build rainbow-3ap";
                RainbowAPSet raps;
                if (!rb_explicit.empty()) {
                    raps = rainbow_ap_from_json(read_json_file(rb_explicit));
                    if (rb_m != 0 && rb_m != raps.m) {
                        throw Error(ErrorCode::kRange, "--m " + std::to_string(rb_m) + " disagrees with n=" +
                                                           std::to_string(raps.n()) + " in " + rb_explicit);
                    }
                } else {
                    if (rb_m == 0) throw Error(ErrorCode::kRange, "--m is required without --explicit");
                    ApSearch s;
                    s.strategy = ap_strategy_from_string(rb_strategy);
                    s.budget = rb_budget;
                    s.deletions = rb_delete;
                    raps = build_rainbow_ap(rb_m, s);
                }
                if (!rb_export.empty()) write_text_file(rb_export, rainbow_ap_to_json(raps).dump(2) + "\n");
                scheme = build_rainbow_scheme(
                    raps, parse_options(field_name, delivery_name, {Field::kGF2, DeliveryMode::kPerColor}));
                const auto psi = build_psi(raps);
                std::cout << "Psi grid: K=" << scheme.params.K << " F=" << scheme.params.F
                          << " colors=" << psi.num_colors() << " chi_colors=" << raps.num_colors
                          << " strict_rainbow=" << (raps.strict_rainbow ? "yes" : "no") << "\n";
                r.summary["psi_colors"] = psi.num_colors();
                r.summary["chi_colors"] = raps.num_colors;
                r.summary["strict_rainbow"] = raps.strict_rainbow;
            } else if (b_pda->parsed()) {
                command = "build pda-import";
                scheme = pda_to_scheme(parse_pda(read_text_file(pda_path)),
                                       parse_options(field_name, delivery_name, catalog_defaults));
            } else if (b_universe->parsed()) {
                command = "build universe";
                scheme = scheme_from_doc(universe_doc_from_json(read_json_file(doc_path)),
                                         parse_options(field_name, delivery_name, catalog_defaults));
                scheme.kind = "universe";
            }
            report_scheme(scheme, out_path, r);
        } else if (validate->parsed()) {
            if (validate_pda) {
                const auto pda = parse_pda(read_text_file(validate_path));
                const auto check = check_pda(pda);
                r.summary["F"] = pda.F;
                r.summary["K"] = pda.K;
                if (!check.ok) {
                    std::cout << "invalid: " << check.axiom << ": " << check.message << "\n";
                    r.summary["axiom"] = check.axiom;
                    r.summary["message"] = check.message;
                    r.code = kExitDomain;
                } else {
                    std::cout << "valid PDA: F=" << pda.F << " K=" << pda.K << "\n";
                }
            } else {
                const auto j = read_json_file(validate_path);
                CachingScheme scheme;
                if (j.contains("pair_coloring")) {
                    scheme = scheme_from_json(j);
                } else {
                    const auto doc = universe_doc_from_json(j);
                    if (doc.sigma) {
                        const auto rep = validate_rainbow(doc.universe, doc.coloring, *doc.sigma);
                        r.summary["sigma"] = doc.sigma->name();
                        r.summary["rainbow"] = rep.pass;
                        if (!rep.pass) {
                            std::string inst;
                            for (auto idx : rep.violation) inst += " " + doc.universe.combined()[idx].to_string();
                            std::cout << "not rainbow under " << doc.sigma->name() << ":" << inst << "\n";
                            r.code = kExitDomain;
                        }
                    }
                    if (r.code == 0) scheme = scheme_from_doc(doc);
                }
                if (r.code == 0) {
                    const auto violation = find_class_violation(scheme);
                    const bool mds = scheme.P.rows() > kMdsVerifyRowLimit || verify_mds(scheme.P);
                    r.summary["class_condition"] = !violation.has_value();
                    r.summary["mds"] = mds;
                    if (violation || !mds) {
                        std::cout << "invalid: " << (violation ? *violation : std::string("P is not MDS")) << "\n";
                        r.code = kExitDomain;
                    } else {
                        std::cout << "valid " << scheme.kind << ": " << params_line(scheme) << "\n";
                        r.summary["params"] = params_to_json(scheme.params);
                    }
                }
            }
        } else if (simulate->parsed()) {
            const bool override_options = !field_name.empty() || !delivery_name.empty();
            SchemeOptions base;
            auto scheme = load_scheme(sim_path, base, false);
            if (override_options) {
                scheme = load_scheme(sim_path, parse_options(field_name, delivery_name, scheme.options), true);
            }
            SweepOptions opts;
            opts.policy = demand_policy_from_string(sim_policy);
            opts.random_count = sim_count;
            opts.seed = seed;
            opts.packet_size = sim_packet;
            const auto report = sweep(scheme, sim_N, opts);
            const auto rows = compare_bounds(report, scheme);
            std::cout << "R=" << display_string(report.realized_rate) << " demands=" << report.results.size()
                      << " failures=" << report.failures << " m=" << scheme.m << " F=" << scheme.num_packets()
                      << "\n";
            for (const auto& row : rows) {
                if (!row.applicable) continue;
                std::cout << "  " << row.name << " = " << display_string(row.value)
                          << "  slack " << display_string(row.slack) << "\n";
            }
            if (!sim_json.empty()) write_text_file(sim_json, run_report_to_json(report, rows).dump(2) + "\n");
            if (!sim_csv.empty()) write_text_file(sim_csv, run_report_csv(report));
            r.summary["R"] = rational_summary(report.realized_rate);
            r.summary["demands"] = report.results.size();
            r.summary["failures"] = report.failures;
            r.summary["all_pass"] = report.all_pass;
            r.summary["policy"] = std::string(to_string(opts.policy));
            r.summary["seed"] = opts.seed;
            r.summary["rate_matches_m"] = report.rate_matches_m;
            r.summary["bounds"] = bounds_to_json(rows);
            if (!report.all_pass) r.code = kExitDomain;
        } else if (mapreduce->parsed()) {
            SchemeOptions options = parse_options(field_name, delivery_name, {});
            CachingScheme scheme;
            if (mr_cyclic != 0) {
                scheme = scheme_cyclic(mr_cyclic, options);
            } else if (!mr_path.empty()) {
                scheme = load_scheme(mr_path, options, !field_name.empty() || !delivery_name.empty());
            } else {
                throw Error(ErrorCode::kParse, "mapreduce needs a file or --cyclic n");
            }
            const std::size_t Q = mr_Q == 0 ? scheme.num_users() : mr_Q;
            const auto inst = build_instance(scheme, Q, mr_T, seed);
            const auto plan = mr_multicast ? multicast_shuffle(inst, scheme) : synthesize_shuffle(inst, scheme);
            const auto reduce = run_reduce(inst, plan);
            const auto r_load = inst.computation_load();
            const auto bound = cdc_bound(r_load, inst.K);
            std::cout << "r=" << display_string(r_load) << " L=" << display_string(plan.load)
                      << " bound=" << display_string(bound) << "\n";
            std::cout << "m'=" << plan.m_prime << " mode=" << to_string(plan.mode)
                      << " reduce=" << (reduce.pass ? "PASS" : "FAIL") << "\n";
            for (const auto& msg : plan.messages) {
                std::cout << "  node " << msg.sender + 1 << " sends " << msg.description << "\n";
            }
            r.summary["r"] = rational_summary(r_load);
            r.summary["L"] = rational_summary(plan.load);
            r.summary["bound"] = rational_summary(bound);
            r.summary["m_prime"] = plan.m_prime;
            r.summary["mode"] = std::string(to_string(plan.mode));
            r.summary["reduce_pass"] = reduce.pass;
            if (mr_compare) {
                const auto baseline = multicast_baseline_load(scheme, Q);
                std::cout << "baseline=" << display_string(baseline) << " (multicast groups)\n";
                r.summary["baseline"] = rational_summary(baseline);
            }
            if (!mr_json.empty()) {
                auto j = plan_to_json(plan, scheme);
                j["bound"] = rational_to_json(bound);
                j["reduce"] = reduce_report_to_json(reduce);
                write_text_file(mr_json, j.dump(2) + "\n");
            }
            if (!reduce.pass) r.code = kExitDomain;
        } else if (bounds->parsed()) {
            r.summary["K"] = bd_K;
            if (!bd_M.empty()) {
                if (bd_N == 0) throw Error(ErrorCode::kRange, "--M needs --N");
                const auto M = rational_from_json(Json(bd_M));
                const auto frac = M / Rational(static_cast<std::int64_t>(bd_N));
                if (frac < 0 || frac > 1) throw Error(ErrorCode::kRange, "need 0 <= M <= N");
                const auto cut = cutset_bound(bd_K, bd_N, M);
                std::cout << "cut-set=" << display_string(cut) << "\n";
                r.summary["cutset"] = rational_summary(cut);
                const auto t = Rational(static_cast<std::int64_t>(bd_K)) * frac;
                if (t.denominator() == 1) {
                    const auto man = man_rate(bd_K, frac);
                    std::cout << "man=" << display_string(man) << "\n";
                    r.summary["man"] = rational_summary(man);
                }
            }
            if (!bd_r.empty()) {
                const auto cdc = cdc_bound(rational_from_json(Json(bd_r)), bd_K);
                std::cout << "cdc=" << display_string(cdc) << "\n";
                r.summary["cdc"] = rational_summary(cdc);
            }
            if (bd_M.empty() && bd_r.empty()) throw Error(ErrorCode::kRange, "bounds needs --M or --r");
        } else if (search->parsed()) {
            ApSearch s;
            s.strategy = ap_strategy_from_string(sr_strategy);
            s.budget = sr_budget;
            s.deletions = sr_delete;
            const auto raps = build_rainbow_ap(sr_m, s);
            std::cout << "m=" << raps.m << " |A|=" << raps.members.size() << " colors=" << raps.num_colors
                      << " alpha_emp=" << raps.alpha_emp << " beta_emp=" << raps.beta_emp << "\n";
            if (!sr_out.empty()) write_text_file(sr_out, rainbow_ap_to_json(raps).dump(2) + "\n");
            r.summary = rainbow_ap_to_json(raps);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        r.code = e.code() == ErrorCode::kParse ? kExitParse : kExitDomain;
        r.summary["error"] = std::string(error_code_name(e.code()));
        r.summary["message"] = e.what();
    }
    print_result(command, r);
    return r.code;
}
