#include "rainbowcc/simulator.hpp"

#include "rainbowcc/error.hpp"
#include "rainbowcc/synth.hpp"

#include <algorithm>
#include <random>

namespace rainbowcc {

namespace {

constexpr std::uint32_t kLibraryTag = 0x4C42;

}  // namespace

std::string_view to_string(DemandPolicy policy) {
    switch (policy) {
    case DemandPolicy::kExhaustive: return "exhaustive";
    case DemandPolicy::kRandom: return "random";
    case DemandPolicy::kWorstCaseDistinct: return "worst-case-distinct";
    }
    return "worst-case-distinct";
}

DemandPolicy demand_policy_from_string(std::string_view name) {
    if (name == "exhaustive") return DemandPolicy::kExhaustive;
    if (name == "random") return DemandPolicy::kRandom;
    if (name == "worst-case-distinct" || name == "distinct") return DemandPolicy::kWorstCaseDistinct;
    throw Error(ErrorCode::kParse, "unknown demand policy '" + std::string(name) + "'");
}

Library synthesize_library(std::size_t N, std::size_t F, std::size_t packet_size, std::uint64_t seed) {
    Library lib;
    lib.N = N;
    lib.F = F;
    lib.packet_size = packet_size;
    lib.packets.reserve(N * F);
    for (std::size_t n = 0; n < N; ++n) {
        for (std::size_t f = 0; f < F; ++f) lib.packets.push_back(synth_bytes(seed, kLibraryTag, n, f, packet_size));
    }
    return lib;
}

std::vector<DemandVector> demand_vectors(std::size_t K, std::size_t N, const SweepOptions& options) {
    if (N == 0) throw Error(ErrorCode::kRange, "the library needs at least one file");
    std::vector<DemandVector> out;
    switch (options.policy) {
    case DemandPolicy::kExhaustive: {
        std::size_t total = 1;
        for (std::size_t k = 0; k < K; ++k) {
            if (total > kExhaustiveLimit / N) {
                throw Error(ErrorCode::kSweepTooLarge, "N^K exceeds " + std::to_string(kExhaustiveLimit));
            }
            total *= N;
        }
        out.reserve(total);
        DemandVector d(K, 0);
        for (std::size_t i = 0; i < total; ++i) {
            out.push_back(d);
            for (std::size_t k = K; k-- > 0;) {
                if (++d[k] < N) break;
                d[k] = 0;
            }
        }
        break;
    }
    case DemandPolicy::kRandom: {
        std::mt19937_64 gen(options.seed);
        std::uniform_int_distribution<std::size_t> pick(0, N - 1);
        for (std::size_t i = 0; i < options.random_count; ++i) {
            DemandVector d(K);
            for (auto& v : d) v = pick(gen);
            out.push_back(std::move(d));
        }
        break;
    }
    case DemandPolicy::kWorstCaseDistinct: {
        DemandVector d(K);
        for (std::size_t k = 0; k < K; ++k) d[k] = k % N;
        out.push_back(std::move(d));
        break;
    }
    }
    return out;
}

RunReport sweep(const CachingScheme& scheme, std::size_t N, const SweepOptions& options) {
    const std::size_t K = scheme.num_users();
    const std::size_t F = scheme.num_packets();
    const auto demands = demand_vectors(K, N, options);
    const auto library = synthesize_library(N, F, options.packet_size, options.seed);

    std::vector<CacheContents> caches;
    caches.reserve(K);
    for (std::size_t k = 0; k < K; ++k) caches.push_back(place_cache(scheme, k, library));

    RunReport report;
    report.kind = scheme.kind;
    report.params = scheme.params;
    report.field = scheme.options.field;
    report.delivery = scheme.options.delivery;
    report.N = N;
    report.options = options;
    report.results.reserve(demands.size());
    for (const auto& d : demands) {
        DemandResult result;
        result.demands = d;
        const auto broadcast = deliver(scheme, d, library);
        result.transmissions = broadcast.size();
        result.user_pass.assign(K, false);
        for (std::size_t k = 0; k < K; ++k) {
            bool ok = false;
            try {
                const auto file = decode(scheme, k, d, caches[k], broadcast);
                ok = file.size() == F;
                for (std::size_t f = 0; ok && f < F; ++f) ok = file[f] == library.at(d[k], f);
            } catch (const Error&) {
                ok = false;
            }
            result.user_pass[k] = ok;
            result.pass = result.pass && ok;
        }
        report.max_transmissions = std::max(report.max_transmissions, result.transmissions);
        if (!result.pass) ++report.failures;
        if (result.transmissions != scheme.m) report.rate_matches_m = false;
        report.results.push_back(std::move(result));
    }
    report.all_pass = report.failures == 0;
    report.realized_rate = Rational(static_cast<std::int64_t>(report.max_transmissions), static_cast<std::int64_t>(F));
    return report;
}

std::vector<BoundRow> compare_bounds(const RunReport& report, const CachingScheme& scheme) {
    const auto& p = scheme.params;
    const Rational realized = report.realized_rate;
    auto row = [&](std::string name, Rational value) { return BoundRow{std::move(name), true, value, realized - value}; };

    std::vector<BoundRow> rows;
    rows.push_back(row("realized", realized));
    rows.push_back(row("m/F", p.rate));
    rows.push_back(row("colors/F", p.color_rate));
    const Rational M = Rational(static_cast<std::int64_t>(report.N)) * p.cache_fraction;
    rows.push_back(row("cut-set", cutset_bound(p.K, report.N, M)));
    const Rational t = Rational(static_cast<std::int64_t>(p.K)) * p.cache_fraction;
    if (t.denominator() == 1) {
        rows.push_back(row("man", man_rate(p.K, p.cache_fraction)));
    } else {
        rows.push_back(BoundRow{"man", false, Rational(0), Rational(0)});
    }
    return rows;
}

}  // namespace rainbowcc
