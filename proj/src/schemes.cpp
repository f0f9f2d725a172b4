#include "rainbowcc/schemes.hpp"

#include "rainbowcc/error.hpp"

#include <algorithm>
#include <set>

namespace rainbowcc {

std::string_view to_string(DeliveryMode mode) {
    return mode == DeliveryMode::kMAware ? "m-aware" : "per-color";
}

DeliveryMode delivery_mode_from_string(std::string_view name) {
    if (name == "m-aware") return DeliveryMode::kMAware;
    if (name == "per-color") return DeliveryMode::kPerColor;
    throw Error(ErrorCode::kParse, "unknown delivery mode '" + std::string(name) + "'");
}

std::optional<int> CachingScheme::color_at(std::size_t user, std::size_t packet) const {
    const int c = pair_color[user * num_packets() + packet];
    if (c < 0) return std::nullopt;
    return c;
}

MTable compute_m_table(std::size_t num_users, std::size_t num_packets,
                       std::span<const int> pair_color, std::size_t num_colors,
                       SchemeOptions options) {
    MTable out;
    out.per_pair.assign(num_users * num_packets, 0);
    for (std::size_t a = 0; a < num_users; ++a) {
        // Colors of classes user a cannot rebuild from its own cache.
        std::set<int> blocking;
        for (std::size_t b = 0; b < num_packets; ++b) {
            if (pair_color[a * num_packets + b] < 0) continue;
            for (std::size_t a2 = 0; a2 < num_users; ++a2) {
                const int c = pair_color[a2 * num_packets + b];
                if (c >= 0) blocking.insert(c);
            }
        }
        for (std::size_t b = 0; b < num_packets; ++b) {
            if (pair_color[a * num_packets + b] >= 0) {
                out.per_pair[a * num_packets + b] = blocking.size();
                out.max_local = std::max(out.max_local, blocking.size());
            }
        }
    }
    if (options.delivery == DeliveryMode::kPerColor) {
        out.m = num_colors;
    } else if (options.field == Field::kGF2) {
        out.m = num_colors == 0 ? 0 : std::max(out.max_local, num_colors - 1);
    } else {
        out.m = out.max_local;
    }
    return out;
}

std::optional<std::string> find_class_violation(const CachingScheme& scheme) {
    for (std::size_t c = 0; c < scheme.classes.size(); ++c) {
        const auto& cls = scheme.classes[c];
        for (std::size_t i = 0; i < cls.size(); ++i) {
            for (std::size_t j = 0; j < cls.size(); ++j) {
                if (i == j) continue;
                const auto& p = cls[i];
                const auto& q = cls[j];
                if (p.user == q.user || p.packet == q.packet) {
                    return "class " + std::to_string(c) + " repeats a user or packet";
                }
                if (scheme.color_at(p.user, q.packet)) {
                    return "class " + std::to_string(c) + ": cross pair (user " +
                           std::to_string(p.user) + ", packet " + std::to_string(q.packet) +
                           ") is colored";
                }
            }
        }
    }
    return std::nullopt;
}

CachingScheme build_scheme_from_pairs(const Universe& universe, const Coloring& coloring,
                                      std::vector<int> pair_color, SchemeOptions options) {
    const std::size_t K = universe.num_users();
    const std::size_t F = universe.num_packets();
    if (pair_color.size() != K * F) {
        throw Error(ErrorCode::kDimension, "pair coloring must have K·F entries");
    }
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < F; ++b) {
            const bool colored = coloring.contains(universe.pair_element(a, b));
            if (colored != (pair_color[a * F + b] >= 0)) {
                throw Error(ErrorCode::kRainbowViolation,
                            "pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                ") disagrees with the colored subset");
            }
        }
    }

    // Dense pair-color ids in order of first appearance by raw id.
    std::map<int, int> dense;
    for (int c : pair_color) {
        if (c >= 0) dense.emplace(c, 0);
    }
    int next = 0;
    for (auto& [raw, d] : dense) d = next++;
    for (int& c : pair_color) {
        if (c >= 0) c = dense.at(c);
    }

    CachingScheme s;
    s.universe = universe;
    s.coloring = coloring;
    s.pair_color = std::move(pair_color);
    s.options = options;
    s.classes.assign(dense.size(), {});
    s.placement.assign(K, {});
    std::size_t uncached = 0;
    for (std::size_t a = 0; a < K; ++a) {
        std::size_t count = 0;
        for (std::size_t b = 0; b < F; ++b) {
            const int c = s.pair_color[a * F + b];
            if (c < 0) {
                s.placement[a].push_back(b);
            } else {
                s.classes[static_cast<std::size_t>(c)].push_back({a, b});
                ++count;
            }
        }
        if (a == 0) {
            uncached = count;
        } else if (count != uncached) {
            throw Error(ErrorCode::kNonuniformCache,
                        "user 0 misses " + std::to_string(uncached) + " packets but user " +
                            std::to_string(a) + " misses " + std::to_string(count));
        }
    }
    if (auto violation = find_class_violation(s)) {
        throw Error(ErrorCode::kRainbowViolation, *violation);
    }

    const auto table = compute_m_table(K, F, s.pair_color, s.classes.size(), options);
    s.m_table = table.per_pair;
    s.max_local_m = table.max_local;
    s.m = table.m;
    s.P = options.delivery == DeliveryMode::kPerColor ? Matrix::identity(options.field, s.classes.size())
                                                      : mds_matrix(s.m, s.classes.size(), options.field);

    auto& p = s.params;
    p.K = K;
    p.F = F;
    p.uncached = uncached;
    p.cache_fraction = Rational(1) - Rational(static_cast<std::int64_t>(uncached), static_cast<std::int64_t>(F));
    p.num_colors = s.classes.size();
    p.m = s.m;
    p.rate = Rational(static_cast<std::int64_t>(s.m), static_cast<std::int64_t>(F));
    p.color_rate = Rational(static_cast<std::int64_t>(s.classes.size()), static_cast<std::int64_t>(F));
    return s;
}

CachingScheme build_scheme(const Universe& universe, const Coloring& coloring, const Sigma& sigma,
                           SchemeOptions options) {
    const auto report = validate_rainbow(universe, coloring, sigma);
    if (!report.pass) {
        std::string inst;
        for (auto idx : report.violation) inst += " " + universe.combined()[idx].to_string();
        throw Error(ErrorCode::kRainbowViolation, sigma.name() + " instance not rainbow:" + inst);
    }
    return build_scheme_lifted(universe, coloring, options);
}

CachingScheme build_scheme_lifted(const Universe& universe, const Coloring& coloring, SchemeOptions options) {
    const std::size_t K = universe.num_users();
    const std::size_t F = universe.num_packets();
    std::vector<int> pair_color(K * F, -1);
    for (std::size_t a = 0; a < K; ++a) {
        for (std::size_t b = 0; b < F; ++b) {
            if (auto c = coloring.color_of(universe.pair_element(a, b))) pair_color[a * F + b] = *c;
        }
    }
    return build_scheme_from_pairs(universe, coloring, std::move(pair_color), options);
}

// --- delivery ---------------------------------------------------------------

std::vector<std::vector<Term>> transmission_terms(const CachingScheme& scheme) {
    std::vector<std::vector<Term>> rows(scheme.P.rows());
    for (std::size_t r = 0; r < scheme.P.rows(); ++r) {
        for (std::size_t c = 0; c < scheme.P.cols(); ++c) {
            const auto coef = scheme.P.at(r, c);
            if (coef == 0) continue;
            for (const auto& pair : scheme.classes[c]) rows[r].push_back({pair, coef});
        }
    }
    return rows;
}

namespace {

void check_demands(const CachingScheme& scheme, const DemandVector& demands, std::size_t N) {
    if (demands.size() != scheme.num_users()) {
        throw Error(ErrorCode::kDimension, "demand vector needs one entry per user");
    }
    for (auto d : demands) {
        if (d >= N) throw Error(ErrorCode::kRange, "demand " + std::to_string(d) + " outside library");
    }
}

std::vector<Packet> class_values(const CachingScheme& scheme, const DemandVector& demands,
                                 const Library& library) {
    std::vector<Packet> values(scheme.classes.size(), Packet(library.packet_size, 0));
    for (std::size_t c = 0; c < scheme.classes.size(); ++c) {
        for (const auto& pair : scheme.classes[c]) {
            gf256::axpy(values[c], 1, library.at(demands[pair.user], pair.packet));
        }
    }
    return values;
}

}  // namespace

std::vector<Packet> deliver(const CachingScheme& scheme, const DemandVector& demands,
                            const Library& library) {
    if (library.F != scheme.num_packets() || library.packets.size() != library.N * library.F) {
        throw Error(ErrorCode::kDimension, "library shape does not match the scheme");
    }
    check_demands(scheme, demands, library.N);
    const auto values = class_values(scheme, demands, library);
    return combine(scheme.P, values);
}

CacheContents place_cache(const CachingScheme& scheme, std::size_t user, const Library& library) {
    if (library.F != scheme.num_packets()) {
        throw Error(ErrorCode::kDimension, "library shape does not match the scheme");
    }
    CacheContents cache;
    cache.user = user;
    for (auto b : scheme.placement.at(user)) {
        auto& per_file = cache.subfiles[b];
        for (std::size_t n = 0; n < library.N; ++n) per_file.push_back(library.at(n, b));
    }
    return cache;
}

std::vector<Packet> decode(const CachingScheme& scheme, std::size_t user, const DemandVector& demands,
                           const CacheContents& cache, std::span<const Packet> broadcast) {
    const std::size_t F = scheme.num_packets();
    if (user >= scheme.num_users() || cache.user != user) {
        throw Error(ErrorCode::kDimension, "cache does not belong to this user");
    }
    const auto& cached = scheme.placement[user];
    if (cache.subfiles.size() != cached.size() ||
        !std::all_of(cached.begin(), cached.end(), [&](auto b) { return cache.subfiles.count(b); })) {
        throw Error(ErrorCode::kDimension, "cache contents inconsistent with placement");
    }
    if (broadcast.size() != scheme.P.rows()) {
        throw Error(ErrorCode::kUndecodable, "expected " + std::to_string(scheme.P.rows()) +
                                                 " broadcast packets, got " +
                                                 std::to_string(broadcast.size()));
    }
    if (demands.size() != scheme.num_users()) {
        throw Error(ErrorCode::kDimension, "demand vector needs one entry per user");
    }
    std::size_t packet_size = 0;
    if (!broadcast.empty()) {
        packet_size = broadcast.front().size();
    } else if (!cache.subfiles.empty()) {
        packet_size = cache.subfiles.begin()->second.front().size();
    }

    auto known_subfile = [&](std::size_t file, std::size_t packet) -> const Packet* {
        auto it = cache.subfiles.find(packet);
        if (it == cache.subfiles.end() || file >= it->second.size()) return nullptr;
        return &it->second[file];
    };

    // Classes whose every summand is cached can be rebuilt locally.
    std::vector<std::optional<Packet>> known(scheme.classes.size());
    for (std::size_t c = 0; c < scheme.classes.size(); ++c) {
        Packet value(packet_size, 0);
        bool complete = true;
        for (const auto& pair : scheme.classes[c]) {
            const Packet* sub = known_subfile(demands[pair.user], pair.packet);
            if (!sub) {
                complete = false;
                break;
            }
            gf256::axpy(value, 1, *sub);
        }
        if (complete) known[c] = std::move(value);
    }
    std::vector<Packet> solved;
    try {
        solved = solve_submatrix(scheme.P, known, broadcast);
    } catch (const Error& e) {
        throw Error(ErrorCode::kUndecodable, "user " + std::to_string(user) + ": " + e.what());
    }
    std::vector<Packet> class_value(scheme.classes.size());
    for (std::size_t c = 0, u = 0; c < scheme.classes.size(); ++c) {
        class_value[c] = known[c] ? *known[c] : solved[u++];
    }

    const std::size_t wanted_file = demands[user];
    std::vector<Packet> file(F);
    for (std::size_t b = 0; b < F; ++b) {
        const auto color = scheme.color_at(user, b);
        if (!color) {
            const Packet* sub = known_subfile(wanted_file, b);
            if (!sub) throw Error(ErrorCode::kUndecodable, "cached packet missing");
            file[b] = *sub;
            continue;
        }
        Packet value = class_value[static_cast<std::size_t>(*color)];
        for (const auto& pair : scheme.classes[static_cast<std::size_t>(*color)]) {
            if (pair.user == user && pair.packet == b) continue;
            const Packet* sub = known_subfile(demands[pair.user], pair.packet);
            if (!sub) {
                throw Error(ErrorCode::kUndecodable, "user " + std::to_string(user) +
                                                         " lacks packet " + std::to_string(pair.packet) +
                                                         " needed to cancel its class");
            }
            gf256::axpy(value, 1, *sub);
        }
        file[b] = std::move(value);
    }
    return file;
}

Rational cutset_bound(std::size_t K, std::size_t N, const Rational& M) {
    Rational best(0);
    const std::size_t top = std::min(N, K);
    for (std::size_t s = 1; s <= top; ++s) {
        const auto si = static_cast<std::int64_t>(s);
        const auto floor_ns = static_cast<std::int64_t>(N / s);
        const Rational term = Rational(si) - Rational(si, floor_ns) * M;
        best = std::max(best, term);
    }
    return best;
}

Rational man_rate(std::size_t K, const Rational& cache_fraction) {
    const Rational k(static_cast<std::int64_t>(K));
    return k * (Rational(1) - cache_fraction) / (Rational(1) + k * cache_fraction);
}

}  // namespace rainbowcc
