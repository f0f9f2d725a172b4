#include "rainbowcc/mapreduce.hpp"

#include "rainbowcc/error.hpp"
#include "rainbowcc/synth.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace rainbowcc {

namespace {

constexpr std::uint32_t kIvTag = 0x4956;

std::size_t segment_length(std::size_t value_size, std::size_t segments) {
    return (value_size + segments - 1) / segments;
}

Packet segment_bytes(const Packet& value, std::size_t segment, std::size_t segments) {
    const std::size_t len = segment_length(value.size(), segments);
    Packet out(len, 0);
    for (std::size_t i = 0; i < len; ++i) {
        const std::size_t src = segment * len + i;
        if (src < value.size()) out[i] = value[src];
    }
    return out;
}

Packet evaluate(const MapReduceInstance& inst, const std::vector<IvTerm>& terms) {
    Packet out;
    for (const auto& t : terms) {
        const auto seg = segment_bytes(inst.iv(t.q, t.file), t.segment, t.segments);
        if (out.size() < seg.size()) out.resize(seg.size(), 0);
        gf256::axpy(out, t.coef, seg);
    }
    return out;
}

std::string describe(const CachingScheme& scheme, const std::vector<IvTerm>& terms) {
    std::string out;
    for (const auto& t : terms) {
        if (!out.empty()) out += " + ";
        if (t.coef != 1) out += std::to_string(t.coef) + "*";
        out += "v[" + std::to_string(t.q + 1) + "," + scheme.universe.packets()[t.file].to_string() + "]";
        if (t.segments > 1) out += "#" + std::to_string(t.segment + 1) + "/" + std::to_string(t.segments);
    }
    return out;
}

std::optional<std::size_t> lowest_holder(const MapReduceInstance& inst, const std::vector<IvTerm>& terms) {
    for (std::size_t h = 0; h < inst.K; ++h) {
        if (std::all_of(terms.begin(), terms.end(), [&](const IvTerm& t) { return inst.holds(h, t.file); })) return h;
    }
    return std::nullopt;
}

/// Scales so the first coefficient is one; pieces equal up to a scalar carry
/// the same information.
std::vector<IvTerm> normalized(std::vector<IvTerm> terms) {
    std::sort(terms.begin(), terms.end(), [](const IvTerm& a, const IvTerm& b) {
        return std::tie(a.q, a.file, a.segment, a.segments) < std::tie(b.q, b.file, b.segment, b.segments);
    });
    if (!terms.empty() && terms.front().coef != 1) {
        const auto inv = gf256::inv(terms.front().coef);
        for (auto& t : terms) t.coef = gf256::mul(t.coef, inv);
    }
    return terms;
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

/// Rows whose span the shuffle must deliver. With a binary [I | 1] matrix any
/// spanning tree of edge vectors e_i + e_j has the same row space, so edges
/// whose two classes sit on one node come first.
std::vector<std::vector<std::uint8_t>> shuffle_rows(const MapReduceInstance& inst, const CachingScheme& scheme) {
    const std::size_t C = scheme.classes.size();
    const bool parity = scheme.options.field == Field::kGF2 && scheme.options.delivery == DeliveryMode::kMAware &&
                        C >= 2 && scheme.m + 1 == C;
    if (!parity) return scheme.P.to_rows();

    auto held_by = [&](std::size_t node, std::size_t c) {
        return std::all_of(scheme.classes[c].begin(), scheme.classes[c].end(),
                           [&](const UserPacket& p) { return inst.holds(node, p.packet); });
    };
    std::vector<std::pair<std::size_t, std::size_t>> local;
    std::vector<std::pair<std::size_t, std::size_t>> other;
    for (std::size_t i = 0; i < C; ++i) {
        for (std::size_t j = i + 1; j < C; ++j) {
            bool together = false;
            for (std::size_t h = 0; h < inst.K && !together; ++h) together = held_by(h, i) && held_by(h, j);
            (together ? local : other).emplace_back(i, j);
        }
    }
    UnionFind uf(C);
    std::vector<std::vector<std::uint8_t>> rows;
    for (const auto* edges : {&local, &other}) {
        for (const auto& [i, j] : *edges) {
            if (!uf.unite(i, j)) continue;
            std::vector<std::uint8_t> row(C, 0);
            row[i] = row[j] = 1;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

/// Splits one row's summands into pieces a single node can compute.
std::vector<std::vector<IvTerm>> decompose(const MapReduceInstance& inst,
                                           const std::vector<std::vector<IvTerm>>& class_terms) {
    std::vector<IvTerm> all;
    for (const auto& ct : class_terms) all.insert(all.end(), ct.begin(), ct.end());
    if (lowest_holder(inst, all)) return {all};

    if (std::all_of(class_terms.begin(), class_terms.end(),
                    [&](const std::vector<IvTerm>& ct) { return lowest_holder(inst, ct).has_value(); })) {
        return class_terms;
    }

    std::vector<std::vector<IvTerm>> pieces;
    std::vector<IvTerm> rest = all;
    while (!rest.empty()) {
        std::size_t best = inst.K;
        std::size_t best_count = 0;
        for (std::size_t h = 0; h < inst.K; ++h) {
            const auto count = static_cast<std::size_t>(
                std::count_if(rest.begin(), rest.end(), [&](const IvTerm& t) { return inst.holds(h, t.file); }));
            if (count > best_count) {
                best = h;
                best_count = count;
            }
        }
        if (best == inst.K) {
            throw Error(ErrorCode::kInfeasiblePiece,
                        "v[" + std::to_string(rest.front().q + 1) + "," + std::to_string(rest.front().file + 1) +
                            "] is held by no node");
        }
        std::vector<IvTerm> piece;
        std::vector<IvTerm> left;
        for (const auto& t : rest) (inst.holds(best, t.file) ? piece : left).push_back(t);
        pieces.push_back(std::move(piece));
        rest = std::move(left);
    }
    return pieces;
}

ShuffleMessage make_message(const MapReduceInstance& inst, const CachingScheme& scheme, std::size_t sender,
                            std::vector<IvTerm> terms, Rational size) {
    for (const auto& t : terms) {
        if (!inst.holds(sender, t.file)) {
            throw Error(ErrorCode::kInfeasiblePiece, "node " + std::to_string(sender + 1) + " cannot compute " +
                                                         describe(scheme, {t}));
        }
    }
    ShuffleMessage msg;
    msg.sender = sender;
    msg.payload = evaluate(inst, terms);
    msg.description = describe(scheme, terms);
    msg.terms = std::move(terms);
    msg.size = size;
    return msg;
}

void check_same_shape(const MapReduceInstance& inst, const CachingScheme& scheme) {
    if (inst.K != scheme.num_users() || inst.N != scheme.num_packets()) {
        throw Error(ErrorCode::kDimension, "instance and scheme disagree on K or N");
    }
}

void finish(ShufflePlan& plan, const MapReduceInstance& inst) {
    plan.m_prime = plan.messages.size();
    Rational total(0);
    for (const auto& msg : plan.messages) total += msg.size;
    plan.load = total / Rational(static_cast<std::int64_t>(inst.Q * inst.N));
    plan.computation_load = inst.computation_load();
}

}  // namespace

bool MapReduceInstance::holds(std::size_t node, std::size_t file) const {
    const auto& files = assignment[node];
    return std::binary_search(files.begin(), files.end(), file);
}

Rational MapReduceInstance::computation_load() const {
    std::size_t total = 0;
    for (const auto& files : assignment) total += files.size();
    return Rational(static_cast<std::int64_t>(total), static_cast<std::int64_t>(N));
}

MapReduceInstance build_instance(const CachingScheme& scheme, std::size_t Q, std::size_t value_size,
                                 std::uint64_t seed) {
    const std::size_t K = scheme.num_users();
    if (Q == 0 || Q % K != 0) {
        throw Error(ErrorCode::kDivisibility,
                    "Q=" + std::to_string(Q) + " is not a positive multiple of K=" + std::to_string(K));
    }
    if (value_size == 0) throw Error(ErrorCode::kRange, "intermediate values need at least one byte");
    MapReduceInstance inst;
    inst.K = K;
    inst.N = scheme.num_packets();
    inst.Q = Q;
    inst.value_size = value_size;
    inst.seed = seed;
    inst.assignment = scheme.placement;
    for (auto& files : inst.assignment) std::sort(files.begin(), files.end());
    inst.reduce_map.assign(K, {});
    for (std::size_t q = 0; q < Q; ++q) inst.reduce_map[q % K].push_back(q);
    inst.ivs.reserve(Q * inst.N);
    for (std::size_t q = 0; q < Q; ++q) {
        for (std::size_t n = 0; n < inst.N; ++n) inst.ivs.push_back(synth_bytes(seed, kIvTag, q, n, value_size));
    }
    return inst;
}

std::string_view to_string(ShuffleMode mode) {
    return mode == ShuffleMode::kRainbow ? "rainbow" : "multicast";
}

ShufflePlan multicast_shuffle(const MapReduceInstance& inst, const CachingScheme& scheme) {
    check_same_shape(inst, scheme);
    ShufflePlan plan;
    plan.mode = ShuffleMode::kMulticast;
    const std::size_t layers = inst.Q / inst.K;
    for (std::size_t layer = 0; layer < layers; ++layer) {
        for (const auto& cls : scheme.classes) {
            const std::size_t g = cls.size();
            auto term_of = [&](const UserPacket& p, std::size_t segment, std::size_t segments) {
                return IvTerm{inst.reduce_map[p.user][layer], p.packet, segment, segments, 1};
            };
            if (g == 1) {
                std::vector<IvTerm> terms{term_of(cls.front(), 0, 1)};
                auto sender = lowest_holder(inst, terms);
                if (!sender) {
                    throw Error(ErrorCode::kInfeasiblePiece, describe(scheme, terms) + " is held by no node");
                }
                plan.messages.push_back(make_message(inst, scheme, *sender, std::move(terms), Rational(1)));
                continue;
            }
            const std::size_t len = segment_length(inst.value_size, g - 1);
            plan.padding_bytes += g * ((g - 1) * len - inst.value_size);
            for (std::size_t i = 0; i < g; ++i) {
                std::vector<IvTerm> terms;
                for (std::size_t j = 0; j < g; ++j) {
                    if (j == i) continue;
                    // Sender i carries slice (rank of i among the members other than j).
                    const std::size_t slice = i < j ? i : i - 1;
                    terms.push_back(term_of(cls[j], slice, g - 1));
                }
                plan.messages.push_back(make_message(inst, scheme, cls[i].user, std::move(terms),
                                                     Rational(1, static_cast<std::int64_t>(g - 1))));
            }
        }
    }
    finish(plan, inst);
    plan.multicast_load = plan.load;
    return plan;
}

ShufflePlan synthesize_shuffle(const MapReduceInstance& inst, const CachingScheme& scheme) {
    check_same_shape(inst, scheme);
    ShufflePlan plan;
    plan.mode = ShuffleMode::kRainbow;
    const auto rows = shuffle_rows(inst, scheme);
    const std::size_t layers = inst.Q / inst.K;
    std::set<std::vector<IvTerm>> seen;
    for (std::size_t layer = 0; layer < layers; ++layer) {
        for (const auto& row : rows) {
            std::vector<std::vector<IvTerm>> class_terms;
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (row[c] == 0) continue;
                std::vector<IvTerm> ct;
                for (const auto& p : scheme.classes[c]) {
                    ct.push_back(IvTerm{inst.reduce_map[p.user][layer], p.packet, 0, 1, row[c]});
                }
                class_terms.push_back(std::move(ct));
            }
            for (auto& piece : decompose(inst, class_terms)) {
                auto key = normalized(piece);
                if (!seen.insert(key).second) continue;
                const auto sender = *lowest_holder(inst, key);
                plan.messages.push_back(make_message(inst, scheme, sender, std::move(key), Rational(1)));
            }
        }
    }
    finish(plan, inst);

    auto multicast = multicast_shuffle(inst, scheme);
    if (!plan.messages.empty() && plan.load >= multicast.load) return multicast;
    plan.multicast_load = multicast.load;
    return plan;
}

ReduceReport run_reduce(const MapReduceInstance& inst, const ShufflePlan& plan) {
    ReduceReport report;
    using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
    for (std::size_t h = 0; h < inst.K; ++h) {
        std::map<Key, std::size_t> vars;
        std::size_t width = inst.value_size;
        for (const auto& msg : plan.messages) width = std::max(width, msg.payload.size());
        for (const auto& msg : plan.messages) {
            for (const auto& t : msg.terms) {
                if (!inst.holds(h, t.file)) vars.emplace(Key{t.q, t.file, t.segment, t.segments}, vars.size());
            }
        }
        PacketSystem system(vars.size(), width);
        for (const auto& msg : plan.messages) {
            Packet rhs = msg.payload;
            std::vector<std::pair<std::size_t, std::uint8_t>> terms;
            for (const auto& t : msg.terms) {
                if (inst.holds(h, t.file)) {
                    const auto seg = segment_bytes(inst.iv(t.q, t.file), t.segment, t.segments);
                    if (rhs.size() < seg.size()) rhs.resize(seg.size(), 0);
                    gf256::axpy(rhs, t.coef, seg);
                } else {
                    terms.emplace_back(vars.at(Key{t.q, t.file, t.segment, t.segments}), t.coef);
                }
            }
            if (!terms.empty()) system.add_equation(terms, std::move(rhs));
        }
        const auto solved = system.solve();

        NodeReport node;
        node.node = h;
        for (auto q : inst.reduce_map[h]) {
            for (std::size_t file = 0; file < inst.N; ++file) {
                if (inst.holds(h, file)) continue;
                ++node.needed;
                const auto& truth = inst.iv(q, file);
                std::optional<Packet> value;
                if (auto it = vars.find(Key{q, file, 0, 1}); it != vars.end() && solved[it->second]) {
                    value = Packet(solved[it->second]->begin(), solved[it->second]->begin() + truth.size());
                } else {
                    // Reassemble from slices of one split.
                    for (const auto& [key, id] : vars) {
                        const auto [kq, kf, ks, kn] = key;
                        if (kq != q || kf != file || kn < 2 || ks != 0) continue;
                        Packet joined;
                        bool complete = true;
                        for (std::size_t s = 0; s < kn && complete; ++s) {
                            auto sit = vars.find(Key{q, file, s, kn});
                            if (sit == vars.end() || !solved[sit->second]) {
                                complete = false;
                                break;
                            }
                            const auto& part = *solved[sit->second];
                            joined.insert(joined.end(), part.begin(),
                                          part.begin() + static_cast<std::ptrdiff_t>(segment_length(inst.value_size, kn)));
                        }
                        if (complete) {
                            joined.resize(truth.size());
                            value = std::move(joined);
                            break;
                        }
                    }
                }
                if (value && *value == truth) ++node.recovered;
            }
        }
        node.pass = node.recovered == node.needed;
        report.pass = report.pass && node.pass;
        report.nodes.push_back(node);
    }
    return report;
}

Rational cdc_bound(const Rational& r, std::size_t K) {
    const Rational k(static_cast<std::int64_t>(K));
    if (r <= 0 || r > k) throw Error(ErrorCode::kRange, "computation load must lie in (0, K]");
    return (Rational(1) / r) * (Rational(1) - r / k);
}

Rational multicast_baseline_load(const CachingScheme& scheme, std::size_t Q) {
    const std::size_t K = scheme.num_users();
    if (Q == 0 || Q % K != 0) throw Error(ErrorCode::kDivisibility, "Q must be a positive multiple of K");
    Rational per_layer(0);
    for (const auto& cls : scheme.classes) {
        const auto g = static_cast<std::int64_t>(cls.size());
        per_layer += g == 1 ? Rational(1) : Rational(g, g - 1);
    }
    const auto layers = static_cast<std::int64_t>(Q / K);
    return per_layer * Rational(layers) / Rational(static_cast<std::int64_t>(Q * scheme.num_packets()));
}

}  // namespace rainbowcc
