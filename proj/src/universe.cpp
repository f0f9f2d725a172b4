#include "rainbowcc/universe.hpp"

#include "rainbowcc/error.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_set>

namespace rainbowcc {

Element Element::integer(std::int64_t v) {
    Element e;
    e.value_ = v;
    return e;
}

Element Element::set(std::vector<Label> labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw Error(ErrorCode::kRange, "set element with duplicate labels");
    }
    Element e;
    e.value_ = std::move(labels);
    return e;
}

Element Element::set_of(std::initializer_list<std::int64_t> values) {
    return set_of(std::span<const std::int64_t>(values.begin(), values.size()));
}

Element Element::set_of(std::span<const std::int64_t> values) {
    std::vector<Label> labels;
    labels.reserve(values.size());
    for (auto v : values) labels.push_back(Label::plain(v));
    return set(std::move(labels));
}

Element Element::pair(std::int64_t position, std::int64_t symbol) {
    if (position < 1 || symbol < 0) {
        throw Error(ErrorCode::kRange, "pair element needs position >= 1 and symbol >= 0");
    }
    Element e;
    e.value_ = PairValue{position, symbol};
    return e;
}

std::int64_t Element::as_integer() const {
    if (kind() != Kind::kInteger) throw Error(ErrorCode::kKindMismatch, "not an integer: " + to_string());
    return std::get<std::int64_t>(value_);
}

const std::vector<Label>& Element::as_set() const {
    if (kind() != Kind::kSet) throw Error(ErrorCode::kKindMismatch, "not a set: " + to_string());
    return std::get<std::vector<Label>>(value_);
}

PairValue Element::as_pair() const {
    if (kind() != Kind::kPair) throw Error(ErrorCode::kKindMismatch, "not a pair: " + to_string());
    return std::get<PairValue>(value_);
}

std::vector<Label> Element::as_label_set() const {
    switch (kind()) {
    case Kind::kInteger: return {Label::plain(std::get<std::int64_t>(value_))};
    case Kind::kPair: {
        auto p = std::get<PairValue>(value_);
        return {Label::paired(p.position, p.symbol)};
    }
    case Kind::kSet: return std::get<std::vector<Label>>(value_);
    }
    return {};
}

std::string Element::to_string() const {
    std::ostringstream os;
    switch (kind()) {
    case Kind::kInteger: os << std::get<std::int64_t>(value_); break;
    case Kind::kPair: {
        auto p = std::get<PairValue>(value_);
        os << "(" << p.position << "," << p.symbol << ")";
        break;
    }
    case Kind::kSet: {
        os << "{";
        bool first = true;
        for (const auto& l : std::get<std::vector<Label>>(value_)) {
            if (!first) os << ",";
            first = false;
            if (l.is_pair()) {
                os << "(" << l.value << "," << l.symbol << ")";
            } else {
                os << l.value;
            }
        }
        os << "}";
        break;
    }
    }
    return os.str();
}

std::string_view to_string(CombineOp op) {
    switch (op) {
    case CombineOp::kSetUnion: return "set_union";
    case CombineOp::kIntegerSum: return "integer_sum";
    case CombineOp::kCartesianPair: return "cartesian_pair";
    }
    return "set_union";
}

CombineOp combine_op_from_string(std::string_view name) {
    if (name == "set_union") return CombineOp::kSetUnion;
    if (name == "integer_sum") return CombineOp::kIntegerSum;
    if (name == "cartesian_pair") return CombineOp::kCartesianPair;
    throw Error(ErrorCode::kParse, "unknown combine op '" + std::string(name) + "'");
}

Element combine(const Element& a, const Element& b, CombineOp op, std::size_t a_index,
                std::size_t b_index) {
    switch (op) {
    case CombineOp::kIntegerSum:
        if (a.kind() != Element::Kind::kInteger || b.kind() != Element::Kind::kInteger) {
            throw Error(ErrorCode::kKindMismatch,
                        "INTEGER_SUM of " + a.to_string() + " and " + b.to_string());
        }
        return Element::integer(a.as_integer() + b.as_integer());
    case CombineOp::kSetUnion: {
        if (a.kind() != Element::Kind::kSet && b.kind() != Element::Kind::kSet) {
            throw Error(ErrorCode::kKindMismatch,
                        "SET_UNION needs a set operand: " + a.to_string() + ", " + b.to_string());
        }
        auto left = a.as_label_set();
        auto right = b.as_label_set();
        std::vector<Label> merged;
        merged.reserve(left.size() + right.size());
        std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                       std::back_inserter(merged));
        return Element::set(std::move(merged));
    }
    case CombineOp::kCartesianPair:
        return Element::pair(static_cast<std::int64_t>(a_index) + 1,
                             static_cast<std::int64_t>(b_index) + 1);
    }
    throw Error(ErrorCode::kKindMismatch, "unknown combine op");
}

std::optional<std::size_t> Universe::find(const Element& element) const {
    auto it = std::lower_bound(combined_.begin(), combined_.end(), element);
    if (it == combined_.end() || !(*it == element)) return std::nullopt;
    return static_cast<std::size_t>(it - combined_.begin());
}

std::vector<std::size_t> Universe::indices_of(std::span<const Element> elements) const {
    std::vector<std::size_t> out;
    out.reserve(elements.size());
    for (const auto& e : elements) {
        auto idx = find(e);
        if (!idx) throw Error(ErrorCode::kRange, "element " + e.to_string() + " is not in C");
        out.push_back(*idx);
    }
    return out;
}

Universe build_universe(std::vector<Element> users, std::vector<Element> packets, CombineOp op) {
    if (users.empty() || packets.empty()) {
        throw Error(ErrorCode::kEmptyFamily, "families A and B must be nonempty");
    }
    Universe u;
    u.op_ = op;
    std::vector<Element> per_pair;
    per_pair.reserve(users.size() * packets.size());
    for (std::size_t a = 0; a < users.size(); ++a) {
        for (std::size_t b = 0; b < packets.size(); ++b) {
            per_pair.push_back(combine(users[a], packets[b], op, a, b));
        }
    }
    u.combined_ = per_pair;
    std::sort(u.combined_.begin(), u.combined_.end());
    u.combined_.erase(std::unique(u.combined_.begin(), u.combined_.end()), u.combined_.end());
    u.users_ = std::move(users);
    u.packets_ = std::move(packets);
    u.pair_index_.reserve(per_pair.size());
    for (const auto& e : per_pair) u.pair_index_.push_back(*u.find(e));
    return u;
}

// --- σ-structures -----------------------------------------------------------

Sigma Sigma::three_ap() {
    Sigma s;
    s.kind_ = Kind::kThreeAp;
    s.arity_ = 3;
    return s;
}

Sigma Sigma::three_ap_endpoints() {
    Sigma s;
    s.kind_ = Kind::kThreeApEndpoints;
    s.arity_ = 2;
    return s;
}

Sigma Sigma::subset_rainbow(std::size_t threshold) {
    Sigma s;
    s.kind_ = Kind::kSubsetRainbow;
    s.threshold_ = threshold;
    s.arity_ = 3;
    return s;
}

Sigma Sigma::pda_strong_edge() {
    Sigma s;
    s.kind_ = Kind::kPdaStrongEdge;
    s.arity_ = 3;
    return s;
}

Sigma Sigma::custom(std::size_t arity, Predicate predicate, std::string name) {
    if (arity < 2 || arity > kMaxCustomArity) {
        throw Error(ErrorCode::kRange, "custom σ arity must be in [2, 4]");
    }
    Sigma s;
    s.kind_ = Kind::kCustom;
    s.arity_ = arity;
    s.predicate_ = std::move(predicate);
    s.custom_name_ = std::move(name);
    return s;
}

std::string Sigma::name() const {
    switch (kind_) {
    case Kind::kThreeAp: return "three-ap";
    case Kind::kThreeApEndpoints: return "three-ap-endpoints";
    case Kind::kSubsetRainbow: return "subset:" + std::to_string(threshold_);
    case Kind::kPdaStrongEdge: return "pda-strong-edge";
    case Kind::kCustom: return custom_name_;
    }
    return "unknown";
}

Sigma sigma_from_string(std::string_view name) {
    if (name == "three-ap") return Sigma::three_ap();
    if (name == "three-ap-endpoints") return Sigma::three_ap_endpoints();
    if (name == "pda-strong-edge") return Sigma::pda_strong_edge();
    if (name.substr(0, 7) == "subset:") {
        try {
            return Sigma::subset_rainbow(std::stoul(std::string(name.substr(7))));
        } catch (const std::logic_error&) {
        }
    }
    throw Error(ErrorCode::kParse, "unknown sigma '" + std::string(name) + "'");
}

namespace {

void require_kind(const Universe& u, std::span<const std::size_t> elems, Element::Kind kind,
                  const Sigma& sigma) {
    for (auto idx : elems) {
        if (idx >= u.combined().size()) {
            throw Error(ErrorCode::kRange, "element index out of range");
        }
        if (u.combined()[idx].kind() != kind) {
            throw Error(ErrorCode::kKindMismatch,
                        sigma.name() + " does not apply to " + u.combined()[idx].to_string());
        }
    }
}

std::vector<std::size_t> sorted_unique(std::span<const std::size_t> elems) {
    std::vector<std::size_t> v(elems.begin(), elems.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::size_t intersection_size(const std::vector<Label>& x, const std::vector<Label>& y) {
    std::size_t n = 0;
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++n;
            ++i;
            ++j;
        }
    }
    return n;
}

bool subset_of_union(const std::vector<Label>& x, const std::vector<Label>& y,
                     const std::vector<Label>& z) {
    for (const auto& l : x) {
        if (!std::binary_search(y.begin(), y.end(), l) && !std::binary_search(z.begin(), z.end(), l)) {
            return false;
        }
    }
    return true;
}

std::vector<SigmaInstance> enumerate_three_ap(const Universe& u, std::span<const std::size_t> elems,
                                              bool endpoints_only) {
    std::map<std::int64_t, std::size_t> by_value;
    for (auto idx : elems) by_value.emplace(u.combined()[idx].as_integer(), idx);
    std::vector<SigmaInstance> out;
    for (auto x = by_value.begin(); x != by_value.end(); ++x) {
        for (auto y = std::next(x); y != by_value.end(); ++y) {
            const std::int64_t z_value = 2 * y->first - x->first;
            auto z = by_value.find(z_value);
            if (z == by_value.end()) continue;
            if (endpoints_only) {
                out.push_back({x->second, z->second});
            } else {
                out.push_back({x->second, y->second, z->second});
            }
        }
    }
    return out;
}

std::vector<SigmaInstance> enumerate_subset(const Universe& u, std::span<const std::size_t> elems,
                                            std::size_t threshold) {
    const auto& c = u.combined();
    std::vector<SigmaInstance> out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (intersection_size(c[elems[i]].as_set(), c[elems[j]].as_set()) >= threshold) {
                out.push_back({elems[i], elems[j]});
            }
        }
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        const auto& x = c[elems[i]].as_set();
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            const auto& y = c[elems[j]].as_set();
            for (std::size_t k = j + 1; k < elems.size(); ++k) {
                const auto& z = c[elems[k]].as_set();
                if (subset_of_union(x, y, z) || subset_of_union(y, x, z) || subset_of_union(z, x, y)) {
                    out.push_back({elems[i], elems[j], elems[k]});
                }
            }
        }
    }
    return out;
}

std::vector<SigmaInstance> enumerate_strong_edge(const Universe& u,
                                                 std::span<const std::size_t> elems) {
    const auto& c = u.combined();
    std::vector<SigmaInstance> out;
    for (std::size_t i = 0; i < elems.size(); ++i) {
        auto p = c[elems[i]].as_pair();
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            auto q = c[elems[j]].as_pair();
            if (p.position == q.position || p.symbol == q.symbol) out.push_back({elems[i], elems[j]});
        }
    }
    for (std::size_t i = 0; i < elems.size(); ++i) {
        auto p = c[elems[i]].as_pair();
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            auto q = c[elems[j]].as_pair();
            for (std::size_t k = j + 1; k < elems.size(); ++k) {
                auto r = c[elems[k]].as_pair();
                std::set<std::int64_t> positions{p.position, q.position, r.position};
                std::set<std::int64_t> symbols{p.symbol, q.symbol, r.symbol};
                if (positions.size() <= 2 && symbols.size() <= 2) {
                    out.push_back({elems[i], elems[j], elems[k]});
                }
            }
        }
    }
    return out;
}

void enumerate_custom_rec(const Universe& u, std::span<const std::size_t> elems, const Sigma& sigma,
                          std::size_t start, SigmaInstance& current, std::vector<SigmaInstance>& out) {
    if (current.size() == sigma.arity()) {
        std::vector<Element> tuple;
        tuple.reserve(current.size());
        for (auto idx : current) tuple.push_back(u.combined()[idx]);
        if (sigma.predicate()(tuple)) out.push_back(current);
        return;
    }
    for (std::size_t i = start; i < elems.size(); ++i) {
        current.push_back(elems[i]);
        enumerate_custom_rec(u, elems, sigma, i + 1, current, out);
        current.pop_back();
    }
}

}  // namespace

std::vector<SigmaInstance> enumerate_sigma(const Universe& universe,
                                           std::span<const std::size_t> restricted_to,
                                           const Sigma& sigma) {
    const auto elems = sorted_unique(restricted_to);
    switch (sigma.kind()) {
    case Sigma::Kind::kThreeAp:
    case Sigma::Kind::kThreeApEndpoints:
        require_kind(universe, elems, Element::Kind::kInteger, sigma);
        return enumerate_three_ap(universe, elems, sigma.kind() == Sigma::Kind::kThreeApEndpoints);
    case Sigma::Kind::kSubsetRainbow:
        require_kind(universe, elems, Element::Kind::kSet, sigma);
        return enumerate_subset(universe, elems, sigma.threshold());
    case Sigma::Kind::kPdaStrongEdge:
        require_kind(universe, elems, Element::Kind::kPair, sigma);
        return enumerate_strong_edge(universe, elems);
    case Sigma::Kind::kCustom: {
        for (auto idx : elems) {
            if (idx >= universe.combined().size()) throw Error(ErrorCode::kRange, "element index out of range");
        }
        std::vector<SigmaInstance> out;
        SigmaInstance current;
        enumerate_custom_rec(universe, elems, sigma, 0, current, out);
        return out;
    }
    }
    return {};
}

// --- colorings --------------------------------------------------------------

Coloring::Coloring(const std::map<std::size_t, std::int64_t>& raw) {
    std::map<std::int64_t, int> dense;
    for (const auto& [elem, id] : raw) dense.emplace(id, 0);
    int next = 0;
    for (auto& [id, d] : dense) d = next++;
    for (const auto& [elem, id] : raw) colors_.emplace(elem, dense.at(id));
    num_colors_ = dense.size();
}

std::vector<std::size_t> Coloring::domain() const {
    std::vector<std::size_t> out;
    out.reserve(colors_.size());
    for (const auto& [elem, color] : colors_) out.push_back(elem);
    return out;
}

std::optional<int> Coloring::color_of(std::size_t element) const {
    auto it = colors_.find(element);
    if (it == colors_.end()) return std::nullopt;
    return it->second;
}

RainbowReport validate_rainbow(const Universe& universe, const Coloring& coloring, const Sigma& sigma) {
    const auto domain = coloring.domain();
    if (coloring.num_colors() == coloring.size()) {
        // Injective colorings are rainbow on every structure; still check kinds.
        if (sigma.kind() != Sigma::Kind::kCustom && !domain.empty()) {
            enumerate_sigma(universe, std::span<const std::size_t>(domain.data(), 1), sigma);
        }
        return RainbowReport{};
    }
    for (const auto& inst : enumerate_sigma(universe, domain, sigma)) {
        std::set<int> seen;
        for (auto idx : inst) {
            if (!seen.insert(*coloring.color_of(idx)).second) {
                return RainbowReport{false, inst};
            }
        }
    }
    return RainbowReport{};
}

std::vector<std::vector<std::size_t>> conflict_graph(const Universe& universe,
                                                     std::span<const std::size_t> domain,
                                                     const Sigma& sigma) {
    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < domain.size(); ++i) position.emplace(domain[i], i);
    std::vector<std::set<std::size_t>> adj(domain.size());
    for (const auto& inst : enumerate_sigma(universe, domain, sigma)) {
        for (std::size_t i = 0; i < inst.size(); ++i) {
            for (std::size_t j = i + 1; j < inst.size(); ++j) {
                auto p = position.at(inst[i]);
                auto q = position.at(inst[j]);
                if (p == q) continue;
                adj[p].insert(q);
                adj[q].insert(p);
            }
        }
    }
    std::vector<std::vector<std::size_t>> out(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i) out[i].assign(adj[i].begin(), adj[i].end());
    return out;
}

Coloring greedy_color(const Universe& universe, std::span<const std::size_t> domain,
                      const Sigma& sigma, std::span<const std::size_t> order) {
    const auto elems = sorted_unique(domain);
    if (elems.empty()) return Coloring{};
    std::vector<std::size_t> sequence(order.begin(), order.end());
    if (sequence.empty()) {
        sequence = elems;
    } else if (sorted_unique(sequence) != elems || sequence.size() != elems.size()) {
        throw Error(ErrorCode::kRange, "greedy order must be a permutation of the domain");
    }
    const auto adj = conflict_graph(universe, elems, sigma);
    std::map<std::size_t, std::size_t> position;
    for (std::size_t i = 0; i < elems.size(); ++i) position.emplace(elems[i], i);

    std::vector<int> color(elems.size(), -1);
    for (auto elem : sequence) {
        const auto p = position.at(elem);
        std::vector<bool> used(elems.size() + 1, false);
        for (auto q : adj[p]) {
            if (color[q] >= 0) used[static_cast<std::size_t>(color[q])] = true;
        }
        int c = 0;
        while (used[static_cast<std::size_t>(c)]) ++c;
        color[p] = c;
    }
    std::map<std::size_t, std::int64_t> raw;
    for (std::size_t i = 0; i < elems.size(); ++i) raw.emplace(elems[i], color[i]);
    return Coloring(raw);
}

namespace {

/// DSATUR branch and bound over a conflict graph. New colors are opened one at
/// a time, so color permutations are never revisited.
class ExactSearch {
public:
    ExactSearch(const std::vector<std::vector<std::size_t>>& adj, std::size_t bound)
        : adj_(adj), color_(adj.size(), -1), best_(adj.size(), -1), best_count_(bound) {}

    /// Finds a coloring with fewer than the initial bound colors, if any.
    bool run() {
        found_ = false;
        search(0, 0);
        return found_;
    }

    const std::vector<int>& best() const { return best_; }
    std::size_t best_count() const { return best_count_; }

private:
    void search(std::size_t colored, std::size_t used) {
        if (used >= best_count_) return;
        if (colored == adj_.size()) {
            best_ = color_;
            best_count_ = used;
            found_ = true;
            return;
        }
        const std::size_t v = pick();
        std::vector<bool> blocked(used + 1, false);
        for (auto w : adj_[v]) {
            if (color_[w] >= 0) blocked[static_cast<std::size_t>(color_[w])] = true;
        }
        for (std::size_t c = 0; c <= used; ++c) {
            if (blocked[c]) continue;
            if (c == used && used + 1 >= best_count_) break;
            color_[v] = static_cast<int>(c);
            search(colored + 1, std::max(used, c + 1));
            color_[v] = -1;
        }
    }

    std::size_t pick() const {
        std::size_t best_v = adj_.size();
        std::size_t best_sat = 0;
        std::size_t best_deg = 0;
        for (std::size_t v = 0; v < adj_.size(); ++v) {
            if (color_[v] >= 0) continue;
            std::set<int> sat;
            std::size_t deg = 0;
            for (auto w : adj_[v]) {
                if (color_[w] >= 0) {
                    sat.insert(color_[w]);
                } else {
                    ++deg;
                }
            }
            if (best_v == adj_.size() || sat.size() > best_sat ||
                (sat.size() == best_sat && deg > best_deg)) {
                best_v = v;
                best_sat = sat.size();
                best_deg = deg;
            }
        }
        return best_v;
    }

    const std::vector<std::vector<std::size_t>>& adj_;
    std::vector<int> color_;
    std::vector<int> best_;
    std::size_t best_count_;
    bool found_ = false;
};

}  // namespace

std::optional<ExactColoring> exact_min_colors(const Universe& universe,
                                              std::span<const std::size_t> domain,
                                              const Sigma& sigma, std::size_t cap) {
    const auto elems = sorted_unique(domain);
    if (elems.size() > kExactDomainLimit) {
        throw Error(ErrorCode::kDomainTooLarge,
                    std::to_string(elems.size()) + " elements exceed the exact-search limit of " +
                        std::to_string(kExactDomainLimit));
    }
    if (elems.empty()) return ExactColoring{};

    const auto greedy = greedy_color(universe, elems, sigma);
    std::vector<int> best(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) best[i] = *greedy.color_of(elems[i]);
    std::size_t best_count = greedy.num_colors();

    const auto adj = conflict_graph(universe, elems, sigma);
    ExactSearch search(adj, std::min(best_count, cap + 1));
    if (search.run()) {
        best = search.best();
        best_count = search.best_count();
    }
    if (best_count > cap) return std::nullopt;

    std::map<std::size_t, std::int64_t> raw;
    for (std::size_t i = 0; i < elems.size(); ++i) raw.emplace(elems[i], best[i]);
    return ExactColoring{Coloring(raw), best_count};
}

}  // namespace rainbowcc
