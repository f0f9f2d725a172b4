#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rainbowcc {

/// Atom of a set-valued element: either a plain integer label or a
/// (position, symbol) label. Plain labels order before paired ones with the
/// same value.
struct Label {
    static constexpr std::int64_t kPlain = std::numeric_limits<std::int64_t>::min();

    std::int64_t value = 0;
    std::int64_t symbol = kPlain;

    static Label plain(std::int64_t v) { return Label{v, kPlain}; }
    static Label paired(std::int64_t position, std::int64_t sym) { return Label{position, sym}; }
    bool is_pair() const { return symbol != kPlain; }

    friend auto operator<=>(const Label&, const Label&) = default;
};

struct PairValue {
    std::int64_t position = 1;
    std::int64_t symbol = 0;

    friend auto operator<=>(const PairValue&, const PairValue&) = default;
};

/// Member of a family or of the combined set: an integer, a finite set of
/// labels, or a (position, symbol) pair.
class Element {
public:
    enum class Kind { kInteger, kSet, kPair };

    Element() = default;

    static Element integer(std::int64_t v);
    /// Sorts the labels; duplicate labels are rejected.
    static Element set(std::vector<Label> labels);
    static Element set_of(std::initializer_list<std::int64_t> values);
    static Element set_of(std::span<const std::int64_t> values);
    static Element pair(std::int64_t position, std::int64_t symbol);

    Kind kind() const { return static_cast<Kind>(value_.index()); }
    std::int64_t as_integer() const;
    const std::vector<Label>& as_set() const;
    PairValue as_pair() const;

    /// Set view of any element: integers and pairs become singletons.
    std::vector<Label> as_label_set() const;

    std::string to_string() const;

    friend bool operator==(const Element&, const Element&) = default;
    friend auto operator<=>(const Element&, const Element&) = default;

private:
    std::variant<std::int64_t, std::vector<Label>, PairValue> value_{std::int64_t{0}};
};

enum class CombineOp { kSetUnion, kIntegerSum, kCartesianPair };

std::string_view to_string(CombineOp op);
CombineOp combine_op_from_string(std::string_view name);

/// a ⊎ b. SET_UNION needs at least one set operand (integers and pairs are
/// promoted to singletons), INTEGER_SUM needs two integers, CARTESIAN_PAIR
/// records the 1-based family positions of its operands.
Element combine(const Element& a, const Element& b, CombineOp op, std::size_t a_index,
                std::size_t b_index);

/// The families A (users), B (packets) and C = A ⊎ B with every (a, b) pair
/// mapped to its combined element. Duplicate combined elements are merged.
class Universe {
public:
    const std::vector<Element>& users() const { return users_; }
    const std::vector<Element>& packets() const { return packets_; }
    CombineOp op() const { return op_; }
    const std::vector<Element>& combined() const { return combined_; }
    const std::vector<std::size_t>& pair_index() const { return pair_index_; }

    std::size_t num_users() const { return users_.size(); }
    std::size_t num_packets() const { return packets_.size(); }

    /// Index into combined() of users()[user] ⊎ packets()[packet].
    std::size_t pair_element(std::size_t user, std::size_t packet) const {
        return pair_index_[user * packets_.size() + packet];
    }

    std::optional<std::size_t> find(const Element& element) const;
    /// Throws RANGE if any element is not in C.
    std::vector<std::size_t> indices_of(std::span<const Element> elements) const;

private:
    friend Universe build_universe(std::vector<Element>, std::vector<Element>, CombineOp);

    std::vector<Element> users_;
    std::vector<Element> packets_;
    CombineOp op_ = CombineOp::kSetUnion;
    std::vector<Element> combined_;
    std::vector<std::size_t> pair_index_;
};

Universe build_universe(std::vector<Element> users, std::vector<Element> packets, CombineOp op);

/// The forbidden-monochromatic patterns a coloring must render rainbow.
class Sigma {
public:
    enum class Kind { kThreeAp, kThreeApEndpoints, kSubsetRainbow, kPdaStrongEdge, kCustom };
    using Predicate = std::function<bool(std::span<const Element>)>;

    static constexpr std::size_t kMaxCustomArity = 4;

    /// Triples (x, x+d, x+2d), d >= 1.
    static Sigma three_ap();
    /// Endpoint pairs (x, x+2d) of 3-APs whose midpoint is present.
    static Sigma three_ap_endpoints();
    /// Pairs with |C1 ∩ C2| >= threshold and triples with C_i ⊆ C_j ∪ C_k.
    static Sigma subset_rainbow(std::size_t threshold);
    /// Pairs sharing a position or a symbol; triples spanning at most two
    /// positions and two symbols.
    static Sigma pda_strong_edge();
    static Sigma custom(std::size_t arity, Predicate predicate, std::string name = "custom");

    Kind kind() const { return kind_; }
    std::size_t threshold() const { return threshold_; }
    std::size_t arity() const { return arity_; }
    const Predicate& predicate() const { return predicate_; }
    std::string name() const;

private:
    Kind kind_ = Kind::kThreeAp;
    std::size_t threshold_ = 1;
    std::size_t arity_ = 3;
    Predicate predicate_;
    std::string custom_name_;
};

Sigma sigma_from_string(std::string_view name);

/// Indices into Universe::combined(), in the order the structure defines.
using SigmaInstance = std::vector<std::size_t>;

std::vector<SigmaInstance> enumerate_sigma(const Universe& universe,
                                           std::span<const std::size_t> restricted_to,
                                           const Sigma& sigma);

/// φ: colored elements of C (by index) to dense color ids 0..num_colors-1.
class Coloring {
public:
    Coloring() = default;
    /// Raw ids are renumbered densely, preserving their relative order.
    explicit Coloring(const std::map<std::size_t, std::int64_t>& raw);

    const std::map<std::size_t, int>& colors() const { return colors_; }
    std::vector<std::size_t> domain() const;
    std::optional<int> color_of(std::size_t element) const;
    bool contains(std::size_t element) const { return colors_.count(element) != 0; }
    std::size_t size() const { return colors_.size(); }
    std::size_t num_colors() const { return num_colors_; }

private:
    std::map<std::size_t, int> colors_;
    std::size_t num_colors_ = 0;
};

struct RainbowReport {
    bool pass = true;
    SigmaInstance violation;  // first σ-instance with a repeated color
};

RainbowReport validate_rainbow(const Universe& universe, const Coloring& coloring, const Sigma& sigma);

/// Element pairs that must differ in color: two elements conflict when they
/// share a σ-instance. Adjacency is by position in `domain`.
std::vector<std::vector<std::size_t>> conflict_graph(const Universe& universe,
                                                     std::span<const std::size_t> domain,
                                                     const Sigma& sigma);

/// First-fit coloring in `order` (defaults to domain order).
Coloring greedy_color(const Universe& universe, std::span<const std::size_t> domain,
                      const Sigma& sigma, std::span<const std::size_t> order = {});

struct ExactColoring {
    Coloring coloring;
    std::size_t min_colors = 0;
};

inline constexpr std::size_t kExactDomainLimit = 24;

/// Minimum rainbow coloring by branch and bound; nullopt when the minimum
/// exceeds `cap`. Throws DOMAIN_TOO_LARGE above kExactDomainLimit elements.
std::optional<ExactColoring> exact_min_colors(const Universe& universe,
                                              std::span<const std::size_t> domain,
                                              const Sigma& sigma, std::size_t cap);

}  // namespace rainbowcc
