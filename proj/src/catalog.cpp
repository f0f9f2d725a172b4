#include "rainbowcc/error.hpp"
#include "rainbowcc/schemes.hpp"

#include <algorithm>
#include <numeric>

namespace rainbowcc {

namespace {

/// All k-subsets of {1..n} in lexicographic order.
std::vector<Element> subsets(std::size_t n, std::size_t k) {
    std::vector<Element> out;
    std::vector<std::int64_t> cur(k);
    std::iota(cur.begin(), cur.end(), 1);
    if (k > n) return out;
    while (true) {
        out.push_back(Element::set_of(cur));
        std::size_t i = k;
        while (i > 0 && cur[i - 1] == static_cast<std::int64_t>(n - k + i)) --i;
        if (i == 0) break;
        ++cur[i - 1];
        for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

/// Colors every element of C whose set size is `size` with its own color.
Coloring distinct_by_size(const Universe& u, std::size_t size) {
    std::map<std::size_t, std::int64_t> raw;
    for (std::size_t i = 0; i < u.combined().size(); ++i) {
        if (u.combined()[i].as_set().size() == size) raw.emplace(i, static_cast<std::int64_t>(i));
    }
    return Coloring(raw);
}

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d) {
        if (q % d == 0) return false;
    }
    return true;
}

int pow_mod(int base, int exp, int q) {
    int r = 1;
    for (int i = 0; i < exp; ++i) r = r * base % q;
    return r;
}

/// Rank of an integer matrix over GF(q), q prime.
std::size_t rank_mod(std::vector<std::vector<int>> rows, int q) {
    std::size_t r = 0;
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t pivot = r;
        while (pivot < rows.size() && rows[pivot][c] % q == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[r], rows[pivot]);
        const int inv = pow_mod(rows[r][c] % q, q - 2, q);
        for (auto& v : rows[r]) v = v * inv % q;
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (k == r) continue;
            const int f = rows[k][c] % q;
            if (f == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) rows[k][j] = ((rows[k][j] - f * rows[r][j]) % q + q) % q;
        }
        ++r;
    }
    return r;
}

}  // namespace

CachingScheme scheme_man(std::size_t K, std::size_t t, SchemeOptions options) {
    if (t < 1 || t >= K) throw Error(ErrorCode::kRange, "MAN scheme needs 1 <= t < K");
    std::vector<Element> users;
    for (std::size_t k = 1; k <= K; ++k) users.push_back(Element::integer(static_cast<std::int64_t>(k)));
    auto universe = build_universe(std::move(users), subsets(K, t), CombineOp::kSetUnion);
    auto coloring = distinct_by_size(universe, t + 1);
    auto scheme = build_scheme(universe, coloring, Sigma::subset_rainbow(1), options);
    scheme.kind = "man";
    return scheme;
}

CachingScheme scheme_union_subsets(std::size_t n, std::size_t a, std::size_t b, SchemeOptions options) {
    if (a < 1 || a >= b || a + b > n) {
        throw Error(ErrorCode::kRange, "union-of-subsets scheme needs 1 <= a < b and a + b <= n");
    }
    auto universe = build_universe(subsets(n, a), subsets(n, b), CombineOp::kSetUnion);
    auto coloring = distinct_by_size(universe, a + b);
    auto scheme = build_scheme(universe, coloring, Sigma::subset_rainbow(a), options);
    scheme.kind = "union-subsets";
    return scheme;
}

CachingScheme scheme_linear_block(const std::vector<std::vector<int>>& generator, int q,
                                  SchemeOptions options) {
    if (!is_prime(q)) throw Error(ErrorCode::kRange, "alphabet size q must be prime");
    const std::size_t k = generator.size();
    if (k == 0) throw Error(ErrorCode::kRange, "empty generator matrix");
    const std::size_t n = generator.front().size();
    for (const auto& row : generator) {
        if (row.size() != n) throw Error(ErrorCode::kDimension, "ragged generator matrix");
        for (int v : row) {
            if (v < 0 || v >= q) throw Error(ErrorCode::kRange, "generator entries must lie in [0, q)");
        }
    }
    if (n != k + 1) {
        throw Error(ErrorCode::kUnsupportedN, "only n = k + 1 codes are supported (n=" + std::to_string(n) +
                                                  ", k=" + std::to_string(k) + ")");
    }
    // Every k of the k+1 columns must be independent.
    for (std::size_t skip = 0; skip < n; ++skip) {
        std::vector<std::vector<int>> sub(k);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (c != skip) sub[r].push_back(generator[r][c]);
            }
        }
        if (rank_mod(sub, q) != k) {
            throw Error(ErrorCode::kRankPropertyFail,
                        "columns without " + std::to_string(skip + 1) + " are not full rank");
        }
    }

    // Codewords in lexicographic message order.
    std::vector<std::vector<int>> codewords;
    std::vector<int> msg(k, 0);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= static_cast<std::size_t>(q);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (std::size_t i = k; i-- > 0;) {
            msg[i] = static_cast<int>(rem % static_cast<std::size_t>(q));
            rem /= static_cast<std::size_t>(q);
        }
        std::vector<int> word(n, 0);
        for (std::size_t c = 0; c < n; ++c) {
            int s = 0;
            for (std::size_t r = 0; r < k; ++r) s += msg[r] * generator[r][c];
            word[c] = s % q;
        }
        codewords.push_back(std::move(word));
    }

    std::vector<Element> users;
    for (std::size_t pos = 1; pos <= n; ++pos) {
        for (int sym = 0; sym < q; ++sym) users.push_back(Element::pair(static_cast<std::int64_t>(pos), sym));
    }
    std::vector<Element> packets;
    for (const auto& word : codewords) {
        std::vector<Label> labels;
        for (std::size_t pos = 0; pos < n; ++pos) {
            labels.push_back(Label::paired(static_cast<std::int64_t>(pos) + 1, word[pos]));
        }
        packets.push_back(Element::set(std::move(labels)));
    }
    auto universe = build_universe(std::move(users), std::move(packets), CombineOp::kSetUnion);

    // Each colored element B ∪ {(j, x)} corresponds to the non-codeword s
    // obtained from B by writing x at position j; s is its color.
    std::map<std::vector<int>, std::int64_t> word_rank;
    {
        std::size_t all = 1;
        for (std::size_t i = 0; i < n; ++i) all *= static_cast<std::size_t>(q);
        std::int64_t next = 0;
        std::vector<int> s(n, 0);
        for (std::size_t idx = 0; idx < all; ++idx) {
            std::size_t rem = idx;
            for (std::size_t i = n; i-- > 0;) {
                s[i] = static_cast<int>(rem % static_cast<std::size_t>(q));
                rem /= static_cast<std::size_t>(q);
            }
            if (std::find(codewords.begin(), codewords.end(), s) == codewords.end()) word_rank.emplace(s, next++);
        }
    }
    std::map<std::size_t, std::int64_t> raw;
    for (std::size_t a = 0; a < universe.num_users(); ++a) {
        const auto user = universe.users()[a].as_pair();
        for (std::size_t b = 0; b < codewords.size(); ++b) {
            const auto pos = static_cast<std::size_t>(user.position - 1);
            if (codewords[b][pos] == user.symbol) continue;
            auto s = codewords[b];
            s[pos] = static_cast<int>(user.symbol);
            raw.emplace(universe.pair_element(a, b), word_rank.at(s));
        }
    }
    const std::size_t common = n;
    auto sigma = Sigma::custom(
        2,
        [common](std::span<const Element> t) {
            const auto& x = t[0].as_set();
            const auto& y = t[1].as_set();
            std::vector<Label> both;
            std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
            return both.size() != common;
        },
        "intersection-not-n");
    auto scheme = build_scheme(universe, Coloring(raw), sigma, options);
    scheme.kind = "linear-block";
    return scheme;
}

ColoredUniverse cyclic_universe(std::size_t n) {
    if (n < 4) throw Error(ErrorCode::kRange, "cyclic family needs n >= 4");
    std::vector<Element> users;
    std::vector<Element> packets;
    for (std::size_t i = 1; i <= n; ++i) {
        users.push_back(Element::integer(static_cast<std::int64_t>(i)));
        std::vector<std::int64_t> window;
        for (std::size_t j = 0; j + 2 < n; ++j) window.push_back(static_cast<std::int64_t>((i - 1 + j) % n + 1));
        packets.push_back(Element::set_of(window));
    }
    auto universe = build_universe(std::move(users), std::move(packets), CombineOp::kSetUnion);
    auto coloring = distinct_by_size(universe, n - 1);
    return ColoredUniverse{std::move(universe), std::move(coloring)};
}

CachingScheme scheme_cyclic(std::size_t n, SchemeOptions options) {
    auto cu = cyclic_universe(n);
    auto scheme = build_scheme(cu.universe, cu.coloring, Sigma::subset_rainbow(1), options);
    scheme.kind = "cyclic";
    return scheme;
}

}  // namespace rainbowcc
