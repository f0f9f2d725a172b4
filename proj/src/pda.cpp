#include "rainbowcc/error.hpp"
#include "rainbowcc/schemes.hpp"

#include <map>
#include <sstream>

namespace rainbowcc {

Pda parse_pda(std::string_view text) {
    Pda pda;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::optional<std::int64_t>> row;
        std::string tok;
        while (tokens >> tok) {
            if (tok == "*") {
                row.emplace_back(std::nullopt);
                continue;
            }
            try {
                std::size_t used = 0;
                const auto v = std::stoll(tok, &used);
                if (used != tok.size()) throw std::invalid_argument(tok);
                row.emplace_back(v);
            } catch (const std::logic_error&) {
                throw Error(ErrorCode::kParse,
                            "line " + std::to_string(line_no) + ": bad token '" + tok + "'");
            }
        }
        if (row.empty()) continue;
        if (pda.F == 0) {
            pda.K = row.size();
        } else if (row.size() != pda.K) {
            throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(pda.K) + " columns");
        }
        pda.cells.insert(pda.cells.end(), row.begin(), row.end());
        ++pda.F;
    }
    if (pda.F == 0) throw Error(ErrorCode::kParse, "empty PDA");
    return pda;
}

std::string format_pda(const Pda& pda) {
    std::ostringstream os;
    for (std::size_t f = 0; f < pda.F; ++f) {
        for (std::size_t k = 0; k < pda.K; ++k) {
            if (k) os << ' ';
            const auto& cell = pda.at(f, k);
            if (cell) {
                os << *cell;
            } else {
                os << '*';
            }
        }
        os << '\n';
    }
    return os.str();
}

PdaCheck check_pda(const Pda& pda) {
    auto fail = [](std::string axiom, std::vector<std::pair<std::size_t, std::size_t>> cells,
                   std::string message) { return PdaCheck{false, std::move(axiom), std::move(cells), std::move(message)}; };

    std::size_t stars = 0;
    for (std::size_t k = 0; k < pda.K; ++k) {
        std::size_t count = 0;
        for (std::size_t f = 0; f < pda.F; ++f) count += !pda.at(f, k).has_value();
        if (k == 0) {
            stars = count;
        } else if (count != stars) {
            return fail("uniform-star", {{0, k}},
                        "column " + std::to_string(k) + " has " + std::to_string(count) +
                            " stars, column 0 has " + std::to_string(stars));
        }
    }

    std::map<std::int64_t, std::vector<std::pair<std::size_t, std::size_t>>> by_color;
    for (std::size_t f = 0; f < pda.F; ++f) {
        for (std::size_t k = 0; k < pda.K; ++k) {
            if (const auto& cell = pda.at(f, k)) by_color[*cell].emplace_back(f, k);
        }
    }
    for (const auto& [color, cells] : by_color) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t j = i + 1; j < cells.size(); ++j) {
                const auto [f1, k1] = cells[i];
                const auto [f2, k2] = cells[j];
                if (f1 == f2) {
                    return fail("C1", {cells[i], cells[j]},
                                "color " + std::to_string(color) + " repeats in row " + std::to_string(f1));
                }
                if (k1 == k2) {
                    return fail("C1", {cells[i], cells[j]},
                                "color " + std::to_string(color) + " repeats in column " +
                                    std::to_string(k1));
                }
                if (pda.at(f1, k2) || pda.at(f2, k1)) {
                    return fail("C2", {cells[i], cells[j]},
                                "color " + std::to_string(color) + " at (" + std::to_string(f1) + "," +
                                    std::to_string(k1) + ") and (" + std::to_string(f2) + "," +
                                    std::to_string(k2) + ") without stars at the crossing cells");
                }
            }
        }
    }
    return PdaCheck{};
}

CachingScheme pda_to_scheme(const Pda& pda, SchemeOptions options) {
    if (auto check = check_pda(pda); !check.ok) {
        std::string where;
        for (const auto& [f, k] : check.cells) {
            where += " (" + std::to_string(f) + "," + std::to_string(k) + ")";
        }
        throw Error(ErrorCode::kPdaInvalid, check.axiom + " violated at" + where + ": " + check.message);
    }
    std::vector<Element> users;
    std::vector<Element> packets;
    for (std::size_t k = 0; k < pda.K; ++k) users.push_back(Element::integer(static_cast<std::int64_t>(k) + 1));
    for (std::size_t f = 0; f < pda.F; ++f) packets.push_back(Element::integer(static_cast<std::int64_t>(f) + 1));
    auto universe = build_universe(std::move(users), std::move(packets), CombineOp::kCartesianPair);

    std::map<std::size_t, std::int64_t> raw;
    for (std::size_t f = 0; f < pda.F; ++f) {
        for (std::size_t k = 0; k < pda.K; ++k) {
            if (const auto& cell = pda.at(f, k)) raw.emplace(universe.pair_element(k, f), *cell);
        }
    }
    auto scheme = build_scheme(universe, Coloring(raw), Sigma::pda_strong_edge(), options);
    scheme.kind = "pda";
    return scheme;
}

Pda scheme_to_pda(const CachingScheme& scheme) {
    Pda pda;
    pda.F = scheme.num_packets();
    pda.K = scheme.num_users();
    pda.cells.resize(pda.F * pda.K);
    for (std::size_t f = 0; f < pda.F; ++f) {
        for (std::size_t k = 0; k < pda.K; ++k) {
            if (auto c = scheme.color_at(k, f)) pda.cells[f * pda.K + k] = *c;
        }
    }
    return pda;
}

}  // namespace rainbowcc
