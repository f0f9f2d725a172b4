#pragma once

#include "rainbowcc/mapreduce.hpp"
#include "rainbowcc/rainbow3ap.hpp"
#include "rainbowcc/schemes.hpp"
#include "rainbowcc/simulator.hpp"
#include "rainbowcc/universe.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace rainbowcc {

using Json = nlohmann::ordered_json;

/// Integers are numbers, sets are arrays of labels (a plain label is a number,
/// a paired label is [position, symbol]), pairs are {"pair": [position, symbol]}.
Json element_to_json(const Element& element);
Element element_from_json(const Json& j);

/// {"A": [...], "B": [...], "op": "...", "sigma": "...", "colored": [{"element": E, "color": c}]}
struct UniverseDoc {
    Universe universe;
    Coloring coloring;
    std::optional<Sigma> sigma;
};

Json universe_doc_to_json(const Universe& universe, const Coloring& coloring,
                          const std::optional<Sigma>& sigma = std::nullopt);
UniverseDoc universe_doc_from_json(const Json& j);

/// Builds the scheme a universe document describes; the σ check runs when the
/// document names one.
CachingScheme scheme_from_doc(const UniverseDoc& doc, SchemeOptions options = {});

Json matrix_to_json(const Matrix& p);
Matrix matrix_from_json(const Json& j);

/// Superset of the universe document: adds pair_coloring, field, delivery, P
/// and params. Loading rebuilds the scheme and rejects files whose stored
/// derived fields disagree with the rebuild.
Json scheme_to_json(const CachingScheme& scheme);
CachingScheme scheme_from_json(const Json& j);

/// {"n": 2m, "A": [...], "chi": {"x": color}}. Colors may be integers or
/// strings; strings are numbered in sorted order.
Json rainbow_ap_to_json(const RainbowAPSet& raps);
RainbowAPSet rainbow_ap_from_json(const Json& j);

Json plan_to_json(const ShufflePlan& plan, const CachingScheme& scheme);
Json reduce_report_to_json(const ReduceReport& report);

Json bounds_to_json(const std::vector<BoundRow>& rows);
Json run_report_to_json(const RunReport& report, const std::vector<BoundRow>& bounds);
/// One row per demand vector.
std::string run_report_csv(const RunReport& report);

Json params_to_json(const SchemeParams& params);

/// Rationals serialize as their exact "p/q" string.
Json rational_to_json(const Rational& value);
Rational rational_from_json(const Json& j);

/// I/O and syntax failures raise PARSE.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text);

}  // namespace rainbowcc
