#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "trajint/construct.hpp"
#include "trajint/martingale.hpp"
#include "trajint/measure.hpp"
#include "trajint/superhedge.hpp"

namespace trajint {

using Json = nlohmann::ordered_json;

/// Reads a file into JSON. Throws InputError with line/column on bad syntax.
Json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const Json& doc);

/// Number or "p/q" string. In exact mode JSON numbers are parsed from their
/// decimal text, so 0.1 becomes 1/10.
template <class T>
T scalar_from_json(const Json& v, const std::string& field);
template <class T>
Json scalar_to_json(const T& x);
template <class T>
ExtReal<T> ext_from_json(const Json& v, const std::string& field);
template <class T>
Json ext_to_json(const ExtReal<T>& x);

/// {"s0": .., "horizon": N, "tree": {"value": .., "children": [...]}}
template <class T>
TrajectoryTree<T> model_from_json(const Json& doc);
template <class T>
Json model_to_json(const TrajectoryTree<T>& tree);
template <class T>
TrajectoryTree<T> load_model(const std::filesystem::path& file);

/// call:K, put:K, const:c, terminal, absinc:i, indicator:@file, table:@file.
/// Files are resolved against `base`.
template <class T>
Payoff<T> parse_payoff_spec(std::string_view spec, const std::filesystem::path& base = {});

/// {"start", "node", "V", "maturity", "H": [{"node", "h"}]}
template <class T>
ElementaryFunction<T> portfolio_from_json(const Json& doc);
template <class T>
Json portfolio_to_json(const ElementaryFunction<T>& p);

template <class T>
Json certificate_to_json(const HedgeCertificate<T>& cert);
template <class T>
Json process_to_json(const TrajectoryTree<T>& tree, const PriceProcess<T>& p);

/// "lo,hi" with "inf"/"-inf" allowed.
template <class T>
Interval<T> parse_interval(std::string_view text);

}  // namespace trajint
