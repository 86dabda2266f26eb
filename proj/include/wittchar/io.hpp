#pragma once

// JSON forms of contexts, p-adic elements, sequences, series and reports.
// Parse errors name the offending JSON path.

#include <string>

#include "json.hpp"
#include "wittchar/lfun.hpp"

namespace wittchar::io {

using Json = nlohmann::json;

/// {p, a, N, modulus}.
Json to_json(const Context& ctx);
/// Reads p, a, N and an optional modulus.
ContextPtr context_from_json(const Json& j, const std::string& path = "");

/// {p, a, N, modulus, coeffs} with N the element precision and coeffs in [0, p^N).
Json to_json(const PadicElement& x);
/// Accepts {coeffs, N?}, a coordinate array, or an integer. Signed values are
/// reduced; without N the value is taken as exact.
PadicElement element_from_json(const ContextPtr& ctx, const Json& j, const std::string& path);

/// {p, a, N, modulus, support: [{i, coeffs}], schedule: {kind, params}}.
Json to_json(const CharSequence& seq);
/// With ctx null the ring is read from the document.
CharSequence sequence_from_json(const Json& j, ContextPtr ctx = nullptr);

/// {p, a, N, modulus, var, K, coeffs, precision_flags, tail}.
Json to_json(const TruncatedSeries& s);
TruncatedSeries series_from_json(const Json& j, ContextPtr ctx = nullptr);

Json to_json(const LSeries& L);
Json to_json(const NewtonPolygon& np);
Json to_json(const ConvergenceReport& r);
Json to_json(const QuotientReport& r);

/// "k,v" rows of the resolved points, with censored points flagged.
std::string newton_csv(const NewtonPolygon& np);

}  // namespace wittchar::io
