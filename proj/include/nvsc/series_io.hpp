#pragma once

#include <string>
#include <utility>

// vendored single-header nlohmann/json
#include <json.hpp>

#include "nvsc/novikov.hpp"

namespace nvsc {

using Json = nlohmann::ordered_json;

/* Wire format, bit-exact round trip:
 * {"cutoff":"20","nu":{"A":"2","B":"1"},
 *  "terms":[{"c":"3","tA":"1/2","tB":"1","x":1,"y":-2}, ...]}
 * Rationals are "p" or "p/q" strings; terms appear in canonical order. */
Json series_to_json(const Series& s);
Series series_from_json(const Json& j);

/* Parses monomial strings such as "T^A/y", "T^{A/2}x/y", "x^2", "3/2*T^(A+2B)*y^-3".
 * Returns coefficient and monomial. Throws Error{Parse} on malformed input. */
std::pair<Rat, Monomial> parse_monomial(const std::string& text);

std::string area_str(const AreaExponent& t);

} // namespace nvsc
