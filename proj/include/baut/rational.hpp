#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace baut {

/* Exact rational scalar. All coefficient arithmetic in the library is exact;
 * there are no floating-point values anywhere. */
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

/* Parses "p" or "p/q" with an optional leading '-' on p and a positive q.
 * Returns nullopt on malformed input (including q = 0). */
std::optional<Rational> parse_rational(const std::string& text);

}  // namespace baut
