#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace orbifrob {

/// Exact arbitrary-precision rational. Always kept canonical.
using Rational = mpq_class;

/// Parses "p" or "p/q" (optional leading '-', q > 0). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" when integral, else "p/q".
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace orbifrob
