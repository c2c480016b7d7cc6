#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace ksr {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws InputError on malformed text or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// n/d in canonical form (mpq_class's two-argument constructor does not reduce).
inline Rational ratio(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

/// Converts an integral rational to long; throws ConsistencyError otherwise.
long to_long(const Rational& q);

}  // namespace ksr
