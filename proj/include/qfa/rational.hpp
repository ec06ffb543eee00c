#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace qfa {

// Exact rational scalar. mpq_class keeps values canonical (lowest terms,
// positive denominator), which is exactly the invariant we need.
using Rat = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (q > 0 after canonicalization).
Rat parse_rat(const std::string& text);

/// Formats as "p/q" in lowest terms, denominator always explicit.
std::string format_rat(const Rat& value);

/// Binomial coefficient C(a, i) for arbitrary integer a and i >= 0.
Rat binom(long a, long i);

}  // namespace qfa
