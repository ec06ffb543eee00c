#include "qfa/rational.hpp"

namespace qfa {

Rat parse_rat(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  try {
    Rat r(text);
    r.canonicalize();
    if (r.get_den() < 0) throw ParseError("negative denominator: " + text);
    return r;
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed rational literal: " + text);
  }
}

std::string format_rat(const Rat& value) {
  // Canonical "p/q" with q > 0, denominator always explicit.
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rat binom(long a, long i) {
  if (i < 0) return Rat(0);
  Rat result(1);
  for (long j = 0; j < i; ++j) {
    result *= Rat(a - j);
    result /= Rat(j + 1);
  }
  return result;
}

}  // namespace qfa
