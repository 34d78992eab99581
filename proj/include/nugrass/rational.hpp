#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "nugrass/errors.hpp"

namespace nugrass {

/// Exact rational scalar. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rat = mpq_class;

inline std::string to_string(const Rat& r) { return r.get_str(); }

/// Parses "p", "-p" or "p/q".
inline Rat parse_rat(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) fail(ErrorCode::ParseError, "empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) fail(ErrorCode::ParseError, "bad rational literal '" + s + "'");
  if (r.get_den() == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  r.canonicalize();
  return r;
}

}  // namespace nugrass
