#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace hyperflow {

// All probabilities and weights are exact rationals. GMP keeps mpq_class
// canonical (reduced, positive denominator) through arithmetic; only raw
// num/den construction needs an explicit canonicalize, done in rat_of.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat_of(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_prob(const Rat& r) { return r >= 0 && r <= 1; }

// Renders "num" when integral, "num/den" otherwise. Parsing accepts both.
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& text);

inline double rat_double(const Rat& r) { return r.get_d(); }

}  // namespace hyperflow
