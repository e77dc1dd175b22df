#pragma once

// Independent reference computations for the property suites and acceptance
// tests. Deliberately written as the slow, obvious definitions; they must not
// share code with the library paths they judge.

#include "bsml/seq.hpp"

namespace bsml::checks {

/// Maximum prefix sum by literally enumerating every prefix (the empty one
/// included) and summing it from scratch. Quadratic on purpose.
inline long long mps_by_prefix_enumeration(const seq::List<long long>& l) {
  long long best = 0;  // empty prefix
  for (std::size_t len = 1; len <= l.size(); ++len) {
    long long s = 0;
    for (std::size_t i = 0; i < len; ++i) s += l[i];
    if (s > best) best = s;
  }
  return best;
}

/// Plain accumulation, as the second oracle component.
inline long long sum_by_loop(const seq::List<long long>& l) {
  long long s = 0;
  for (long long x : l) s += x;
  return s;
}

/// Largest element by linear scan; empty lists are the caller's problem.
inline long long max_by_scan(const seq::List<long long>& l) {
  long long best = l.front();
  for (long long x : l) {
    if (x > best) best = x;
  }
  return best;
}

}  // namespace bsml::checks
