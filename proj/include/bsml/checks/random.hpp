#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>

#include "bsml/seq.hpp"

namespace bsml::checks {

/// Deterministic case generator (splitmix64). Every suite derives its streams
/// from the user seed, so failures replay exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [lo, hi], inclusive.
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  int irange(int lo, int hi) { return static_cast<int>(range(lo, hi)); }

  bool flip() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline std::uint64_t hash_name(const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline seq::List<long long> random_list(Rng& rng, int max_len, long long lo, long long hi) {
  const int n = rng.irange(0, max_len);
  seq::List<long long> l;
  l.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) l.push_back(rng.range(lo, hi));
  return l;
}

inline std::string show_list(const seq::List<long long>& l) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) os << ",";
    os << l[i];
  }
  os << "]";
  return os.str();
}

/// Greedy minimizer: keeps dropping elements and simplifying values while the
/// property keeps failing. `fails(l)` must be true for the input witness.
inline seq::List<long long> shrink_list(
    seq::List<long long> witness,
    const std::function<bool(const seq::List<long long>&)>& fails) {
  int budget = 400;
  bool changed = true;
  while (changed && budget > 0) {
    changed = false;
    for (std::size_t i = 0; i < witness.size() && budget > 0; ++i) {
      seq::List<long long> smaller = witness;
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(i));
      --budget;
      if (fails(smaller)) {
        witness = std::move(smaller);
        changed = true;
        break;
      }
    }
    for (std::size_t i = 0; i < witness.size() && budget > 0; ++i) {
      const long long x = witness[i];
      for (long long candidate : {0LL, x / 2, x > 0 ? x - 1 : x + 1}) {
        if (candidate == x) continue;
        seq::List<long long> simpler = witness;
        simpler[i] = candidate;
        --budget;
        if (fails(simpler)) {
          witness = std::move(simpler);
          changed = true;
          break;
        }
      }
    }
  }
  return witness;
}

}  // namespace bsml::checks
