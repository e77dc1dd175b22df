#pragma once

#include <ostream>

#include "bsml/skeletons.hpp"

namespace bsml {

/// Summary of an integer list for the maximum-prefix-sum problem: the best
/// prefix sum (the empty prefix counts, so it is never negative) and the
/// total. On summaries of actual lists, total <= max_prefix always holds;
/// that pair of facts is the invariant the reduction algebra needs.
struct MpsPair {
  long long max_prefix = 0;
  long long total = 0;

  friend bool operator==(const MpsPair&, const MpsPair&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const MpsPair& v) {
  return os << "(" << v.max_prefix << ", " << v.total << ")";
}

inline bool mps_invariant(const MpsPair& v) {
  return v.max_prefix >= 0 && v.total <= v.max_prefix;
}

/// Summary of the empty list, neutral for mps_combine on the invariant domain.
inline MpsPair mps_neutral() { return MpsPair{0, 0}; }

/// Summary of the singleton list [x].
inline MpsPair mps_singleton(long long x) { return MpsPair{x > 0 ? x : 0, x}; }

/// Combines summaries of adjacent list segments: a prefix of the
/// concatenation is empty, stays inside the left segment, or covers it and
/// continues into the right one. Associative and unit-respecting on the
/// invariant domain only: outside it (max_prefix negative, or total above
/// max_prefix, pairs no list produces) both laws fail, which is exactly what
/// checked reduction is there to catch.
inline MpsPair mps_combine(const MpsPair& a, const MpsPair& b) {
  long long best = a.max_prefix > a.total + b.max_prefix ? a.max_prefix : a.total + b.max_prefix;
  if (best < 0) best = 0;
  return MpsPair{best, a.total + b.total};
}

/// The reduction algebra for the maximum prefix sum.
inline AlgebraSpec<MpsPair> mps_algebra() {
  return AlgebraSpec<MpsPair>{
      [](const MpsPair& a, const MpsPair& b) { return mps_combine(a, b); },
      mps_neutral(),
      [](const MpsPair& v) { return mps_invariant(v); },
  };
}

/// Largest sum over all prefixes of l, the empty prefix included: the problem
/// statement, computed directly from the running prefix sums.
inline long long max_prefix_sum(const seq::List<long long>& l) {
  long long run = 0;
  long long best = 0;
  for (long long x : l) {
    run += x;
    if (run > best) best = run;
  }
  return best;
}

/// Tupling of max_prefix_sum with the total sum. This is the function the
/// combine operator is a homomorphism for:
/// mps_pair(l1 ++ l2) = mps_combine(mps_pair(l1), mps_pair(l2)).
inline MpsPair mps_pair(const seq::List<long long>& l) {
  long long run = 0;
  long long best = 0;
  for (long long x : l) {
    run += x;
    if (run > best) best = run;
  }
  return MpsPair{best, run};
}

/// Maximum prefix sum as the map/fold composition over the summary algebra.
inline long long mps_seq(const seq::List<long long>& l) {
  auto summaries = seq::map([](long long x) { return mps_singleton(x); }, l);
  return seq::fold_left([](MpsPair acc, const MpsPair& v) { return mps_combine(acc, v); },
                        mps_neutral(), summaries)
      .max_prefix;
}

/// Maximum prefix sum of a distributed list: map the summary over the chunks,
/// reduce with the summary algebra, read off the best prefix. Exactly one
/// communication superstep.
inline long long mps_par(Ctx& ctx, const DistList<long long>& dl,
                         ContractChecks checks = default_contract_checks()) {
  auto summaries = map_par(ctx, [](long long x) { return mps_singleton(x); }, dl);
  return reduce_par(ctx, mps_algebra(), summaries, checks).max_prefix;
}

}  // namespace bsml
