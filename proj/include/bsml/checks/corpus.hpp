#pragma once

// Differential-testing corpus: composed programs exercising the primitives,
// the standard library, the skeletons and the maximum-prefix-sum application.
// Every program is a pure function of the context and encodes its observable
// outcome as a flat integer list, so runs compare bitwise across backends,
// widths and repetitions.

#include <functional>
#include <string>
#include <vector>

#include "bsml/mps.hpp"
#include "bsml/skeletons.hpp"
#include "bsml/stdlib.hpp"

namespace bsml::checks {

using Observation = std::vector<long long>;

struct CorpusProgram {
  std::string name;
  std::function<Observation(Ctx&)> body;
};

namespace corpus_detail {

/// Value-neutral busy work whose duration depends on the argument; it skews
/// worker timing between repetitions without touching any result.
inline void jitter(long long x) {
  volatile long long sink = 0;
  const long long rounds = ((x * 2654435761LL) % 977 + 977) % 977;
  for (long long k = 0; k < rounds; ++k) sink = sink + k;
}

inline seq::List<long long> fixed_list(int len, long long salt) {
  seq::List<long long> l;
  l.reserve(static_cast<std::size_t>(len));
  unsigned long long state = static_cast<unsigned long long>(salt) + 0x2545f4914f6cdd1dULL;
  for (int i = 0; i < len; ++i) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    l.push_back(static_cast<long long>((state >> 33) % 19) - 9);
  }
  return l;
}

inline AlgebraSpec<long long> sum_algebra() {
  return {[](const long long& a, const long long& b) { return a + b; }, 0};
}

inline AlgebraSpec<seq::List<long long>> concat_algebra() {
  return {[](const seq::List<long long>& a, const seq::List<long long>& b) {
            return seq::concat(a, b);
          },
          {}};
}

inline void append(Observation& obs, const seq::List<long long>& l) {
  obs.insert(obs.end(), l.begin(), l.end());
  obs.push_back(static_cast<long long>(l.size()));
}

}  // namespace corpus_detail

inline const std::vector<CorpusProgram>& corpus() {
  using namespace corpus_detail;
  static const std::vector<CorpusProgram> programs = {
      {"iota",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
         Observation obs;
         append(obs, list_of_par(ctx, v));
         return obs;
       }},
      {"squares-parfun",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return i + 1; });
         auto w = parfun(ctx, [](const long long& x) { return x * x; }, v);
         Observation obs;
         append(obs, list_of_par(ctx, w));
         return obs;
       }},
      {"staged-apply",
       [](Ctx& ctx) -> Observation {
         auto fv = mkpar(ctx, [](ProcId i) {
           const long long k = i;
           return [k](const long long& x) { return x * (k + 1) - k; };
         });
         auto vv = mkpar(ctx, [](ProcId i) -> long long { return 10 * i; });
         Observation obs;
         append(obs, list_of_par(ctx, apply(ctx, fv, vv)));
         return obs;
       }},
      {"replicate-add",
       [](Ctx& ctx) -> Observation {
         auto a = replicate(ctx, 7LL);
         auto b = mkpar(ctx, [](ProcId i) -> long long { return 3 * i; });
         auto c = parfun2(ctx, [](const long long& x, const long long& y) { return x + y; }, a, b);
         Observation obs;
         append(obs, list_of_par(ctx, c));
         return obs;
       }},
      {"parfun3-mix",
       [](Ctx& ctx) -> Observation {
         auto a = mkpar(ctx, [](ProcId i) -> long long { return i + 2; });
         auto b = replicate(ctx, 5LL);
         auto c = mkpar(ctx, [](ProcId i) -> long long { return -i; });
         auto d = parfun3(
             ctx,
             [](const long long& x, const long long& y, const long long& z) { return x * y + z; },
             a, b, c);
         Observation obs;
         append(obs, list_of_par(ctx, d));
         return obs;
       }},
      {"proj-table",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return 3 * i + 1; });
         auto at = proj(ctx, v);
         Observation obs;
         for (int i : procs(ctx)) obs.push_back(at(i));
         return obs;
       }},
      {"put-matrix",
       [](Ctx& ctx) -> Observation {
         const int p = ctx.nprocs();
         auto tosend = mkpar(ctx, [](ProcId src) {
           const long long s = src;
           return [s](ProcId dst) -> long long { return s * 17 + 3 * dst; };
         });
         auto received = put(ctx, tosend);
         auto rows = parfun(
             ctx,
             [p](const ProcFn<long long>& from) {
               seq::List<long long> row;
               for (int src = 0; src < p; ++src) row.push_back(from(src));
               return row;
             },
             received);
         Observation obs;
         append(obs, seq::flatten(list_of_par(ctx, rows)));
         return obs;
       }},
      {"put-involution",
       [](Ctx& ctx) -> Observation {
         const int p = ctx.nprocs();
         auto tosend = mkpar(ctx, [](ProcId src) {
           const long long s = src;
           return [s](ProcId dst) -> long long { return s * 101 + dst; };
         });
         auto twice = put(ctx, put(ctx, tosend));
         auto rows = parfun(
             ctx,
             [p](const ProcFn<long long>& from) {
               seq::List<long long> row;
               for (int src = 0; src < p; ++src) row.push_back(from(src));
               return row;
             },
             twice);
         Observation obs;
         append(obs, seq::flatten(list_of_par(ctx, rows)));
         return obs;
       }},
      {"bcast-root0",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return 5 * i + 2; });
         Observation obs;
         append(obs, list_of_par(ctx, bcast_direct(ctx, 0, v)));
         return obs;
       }},
      {"bcast-last",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return 5 * i + 2; });
         Observation obs;
         append(obs, list_of_par(ctx, bcast_direct(ctx, ctx.nprocs() - 1, v)));
         return obs;
       }},
      {"shift-plus1",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return 2 * i - 5; });
         Observation obs;
         append(obs, list_of_par(ctx, shift(ctx, 1, v)));
         return obs;
       }},
      {"shift-minus2",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return i * i; });
         Observation obs;
         append(obs, list_of_par(ctx, shift(ctx, -2, v)));
         return obs;
       }},
      {"shift-bounded",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return i + 1; });
         auto shifted =
             shift(ctx, 1, [](ProcId dst) -> long long { return -100 - dst; }, v);
         Observation obs;
         append(obs, list_of_par(ctx, shifted));
         return obs;
       }},
      {"distribute-block",
       [](Ctx& ctx) -> Observation {
         Observation obs;
         append(obs, to_list(ctx, distribute(ctx, fixed_list(17, 1), Policy::block)));
         return obs;
       }},
      {"distribute-roundrobin",
       [](Ctx& ctx) -> Observation {
         Observation obs;
         append(obs, to_list(ctx, distribute(ctx, fixed_list(17, 2), Policy::round_robin)));
         return obs;
       }},
      {"map-par-affine",
       [](Ctx& ctx) -> Observation {
         auto dl = distribute(ctx, fixed_list(23, 3), Policy::block);
         auto mapped = map_par(ctx, [](const long long& x) { return 2 * x - 3; }, dl);
         Observation obs;
         append(obs, to_list(ctx, mapped));
         return obs;
       }},
      {"reduce-sum",
       [](Ctx& ctx) -> Observation {
         auto dl = distribute(ctx, fixed_list(29, 4), Policy::round_robin);
         return {reduce_par(ctx, sum_algebra(), dl)};
       }},
      {"reduce-concat",
       [](Ctx& ctx) -> Observation {
         auto dl = distribute(ctx, fixed_list(11, 5), Policy::block);
         auto nested = map_par(
             ctx, [](const long long& x) { return seq::List<long long>{x, x + 1}; }, dl);
         Observation obs;
         append(obs, reduce_par(ctx, concat_algebra(), nested));
         return obs;
       }},
      {"mps-running-example",
       [](Ctx& ctx) -> Observation {
         const seq::List<long long> l = {1, 2, -1, 2, -1, 3, -4};
         return {mps_par(ctx, distribute(ctx, l, Policy::block))};
       }},
      {"mps-random-fixed",
       [](Ctx& ctx) -> Observation {
         auto dl = distribute(ctx, fixed_list(37, 6), Policy::round_robin);
         return {mps_par(ctx, dl)};
       }},
      {"collective-pipeline",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long { return 4 * i - 3; });
         auto b = bcast_direct(ctx, 0, v);
         auto s = shift(ctx, 1, parfun2(ctx, [](const long long& x, const long long& y) {
                          return x + y;
                        }, v, b));
         auto l = list_of_par(ctx, s);
         Observation obs;
         append(obs, l);
         obs.push_back(seq::sum(l));
         return obs;
       }},
      {"jittered-mix",
       [](Ctx& ctx) -> Observation {
         auto v = mkpar(ctx, [](ProcId i) -> long long {
           jitter(7 * i + 1);
           return 6 - i;
         });
         auto w = parfun(
             ctx,
             [](const long long& x) {
               jitter(x);
               return x * x - x;
             },
             shift(ctx, 2, v));
         auto dl = map_par(
             ctx, [](const long long& x) { return x % 7; },
             distribute(ctx, fixed_list(31, 7), Policy::block));
         Observation obs;
         append(obs, list_of_par(ctx, w));
         obs.push_back(reduce_par(ctx, sum_algebra(), dl));
         obs.push_back(mps_par(ctx, dl));
         return obs;
       }},
  };
  return programs;
}

}  // namespace bsml::checks
