#pragma once

// Executable property suites over the machine laws, the standard library, the
// skeletons and the maximum-prefix-sum application. The CLI exposes them as
// `check <suite>`; the acceptance tests run them at full case counts. All
// case generation is seeded, so any counterexample replays exactly.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bsml/checks/corpus.hpp"
#include "bsml/checks/oracles.hpp"
#include "bsml/checks/random.hpp"
#include "bsml/checks/report.hpp"
#include "bsml/mps.hpp"
#include "bsml/observe.hpp"
#include "bsml/skeletons.hpp"
#include "bsml/stdlib.hpp"

namespace bsml::checks {

struct Options {
  std::uint64_t seed = 42;
  int cases = 200;                      ///< randomized cases per property per width
  std::vector<int> procs = {1, 2, 3, 4, 8};
  int concurrent_stride = 25;           ///< every Nth case also replays concurrently
  bool mutate_mps = false;              ///< wound the combine operator under test
};

namespace detail_suite {

struct Affine {
  long long mul = 0;
  long long add = 0;
  long long operator()(long long i) const { return mul * i + add; }
};

inline Affine random_affine(Rng& rng) {
  return Affine{rng.range(-9, 9), rng.range(-50, 50)};
}

inline std::string show_affine(const Affine& f) {
  return std::to_string(f.mul) + "*i+" + std::to_string(f.add);
}

/// One randomized case: its generator stream, the width, the reference
/// machine and (for a replayed case) the concurrent machine.
struct CaseCtx {
  Rng& rng;
  int p;
  Machine& seq_machine;
  Machine* conc_machine;
};

class Suite {
 public:
  Suite(std::string name, const Options& opts) : opts_(opts) { result_.suite = std::move(name); }

  /// Randomized property swept over every width in the options.
  template <typename Body>
  void randomized(const std::string& property, Body&& body) {
    PropertyReport rep{property, 0, std::nullopt};
    for (int p : opts_.procs) {
      if (rep.counterexample) break;
      Machine seq_machine(p, Backend::sequential);
      Machine conc_machine(p, Backend::concurrent);
      Rng rng(opts_.seed ^ hash_name(result_.suite + "/" + property) ^
              (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(p + 1)));
      for (int c = 0; c < opts_.cases; ++c) {
        Machine* conc =
            (opts_.concurrent_stride > 0 && c % opts_.concurrent_stride == 0) ? &conc_machine
                                                                              : nullptr;
        CaseCtx cc{rng, p, seq_machine, conc};
        std::optional<std::string> cx;
        try {
          cx = body(cc);
        } catch (const error& e) {
          cx = std::string("unexpected error: ") + e.what();
        }
        ++rep.cases;
        if (cx) {
          rep.counterexample =
              "p=" + std::to_string(p) + " case=" + std::to_string(c) + ": " + *cx;
          break;
        }
      }
    }
    result_.properties.push_back(std::move(rep));
  }

  /// Randomized property that manages widths itself.
  template <typename Body>
  void randomized_once(const std::string& property, Body&& body) {
    PropertyReport rep{property, 0, std::nullopt};
    Rng rng(opts_.seed ^ hash_name(result_.suite + "/" + property));
    for (int c = 0; c < opts_.cases; ++c) {
      std::optional<std::string> cx;
      try {
        cx = body(rng, c);
      } catch (const error& e) {
        cx = std::string("unexpected error: ") + e.what();
      }
      ++rep.cases;
      if (cx) {
        rep.counterexample = "case=" + std::to_string(c) + ": " + *cx;
        break;
      }
    }
    result_.properties.push_back(std::move(rep));
  }

  /// Deterministic property evaluated once per width.
  template <typename Body>
  void per_width(const std::string& property, Body&& body) {
    PropertyReport rep{property, 0, std::nullopt};
    for (int p : opts_.procs) {
      Machine seq_machine(p, Backend::sequential);
      Machine conc_machine(p, Backend::concurrent);
      std::optional<std::string> cx;
      try {
        cx = body(p, seq_machine, conc_machine);
      } catch (const error& e) {
        cx = std::string("unexpected error: ") + e.what();
      }
      ++rep.cases;
      if (cx) {
        rep.counterexample = "p=" + std::to_string(p) + ": " + *cx;
        break;
      }
    }
    result_.properties.push_back(std::move(rep));
  }

  /// Deterministic property evaluated once.
  template <typename Body>
  void once(const std::string& property, Body&& body) {
    PropertyReport rep{property, 1, std::nullopt};
    try {
      rep.counterexample = body();
    } catch (const error& e) {
      rep.counterexample = std::string("unexpected error: ") + e.what();
    }
    result_.properties.push_back(std::move(rep));
  }

  const Options& options() const { return opts_; }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
  const Options& opts_;
};

inline std::string show_ll(long long v) { return std::to_string(v); }

}  // namespace detail_suite

// ---------------------------------------------------------------------------
// core-laws: the primitive contracts and backend agreement
// ---------------------------------------------------------------------------

inline SuiteResult check_core_laws(const Options& opts) {
  using namespace detail_suite;
  Suite suite("core-laws", opts);

  suite.randomized("mkpar components are f(0..p-1)", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    auto prog = [f](Ctx& ctx) { return mkpar(ctx, [f](ProcId i) { return f(i); }); };
    auto v = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      if (observe::get(v, i) != f(i)) {
        return "f=" + show_affine(f) + " component " + std::to_string(i) + " is " +
               show_ll(observe::get(v, i)) + ", expected " + show_ll(f(i));
      }
    }
    if (cc.conc_machine && !observe::equal(v, cc.conc_machine->run(prog))) {
      return "f=" + show_affine(f) + ": backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("extensionality", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const Affine g = cc.rng.flip() ? f : random_affine(cc.rng);
    auto v = cc.seq_machine.run([f](Ctx& ctx) { return mkpar(ctx, [f](ProcId i) { return f(i); }); });
    auto w = cc.seq_machine.run([g](Ctx& ctx) { return mkpar(ctx, [g](ProcId i) { return g(i); }); });
    bool componentwise = true;
    for (int i = 0; i < cc.p; ++i) componentwise = componentwise && f(i) == g(i);
    if (observe::equal(v, w) != componentwise) {
      return "f=" + show_affine(f) + " g=" + show_affine(g) +
             ": vector equality disagrees with componentwise equality";
    }
    return std::nullopt;
  });

  suite.randomized("apply is pointwise", [](CaseCtx& cc) -> std::optional<std::string> {
    const long long a = cc.rng.range(-5, 5);
    const long long b = cc.rng.range(-20, 20);
    const Affine g = random_affine(cc.rng);
    auto prog = [a, b, g](Ctx& ctx) {
      auto fv = mkpar(ctx, [a, b](ProcId i) {
        const long long m = a + (i % 3);
        const long long n = b - i;
        return [m, n](const long long& x) { return m * x + n; };
      });
      auto vv = mkpar(ctx, [g](ProcId i) { return g(i); });
      return apply(ctx, fv, vv);
    };
    auto v = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      const long long expected = (a + (i % 3)) * g(i) + (b - i);
      if (observe::get(v, i) != expected) {
        return "component " + std::to_string(i) + " is " + show_ll(observe::get(v, i)) +
               ", expected " + show_ll(expected);
      }
    }
    if (cc.conc_machine && !observe::equal(v, cc.conc_machine->run(prog))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("proj inverts mkpar", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    auto prog = [f](Ctx& ctx) { return proj(ctx, mkpar(ctx, [f](ProcId i) { return f(i); })); };
    ProcFn<long long> fn = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      if (fn(i) != f(i)) {
        return "f=" + show_affine(f) + " proj(mkpar(f))(" + std::to_string(i) + ") = " +
               show_ll(fn(i)) + ", expected " + show_ll(f(i));
      }
    }
    if (cc.conc_machine) {
      ProcFn<long long> fn2 = cc.conc_machine->run(prog);
      for (int i = 0; i < cc.p; ++i) {
        if (fn2(i) != f(i)) return "concurrent proj disagrees at " + std::to_string(i);
      }
    }
    return std::nullopt;
  });

  suite.randomized("put exchange equation", [](CaseCtx& cc) -> std::optional<std::string> {
    const long long a = cc.rng.range(-9, 9);
    const long long b = cc.rng.range(-9, 9);
    const long long c = cc.rng.range(-20, 20);
    auto msg = [a, b, c](long long src, long long dst) { return a * src + b * dst + c * src * dst; };
    auto prog = [a, b, c](Ctx& ctx) {
      auto tosend = mkpar(ctx, [a, b, c](ProcId src) {
        const long long s = src;
        return [a, b, c, s](ProcId dst) { return a * s + b * dst + c * s * dst; };
      });
      return put(ctx, tosend);
    };
    auto received = cc.seq_machine.run(prog);
    for (int dst = 0; dst < cc.p; ++dst) {
      for (int src = 0; src < cc.p; ++src) {
        if (observe::get(received, dst)(src) != msg(src, dst)) {
          return "received at dst=" + std::to_string(dst) + " from src=" + std::to_string(src) +
                 " is " + show_ll(observe::get(received, dst)(src)) + ", expected " +
                 show_ll(msg(src, dst));
        }
      }
    }
    if (cc.conc_machine) {
      auto received2 = cc.conc_machine->run(prog);
      for (int dst = 0; dst < cc.p; ++dst) {
        for (int src = 0; src < cc.p; ++src) {
          if (observe::get(received2, dst)(src) != msg(src, dst)) {
            return "concurrent put disagrees at (src=" + std::to_string(src) +
                   ", dst=" + std::to_string(dst) + ")";
          }
        }
      }
    }
    return std::nullopt;
  });

  suite.randomized("put is an involution", [](CaseCtx& cc) -> std::optional<std::string> {
    const long long a = cc.rng.range(-9, 9);
    const long long b = cc.rng.range(-9, 9);
    auto msg = [a, b](long long src, long long dst) { return a * src + b * dst + src * 101 + dst; };
    auto prog = [a, b](Ctx& ctx) {
      auto tosend = mkpar(ctx, [a, b](ProcId src) {
        const long long s = src;
        return [a, b, s](ProcId dst) { return a * s + b * dst + s * 101 + dst; };
      });
      return put(ctx, put(ctx, tosend));
    };
    auto twice = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      for (int j = 0; j < cc.p; ++j) {
        if (observe::get(twice, i)(j) != msg(i, j)) {
          return "put(put(t)) at (" + std::to_string(i) + ")(" + std::to_string(j) + ") is " +
                 show_ll(observe::get(twice, i)(j)) + ", expected " + show_ll(msg(i, j));
        }
      }
    }
    return std::nullopt;
  });

  suite.per_width("backend agreement over the program corpus",
                  [](int, Machine& seq_machine, Machine& conc_machine) -> std::optional<std::string> {
                    for (const CorpusProgram& program : corpus()) {
                      Observation expected = seq_machine.run(program.body);
                      Observation got = conc_machine.run(program.body);
                      if (got != expected) {
                        return program.name + ": sequential " + show_list(expected) +
                               " vs concurrent " + show_list(got);
                      }
                    }
                    return std::nullopt;
                  });

  suite.per_width("concurrent runs are deterministic",
                  [](int, Machine&, Machine& conc_machine) -> std::optional<std::string> {
                    for (const CorpusProgram& program : corpus()) {
                      Observation first = conc_machine.run(program.body);
                      for (int repeat = 0; repeat < 2; ++repeat) {
                        if (conc_machine.run(program.body) != first) {
                          return program.name + ": two concurrent runs disagree";
                        }
                      }
                    }
                    return std::nullopt;
                  });

  return suite.take();
}

// ---------------------------------------------------------------------------
// stdlib: replication, pointwise application, conversions, broadcast, shifts
// ---------------------------------------------------------------------------

inline SuiteResult check_stdlib(const Options& opts) {
  using namespace detail_suite;
  Suite suite("stdlib", opts);

  suite.randomized("replicate holds x everywhere", [](CaseCtx& cc) -> std::optional<std::string> {
    const long long x = cc.rng.range(-1000, 1000);
    auto v = cc.seq_machine.run([x](Ctx& ctx) { return replicate(ctx, x); });
    auto w = cc.seq_machine.run([x](Ctx& ctx) { return mkpar(ctx, [x](ProcId) { return x; }); });
    for (int i = 0; i < cc.p; ++i) {
      if (observe::get(v, i) != x) return "component " + std::to_string(i) + " differs from x";
    }
    if (!observe::equal(v, w)) return "replicate(x) differs from mkpar(const x)";
    if (cc.conc_machine &&
        !observe::equal(v, cc.conc_machine->run([x](Ctx& ctx) { return replicate(ctx, x); }))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("parfun is pointwise and composes", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const Affine g = random_affine(cc.rng);
    const Affine h = random_affine(cc.rng);
    auto staged = [f, g, h](Ctx& ctx) {
      auto v = mkpar(ctx, [h](ProcId i) { return h(i); });
      auto fv = parfun(ctx, [f](const long long& x) { return f(x); }, v);
      return parfun(ctx, [g](const long long& x) { return g(x); }, fv);
    };
    auto fused = [f, g, h](Ctx& ctx) {
      auto v = mkpar(ctx, [h](ProcId i) { return h(i); });
      return parfun(ctx, [f, g](const long long& x) { return g(f(x)); }, v);
    };
    auto v1 = cc.seq_machine.run(staged);
    auto v2 = cc.seq_machine.run(fused);
    if (!observe::equal(v1, v2)) return "parfun(g) . parfun(f) differs from parfun(g . f)";
    for (int i = 0; i < cc.p; ++i) {
      if (observe::get(v1, i) != g(f(h(i)))) {
        return "component " + std::to_string(i) + " is not g(f(h(i)))";
      }
    }
    if (cc.conc_machine && !observe::equal(v1, cc.conc_machine->run(staged))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("parfun2 and parfun3 are pointwise", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const Affine g = random_affine(cc.rng);
    const long long k = cc.rng.range(-30, 30);
    auto prog2 = [f, g](Ctx& ctx) {
      auto a = mkpar(ctx, [f](ProcId i) { return f(i); });
      auto b = mkpar(ctx, [g](ProcId i) { return g(i); });
      return parfun2(ctx, [](const long long& x, const long long& y) { return x - 2 * y; }, a, b);
    };
    auto prog3 = [f, g, k](Ctx& ctx) {
      auto a = mkpar(ctx, [f](ProcId i) { return f(i); });
      auto b = mkpar(ctx, [g](ProcId i) { return g(i); });
      auto c = replicate(ctx, k);
      return parfun3(
          ctx, [](const long long& x, const long long& y, const long long& z) { return x * z - y; },
          a, b, c);
    };
    auto v2 = cc.seq_machine.run(prog2);
    auto v3 = cc.seq_machine.run(prog3);
    for (int i = 0; i < cc.p; ++i) {
      if (observe::get(v2, i) != f(i) - 2 * g(i)) return "parfun2 wrong at " + std::to_string(i);
      if (observe::get(v3, i) != f(i) * k - g(i)) return "parfun3 wrong at " + std::to_string(i);
    }
    if (cc.conc_machine && !observe::equal(v2, cc.conc_machine->run(prog2))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.per_width("procs lists all identifiers",
                  [](int p, Machine& seq_machine, Machine& conc_machine) -> std::optional<std::string> {
                    auto prog = [](Ctx& ctx) { return procs(ctx); };
                    auto ids = seq_machine.run(prog);
                    if (ids != seq::from_to(0, p - 1)) return "procs differs from [0..p-1]";
                    if (static_cast<int>(ids.size()) != p) return "procs length is not p";
                    if (conc_machine.run(prog) != ids) return "backends disagree";
                    return std::nullopt;
                  });

  suite.randomized("list_of_par reads components in order", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    auto prog = [f](Ctx& ctx) {
      auto v = mkpar(ctx, [f](ProcId i) { return f(i); });
      return std::make_pair(list_of_par(ctx, v), v);
    };
    auto [l, v] = cc.seq_machine.run(prog);
    if (static_cast<int>(l.size()) != cc.p) return "length differs from p";
    for (int i = 0; i < cc.p; ++i) {
      if (l[static_cast<std::size_t>(i)] != observe::get(v, i)) {
        return "list_of_par differs from components at " + std::to_string(i);
      }
      if (l[static_cast<std::size_t>(i)] != f(i)) {
        return "list_of_par differs from map(f, procs) at " + std::to_string(i);
      }
    }
    return std::nullopt;
  });

  suite.randomized("broadcast agrees with the root component", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const int root = cc.rng.irange(0, cc.p - 1);
    auto prog = [f, root](Ctx& ctx) {
      auto v = mkpar(ctx, [f](ProcId i) { return f(i); });
      return bcast_direct(ctx, root, v);
    };
    auto v = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      if (observe::get(v, i) != f(root)) {
        return "root=" + std::to_string(root) + " component " + std::to_string(i) +
               " differs from the root value";
      }
    }
    if (cc.conc_machine && !observe::equal(v, cc.conc_machine->run(prog))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.per_width("broadcast payload travels only from the root",
                  [](int p, Machine& seq_machine, Machine& conc_machine) -> std::optional<std::string> {
                    const int root = p - 1;
                    auto prog = [root](Ctx& ctx) {
                      auto v = mkpar(ctx, [](ProcId i) -> long long { return 10 + i; });
                      return bcast_direct(ctx, root, v);
                    };
                    for (Machine* m : {&seq_machine, &conc_machine}) {
                      Trace trace;
                      (void)m->run(prog, trace);
                      auto records = trace.records();
                      if (records.size() != 1) return "broadcast did not cost exactly one superstep";
                      for (int src = 0; src < p; ++src) {
                        for (int dst = 0; dst < p; ++dst) {
                          const std::size_t expected =
                              (src == root && dst != root) ? 1 : 0;
                          if (records[0].sent(src, dst) != expected) {
                            return "message count at (src=" + std::to_string(src) +
                                   ", dst=" + std::to_string(dst) + ") is " +
                                   std::to_string(records[0].sent(src, dst)) + ", expected " +
                                   std::to_string(expected);
                          }
                        }
                      }
                    }
                    return std::nullopt;
                  });

  suite.randomized("shift rotates modulo p", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const int offset = cc.rng.irange(-2 * cc.p, 2 * cc.p);
    auto prog = [f, offset](Ctx& ctx) {
      return shift(ctx, offset, mkpar(ctx, [f](ProcId i) { return f(i); }));
    };
    auto v = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      const int src = ((i - offset) % cc.p + cc.p) % cc.p;
      if (observe::get(v, i) != f(src)) {
        return "offset=" + std::to_string(offset) + " component " + std::to_string(i) +
               " is not the value from processor " + std::to_string(src);
      }
    }
    if (cc.conc_machine && !observe::equal(v, cc.conc_machine->run(prog))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("shifts compose additively", [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const int a = cc.rng.irange(-cc.p, cc.p);
    const int b = cc.rng.irange(-cc.p, cc.p);
    auto staged = [f, a, b](Ctx& ctx) {
      return shift(ctx, a, shift(ctx, b, mkpar(ctx, [f](ProcId i) { return f(i); })));
    };
    auto direct = [f, a, b](Ctx& ctx) {
      return shift(ctx, a + b, mkpar(ctx, [f](ProcId i) { return f(i); }));
    };
    if (!observe::equal(cc.seq_machine.run(staged), cc.seq_machine.run(direct))) {
      return "shift(a, shift(b, v)) differs from shift(a+b, v) for a=" + std::to_string(a) +
             " b=" + std::to_string(b);
    }
    return std::nullopt;
  });

  suite.randomized("bounded shift fills the edge with the default",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    const Affine f = random_affine(cc.rng);
    const int offset = cc.rng.irange(-cc.p - 1, cc.p + 1);
    auto prog = [f, offset](Ctx& ctx) {
      auto v = mkpar(ctx, [f](ProcId i) { return f(i); });
      return shift(ctx, offset, [](ProcId dst) -> long long { return -1000 - dst; }, v);
    };
    auto v = cc.seq_machine.run(prog);
    for (int i = 0; i < cc.p; ++i) {
      const int src = i - offset;
      const long long expected = (src >= 0 && src < cc.p) ? f(src) : -1000 - i;
      if (observe::get(v, i) != expected) {
        return "offset=" + std::to_string(offset) + " component " + std::to_string(i) + " is " +
               show_ll(observe::get(v, i)) + ", expected " + show_ll(expected);
      }
    }
    if (cc.conc_machine && !observe::equal(v, cc.conc_machine->run(prog))) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.per_width("superstep cost per operation",
                  [](int p, Machine& seq_machine, Machine& conc_machine) -> std::optional<std::string> {
                    auto steps = [](Machine& m, auto prog) {
                      Trace trace;
                      (void)m.run(prog, trace);
                      return trace.supersteps();
                    };
                    for (Machine* m : {&seq_machine, &conc_machine}) {
                      struct Expectation {
                        const char* name;
                        std::size_t want;
                        std::function<long long(Ctx&)> prog;
                      };
                      const Expectation table[] = {
                          {"mkpar", 0,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             (void)v;
                             return 0LL;
                           }},
                          {"apply", 0,
                           [](Ctx& ctx) {
                             auto fv = mkpar(ctx, [](ProcId) {
                               return [](const long long& x) { return x + 1; };
                             });
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             (void)apply(ctx, fv, v);
                             return 0LL;
                           }},
                          {"parfun", 0,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             (void)parfun(ctx, [](const long long& x) { return 2 * x; }, v);
                             return 0LL;
                           }},
                          {"proj", 1,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             return proj(ctx, v)(0);
                           }},
                          {"put", 1,
                           [](Ctx& ctx) {
                             auto tosend = mkpar(ctx, [](ProcId src) {
                               const long long s = src;
                               return [s](ProcId dst) -> long long { return s + dst; };
                             });
                             (void)put(ctx, tosend);
                             return 0LL;
                           }},
                          {"list_of_par", 1,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             return seq::sum(list_of_par(ctx, v));
                           }},
                          {"bcast_direct", 1,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             (void)bcast_direct(ctx, 0, v);
                             return 0LL;
                           }},
                          {"shift", 1,
                           [](Ctx& ctx) {
                             auto v = mkpar(ctx, [](ProcId i) -> long long { return i; });
                             (void)shift(ctx, 1, v);
                             return 0LL;
                           }},
                      };
                      for (const auto& e : table) {
                        const std::size_t got = steps(*m, e.prog);
                        if (got != e.want) {
                          return std::string(e.name) + " cost " + std::to_string(got) +
                                 " supersteps, expected " + std::to_string(e.want) + " (" +
                                 to_string(m->backend()) + ", p=" + std::to_string(p) + ")";
                        }
                      }
                    }
                    return std::nullopt;
                  });

  return suite.take();
}

// ---------------------------------------------------------------------------
// skeletons: distribution, map/reduce correspondence, checked algebra
// ---------------------------------------------------------------------------

namespace detail_suite {

inline AlgebraSpec<long long> spec_by_index(int which) {
  switch (which) {
    case 0:
      return {[](const long long& a, const long long& b) { return a + b; }, 0};
    case 1:
      return {[](const long long& a, const long long& b) { return seq::max2(a, b); },
              std::numeric_limits<long long>::min()};
    default:
      return {[](const long long& a, const long long& b) { return seq::max2(a, b); }, -1,
              [](const long long& x) { return x >= -1; }};
  }
}

inline const char* spec_name(int which) {
  switch (which) {
    case 0: return "sum";
    case 1: return "max/sentinel";
    default: return "max/bounded";
  }
}

inline seq::List<seq::List<long long>> random_cuts(Rng& rng, const seq::List<long long>& l, int p) {
  std::vector<std::size_t> cuts;
  for (int j = 0; j < p - 1; ++j) {
    cuts.push_back(static_cast<std::size_t>(rng.range(0, static_cast<long long>(l.size()))));
  }
  std::sort(cuts.begin(), cuts.end());
  seq::List<seq::List<long long>> chunks;
  std::size_t begin = 0;
  for (int j = 0; j < p; ++j) {
    const std::size_t end = j + 1 < p ? cuts[static_cast<std::size_t>(j)] : l.size();
    chunks.emplace_back(l.begin() + static_cast<std::ptrdiff_t>(begin),
                        l.begin() + static_cast<std::ptrdiff_t>(end));
    begin = end;
  }
  return chunks;
}

}  // namespace detail_suite

inline SuiteResult check_skeletons(const Options& opts) {
  using namespace detail_suite;
  Suite suite("skeletons", opts);

  suite.randomized("distribute concatenates back to the input", [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 40, -30, 30);
    const int which = cc.rng.irange(0, 2);
    seq::List<seq::List<long long>> chunks;
    if (which == 2) chunks = random_cuts(cc.rng, l, cc.p);
    auto fixed = [&l, which, &chunks](Ctx& ctx) {
      if (which == 0) return to_list(ctx, distribute(ctx, l, Policy::block));
      if (which == 1) return to_list(ctx, distribute(ctx, l, Policy::round_robin));
      return to_list(ctx, distribute(ctx, l, chunks));
    };
    auto round = cc.seq_machine.run(fixed);
    if (round != l) {
      return "policy=" + std::to_string(which) + " to_list(distribute(l)) = " + show_list(round) +
             " differs from l = " + show_list(l);
    }
    if (cc.conc_machine && cc.conc_machine->run(fixed) != l) return "backends disagree";
    return std::nullopt;
  });

  suite.randomized("map_par corresponds to map", [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 40, -30, 30);
    const Affine f = random_affine(cc.rng);
    const Policy policy = cc.rng.flip() ? Policy::block : Policy::round_robin;
    auto prog = [&l, f, policy](Ctx& ctx) {
      auto dl = distribute(ctx, l, policy);
      auto mapped = map_par(ctx, [f](const long long& x) { return f(x); }, dl);
      return std::make_pair(to_list(ctx, mapped), seq::map([f](const long long& x) { return f(x); },
                                                           to_list(ctx, dl)));
    };
    auto [par_side, seq_side] = cc.seq_machine.run(prog);
    if (par_side != seq_side) {
      return "to_list(map_par(f,dl)) = " + show_list(par_side) + " differs from map(f,to_list(dl))";
    }
    seq::List<long long> expected;
    for (long long x : l) expected.push_back(f(x));
    if (par_side != expected) return "map_par differs from the elementwise loop";
    if (cc.conc_machine && cc.conc_machine->run(prog).first != expected) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("reduce_par corresponds to fold_left", [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 40, -30, 30);
    const int which = cc.rng.irange(0, 1);
    const auto spec = spec_by_index(which);
    const Policy policy = cc.rng.flip() ? Policy::block : Policy::round_robin;
    const int p = cc.p;
    auto law_breaks = [&spec, which, policy, p](const seq::List<long long>& candidate) {
      Machine m(p, Backend::sequential);
      const long long got = m.run([&candidate, &spec, policy](Ctx& ctx) {
        return reduce_par(ctx, spec, distribute(ctx, candidate, policy));
      });
      if (got != seq::fold_left(spec.op, spec.neutral, candidate)) return true;
      const long long oracle = which == 0             ? sum_by_loop(candidate)
                               : candidate.empty()    ? spec.neutral
                                                      : max_by_scan(candidate);
      return got != oracle;
    };
    if (law_breaks(l)) {
      return std::string(spec_name(which)) + " correspondence broken, shrunk witness " +
             show_list(shrink_list(l, law_breaks));
    }
    auto prog = [&l, &spec, policy](Ctx& ctx) {
      return reduce_par(ctx, spec, distribute(ctx, l, policy));
    };
    if (cc.conc_machine && cc.conc_machine->run(prog) != cc.seq_machine.run(prog)) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("reduce_par with concatenation rebuilds the list",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 30, -20, 20);
    auto prog = [&l](Ctx& ctx) {
      auto dl = distribute(ctx, l, Policy::block);
      auto nested = map_par(ctx, [](const long long& x) { return seq::List<long long>{x}; }, dl);
      AlgebraSpec<seq::List<long long>> spec{
          [](const seq::List<long long>& a, const seq::List<long long>& b) {
            return seq::concat(a, b);
          },
          {}};
      return reduce_par(ctx, spec, nested);
    };
    auto got = cc.seq_machine.run(prog);
    if (got != l) {
      return "concat reduction " + show_list(got) + " differs from the input " + show_list(l) +
             " (order was not preserved)";
    }
    if (cc.conc_machine && cc.conc_machine->run(prog) != l) return "backends disagree";
    return std::nullopt;
  });

  suite.randomized_once("reduction is distribution independent",
                        [&opts](Rng& rng, int) -> std::optional<std::string> {
    const auto l = random_list(rng, 40, -30, 30);
    const long long expected = sum_by_loop(l);
    const AlgebraSpec<long long> spec{
        [](const long long& a, const long long& b) { return a + b; }, 0};
    for (int p : opts.procs) {
      Machine m(p, Backend::sequential);
      for (int policy = 0; policy < 3; ++policy) {
        seq::List<seq::List<long long>> chunks;
        if (policy == 2) chunks = random_cuts(rng, l, p);
        const long long got = m.run([&](Ctx& ctx) {
          if (policy == 0) return reduce_par(ctx, spec, distribute(ctx, l, Policy::block));
          if (policy == 1) return reduce_par(ctx, spec, distribute(ctx, l, Policy::round_robin));
          return reduce_par(ctx, spec, distribute(ctx, l, chunks));
        });
        if (got != expected) {
          return "p=" + std::to_string(p) + " policy=" + std::to_string(policy) + " sum of " +
                 show_list(l) + " came out as " + show_ll(got) + ", expected " + show_ll(expected);
        }
      }
    }
    return std::nullopt;
  });

  suite.randomized("checked reduction accepts a lawful algebra",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 25, -30, 30);
    auto prog = [&l](Ctx& ctx) {
      const AlgebraSpec<long long> spec{
          [](const long long& a, const long long& b) { return a + b; }, 0};
      return reduce_par(ctx, spec, distribute(ctx, l, Policy::block), ContractChecks::on);
    };
    if (cc.seq_machine.run(prog) != sum_by_loop(l)) return "checked sum differs from the loop";
    if (cc.conc_machine && cc.conc_machine->run(prog) != sum_by_loop(l)) {
      return "backends disagree";
    }
    return std::nullopt;
  });

  suite.randomized("checked reduction rejects a non-associative operation",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    // 0 is neutral for this operation but (x,x,x) breaks associativity for
    // any nonzero x, so a nonzero leading element forces a rejection
    auto l = random_list(cc.rng, 15, -9, 9);
    l.insert(l.begin(), cc.rng.range(1, 9));
    auto prog = [&l](Ctx& ctx) {
      const AlgebraSpec<long long> spec{
          [](const long long& a, const long long& b) { return a + b + a * b * (a - b); }, 0};
      return reduce_par(ctx, spec, distribute(ctx, l, Policy::block), ContractChecks::on);
    };
    for (Machine* m : {&cc.seq_machine, cc.conc_machine}) {
      if (m == nullptr) continue;
      try {
        (void)m->run(prog);
        return "a non-associative operation passed checked reduction over " + show_list(l);
      } catch (const contract_error&) {
        // expected
      }
    }
    return std::nullopt;
  });

  suite.randomized("checked reduction rejects elements outside the invariant",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    auto l = random_list(cc.rng, 15, 0, 30);
    l.insert(l.begin() + static_cast<std::ptrdiff_t>(cc.rng.range(0, static_cast<long long>(l.size()))),
             cc.rng.range(-30, -1));
    auto prog = [&l](Ctx& ctx) {
      const AlgebraSpec<long long> spec{
          [](const long long& a, const long long& b) { return a + b; }, 0,
          [](const long long& x) { return x >= 0; }};
      return reduce_par(ctx, spec, distribute(ctx, l, Policy::block), ContractChecks::on);
    };
    try {
      (void)cc.seq_machine.run(prog);
      return "a negative element passed an x>=0 invariant in " + show_list(l);
    } catch (const contract_error&) {
      return std::nullopt;
    }
  });

  suite.once("checked reduction rejects the summary algebra outside its invariant",
             []() -> std::optional<std::string> {
    Machine m(2, Backend::sequential);
    auto prog = [](Ctx& ctx) {
      auto dl = mkpar(ctx, [](ProcId i) -> seq::List<MpsPair> {
        if (i == 0) return {MpsPair{0, 3}, MpsPair{-1, -1}, MpsPair{0, 0}};
        return {};
      });
      AlgebraSpec<MpsPair> spec{
          [](const MpsPair& a, const MpsPair& b) { return mps_combine(a, b); }, mps_neutral()};
      return reduce_par(ctx, spec, dl, ContractChecks::on);
    };
    try {
      (void)m.run(prog);
      return std::string("invariant-violating summaries were not rejected");
    } catch (const contract_error&) {
      return std::nullopt;
    }
  });

  return suite.take();
}

// ---------------------------------------------------------------------------
// mps: the maximum-prefix-sum application
// ---------------------------------------------------------------------------

namespace detail_suite {

/// Deliberately wrong combine used by the mutation flag: it ignores how far
/// the left segment's total carries into the right one.
inline MpsPair broken_combine(const MpsPair& a, const MpsPair& b) {
  return MpsPair{a.max_prefix > b.max_prefix ? a.max_prefix : b.max_prefix, a.total + b.total};
}

}  // namespace detail_suite

inline SuiteResult check_mps(const Options& opts) {
  using namespace detail_suite;
  Suite suite("mps", opts);

  auto combine = opts.mutate_mps
                     ? std::function<MpsPair(const MpsPair&, const MpsPair&)>(broken_combine)
                     : std::function<MpsPair(const MpsPair&, const MpsPair&)>(
                           [](const MpsPair& a, const MpsPair& b) { return mps_combine(a, b); });

  suite.randomized_once("summary is a homomorphism for concatenation",
                        [combine](Rng& rng, int) -> std::optional<std::string> {
    const auto l1 = random_list(rng, 25, -9, 9);
    const auto l2 = random_list(rng, 25, -9, 9);
    auto violated = [&combine](const seq::List<long long>& a, const seq::List<long long>& b) {
      return !(mps_pair(seq::concat(a, b)) == combine(mps_pair(a), mps_pair(b)));
    };
    if (!violated(l1, l2)) return std::nullopt;
    auto s1 = shrink_list(l1, [&](const seq::List<long long>& c) { return violated(c, l2); });
    auto s2 = shrink_list(l2, [&](const seq::List<long long>& c) { return violated(s1, c); });
    const MpsPair whole = mps_pair(seq::concat(s1, s2));
    const MpsPair combined = combine(mps_pair(s1), mps_pair(s2));
    std::ostringstream os;
    os << "summary(l1++l2) = " << whole << " but combine gave " << combined
       << " for l1=" << show_list(s1) << " l2=" << show_list(s2);
    return os.str();
  });

  suite.once("homomorphism holds exhaustively on short lists", [combine]() -> std::optional<std::string> {
    std::vector<seq::List<long long>> lists = {{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<seq::List<long long>> next;
      for (const auto& l : lists) {
        if (static_cast<int>(l.size()) != len - 1) continue;
        for (long long x = -2; x <= 2; ++x) {
          auto grown = l;
          grown.push_back(x);
          next.push_back(grown);
        }
      }
      lists.insert(lists.end(), next.begin(), next.end());
    }
    for (const auto& l1 : lists) {
      for (const auto& l2 : lists) {
        if (!(mps_pair(seq::concat(l1, l2)) == combine(mps_pair(l1), mps_pair(l2)))) {
          return "violated at l1=" + show_list(l1) + " l2=" + show_list(l2);
        }
      }
    }
    return std::nullopt;
  });

  suite.randomized("parallel, sequential and direct agree with the prefix oracle",
                    [](CaseCtx& cc) -> std::optional<std::string> {
    const auto l = random_list(cc.rng, 60, -50, 50);
    const Policy policy = cc.rng.flip() ? Policy::block : Policy::round_robin;
    const int p = cc.p;
    auto chain_breaks = [policy, p](const seq::List<long long>& candidate) {
      const long long oracle = mps_by_prefix_enumeration(candidate);
      if (max_prefix_sum(candidate) != oracle || mps_seq(candidate) != oracle) return true;
      Machine m(p, Backend::sequential);
      return m.run([&candidate, policy](Ctx& ctx) {
               return mps_par(ctx, distribute(ctx, candidate, policy));
             }) != oracle;
    };
    if (chain_breaks(l)) {
      const auto witness = shrink_list(l, chain_breaks);
      return "oracle chain broken on " + show_list(witness) + " (prefix oracle says " +
             std::to_string(mps_by_prefix_enumeration(witness)) + ")";
    }
    auto prog = [&l, policy](Ctx& ctx) { return mps_par(ctx, distribute(ctx, l, policy)); };
    if (cc.conc_machine && cc.conc_machine->run(prog) != mps_by_prefix_enumeration(l)) {
      return "concurrent parallel version differs from the prefix oracle on " + show_list(l);
    }
    return std::nullopt;
  });

  suite.randomized_once("combine is lawful on summaries", [combine](Rng& rng, int) -> std::optional<std::string> {
    const MpsPair a = mps_pair(random_list(rng, 15, -9, 9));
    const MpsPair b = mps_pair(random_list(rng, 15, -9, 9));
    const MpsPair c = mps_pair(random_list(rng, 15, -9, 9));
    std::ostringstream os;
    if (!(combine(combine(a, b), c) == combine(a, combine(b, c)))) {
      os << "not associative at a=" << a << " b=" << b << " c=" << c;
      return os.str();
    }
    if (!(combine(mps_neutral(), a) == a) || !(combine(a, mps_neutral()) == a)) {
      os << "neutral element fails at a=" << a;
      return os.str();
    }
    if (!mps_invariant(combine(a, b))) {
      os << "invariant not preserved at a=" << a << " b=" << b << ", got " << combine(a, b);
      return os.str();
    }
    const long long x = rng.range(-100, 100);
    if (!mps_invariant(mps_singleton(x))) {
      return "singleton summary of " + show_ll(x) + " violates the invariant";
    }
    return std::nullopt;
  });

  suite.randomized_once("maximum prefix sum bounds", [](Rng& rng, int) -> std::optional<std::string> {
    const auto l = random_list(rng, 40, -50, 50);
    const long long v = max_prefix_sum(l);
    if (v < 0) return "negative result on " + show_list(l);
    if (v < sum_by_loop(l)) return "result below the total sum on " + show_list(l);
    seq::List<long long> negative;
    for (long long x : l) negative.push_back(x > 0 ? -x : (x == 0 ? -1 : x));
    if (max_prefix_sum(negative) != 0) {
      return "all-negative list " + show_list(negative) + " did not give 0";
    }
    return std::nullopt;
  });

  suite.once("combine is not associative outside the invariant", []() -> std::optional<std::string> {
    long long violations = 0;
    long long inv_violations = 0;
    std::optional<std::string> witness;
    for (long long m1 = -2; m1 <= 2; ++m1)
      for (long long s1 = -2; s1 <= 2; ++s1)
        for (long long m2 = -2; m2 <= 2; ++m2)
          for (long long s2 = -2; s2 <= 2; ++s2)
            for (long long m3 = -2; m3 <= 2; ++m3)
              for (long long s3 = -2; s3 <= 2; ++s3) {
                const MpsPair a{m1, s1}, b{m2, s2}, c{m3, s3};
                const MpsPair left = mps_combine(mps_combine(a, b), c);
                const MpsPair right = mps_combine(a, mps_combine(b, c));
                if (left == right) continue;
                ++violations;
                const bool all_inv = mps_invariant(a) && mps_invariant(b) && mps_invariant(c);
                if (all_inv) {
                  ++inv_violations;
                  std::ostringstream os;
                  os << "associativity failed on invariant-respecting a=" << a << " b=" << b
                     << " c=" << c;
                  witness = os.str();
                } else if (!witness) {
                  std::ostringstream os;
                  os << "first witness a=" << a << " b=" << b << " c=" << c << ": ((a.b).c)="
                     << left << " vs (a.(b.c))=" << right;
                  witness = os.str();
                }
              }
    if (inv_violations > 0) return witness;  // the law must hold inside the invariant
    if (violations == 0) {
      return std::string("no non-associativity witness exists in the search box; "
                         "the operator should not be associative on arbitrary pairs");
    }
    return std::nullopt;
  });

  return suite.take();
}

// ---------------------------------------------------------------------------

inline std::vector<std::string> suite_names() {
  return {"core-laws", "stdlib", "skeletons", "mps"};
}

inline SuiteResult run_suite(const std::string& name, const Options& opts) {
  if (name == "core-laws") return check_core_laws(opts);
  if (name == "stdlib") return check_stdlib(opts);
  if (name == "skeletons") return check_skeletons(opts);
  if (name == "mps") return check_mps(opts);
  throw usage_error("unknown suite '" + name + "'; known suites: core-laws, stdlib, skeletons, mps");
}

}  // namespace bsml::checks
