#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "bsml/detail/barrier.hpp"
#include "bsml/detail/registry.hpp"
#include "bsml/errors.hpp"
#include "bsml/trace.hpp"

namespace bsml {

enum class Backend { sequential, concurrent };

inline const char* to_string(Backend b) {
  return b == Backend::sequential ? "sequential" : "concurrent";
}

/// Validated processor identifier: an integer checked against [0, p-1] at
/// construction. Converts to int so arithmetic on identifiers reads plainly.
class ProcId {
 public:
  ProcId(int id, int nprocs) : id_(id) {
    if (nprocs < 1 || id < 0 || id >= nprocs) {
      throw domain_error("processor id " + std::to_string(id) + " outside [0, " +
                         std::to_string(nprocs - 1) + "]");
    }
  }

  int value() const { return id_; }
  operator int() const { return id_; }

 private:
  int id_;
};

class Ctx;

namespace detail {

/// Shared state of one program run: trace sink, alignment registry, barrier,
/// superstep counter, failure latch.
struct RunState {
  std::uint64_t machine_id;
  int nprocs;
  Backend backend;
  Trace* trace;
  AlignedRegistry registry;
  AbortableBarrier barrier;
  std::atomic<std::uint64_t> comm_steps{0};
  std::atomic<bool> failed{false};

  RunState(std::uint64_t id, int p, Backend b, Trace* t)
      : machine_id(id), nprocs(p), backend(b), trace(t), registry(p), barrier(p) {}
};

/// Per-execution-strand view of a run. The sequential driver uses pid -1 and
/// evaluates every processor itself; concurrent workers each own one pid.
struct ExecCtx {
  RunState* state;
  int pid;
  std::uint64_t next_key = 0;

  bool driver() const { return pid < 0; }

  /// Runs f once per locally owned processor.
  template <typename F>
  void for_local(F&& f) {
    if (driver()) {
      for (int i = 0; i < state->nprocs; ++i) f(i);
    } else {
      f(pid);
    }
  }

  /// Object shared by all strands for the current (aligned) primitive call.
  template <typename T, typename Make>
  std::shared_ptr<T> shared_object(Make&& make) {
    if (driver()) return make();
    if (state->failed.load(std::memory_order_relaxed)) throw run_aborted{};
    return state->registry.template fetch<T>(next_key++, std::forward<Make>(make));
  }

  void barrier_wait() {
    if (!driver()) state->barrier.arrive_and_wait();
  }

  /// At most one strand publishes each trace record.
  bool should_publish() const { return driver() || pid == 0; }
};

ExecCtx& internals(Ctx& ctx);

}  // namespace detail

/// Execution context a parallel program runs under. Programs see the global
/// view only: machine width plus the primitives. Per-processor identity
/// surfaces solely through the functions handed to mkpar and put.
class Ctx {
 public:
  int nprocs() const { return exec_.state->nprocs; }
  Backend backend() const { return exec_.state->backend; }

  /// Checked identifier for processor i of this machine.
  ProcId proc(int i) const { return ProcId(i, nprocs()); }

  Ctx(const Ctx&) = delete;
  Ctx& operator=(const Ctx&) = delete;

 private:
  explicit Ctx(detail::ExecCtx exec) : exec_(exec) {}
  friend class Machine;
  friend detail::ExecCtx& detail::internals(Ctx&);
  detail::ExecCtx exec_;
};

namespace detail {
inline ExecCtx& internals(Ctx& ctx) { return ctx.exec_; }
}

/// A BSP machine: a fixed number of processors animated by one of two
/// backends. The sequential backend evaluates programs single-threaded and is
/// the reference semantics; the concurrent backend runs one worker thread per
/// processor, local phases free-running and communication phases closed by a
/// barrier. Width is immutable for the machine's lifetime and every vector
/// created under the machine has exactly that extent.
class Machine {
 public:
  Machine(int nprocs, Backend backend)
      : nprocs_(nprocs), backend_(backend), id_(fresh_id()) {
    if (nprocs < 1) {
      throw config_error("machine needs at least one processor, got " +
                         std::to_string(nprocs));
    }
  }

  int nprocs() const { return nprocs_; }
  Backend backend() const { return backend_; }
  std::uint64_t id() const { return id_; }

  ProcId proc(int i) const { return ProcId(i, nprocs_); }

  /// Executes a program. The program must be a pure function of the context:
  /// deterministic, no effects other than through the primitives, control
  /// flow independent of any single processor's local values. The result must
  /// be copyable; on the concurrent backend it is the (replicated) value
  /// computed by processor 0.
  template <typename Prog>
  auto run(Prog&& prog) {
    return run_impl(prog, nullptr);
  }

  /// Same, recording one SuperstepRecord per communication superstep. Any
  /// previous contents of the trace are discarded.
  template <typename Prog>
  auto run(Prog&& prog, Trace& trace) {
    trace.clear();
    return run_impl(prog, &trace);
  }

 private:
  template <typename Prog>
  auto run_impl(Prog& prog, Trace* trace) -> std::decay_t<std::invoke_result_t<Prog&, Ctx&>> {
    using R = std::decay_t<std::invoke_result_t<Prog&, Ctx&>>;
    static_assert(!std::is_void_v<R>, "programs must return an observable value");

    bool expected = false;
    if (!running_.compare_exchange_strong(expected, true)) {
      throw usage_error("machine is already running a program");
    }
    struct Release {
      std::atomic<bool>* flag;
      ~Release() { flag->store(false); }
    } release{&running_};

    detail::RunState state(id_, nprocs_, backend_, trace);

    if (backend_ == Backend::sequential) {
      Ctx ctx{detail::ExecCtx{&state, -1}};
      return prog(ctx);
    }

    std::vector<std::optional<R>> results(static_cast<std::size_t>(nprocs_));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nprocs_));
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(nprocs_));
    for (int pid = 0; pid < nprocs_; ++pid) {
      workers.emplace_back([&state, &prog, &results, &errors, pid] {
        try {
          Ctx ctx{detail::ExecCtx{&state, pid}};
          results[static_cast<std::size_t>(pid)].emplace(prog(ctx));
        } catch (const detail::run_aborted&) {
          // another worker failed first; unwound at a barrier
        } catch (...) {
          errors[static_cast<std::size_t>(pid)] = std::current_exception();
          state.failed.store(true);
          state.barrier.abort();
        }
      });
    }
    for (auto& w : workers) w.join();

    // Deterministic error reporting: the lowest failing processor wins.
    for (int pid = 0; pid < nprocs_; ++pid) {
      if (errors[static_cast<std::size_t>(pid)]) {
        std::rethrow_exception(errors[static_cast<std::size_t>(pid)]);
      }
    }
    return std::move(*results[0]);
  }

  static std::uint64_t fresh_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  int nprocs_;
  Backend backend_;
  std::uint64_t id_;
  std::atomic<bool> running_{false};
};

}  // namespace bsml
