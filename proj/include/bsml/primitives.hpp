#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "bsml/machine.hpp"
#include "bsml/par_vector.hpp"

namespace bsml {

/// A total-looking function over processor identifiers, defined exactly on
/// [0, p-1]. Results of proj and put have this shape; applying one outside
/// the domain is a defined domain error, never undefined behavior.
template <typename T>
class ProcFn {
 public:
  ProcFn(int nprocs, std::function<T(int)> fn) : nprocs_(nprocs), fn_(std::move(fn)) {}

  int nprocs() const { return nprocs_; }

  T operator()(int i) const {
    if (i < 0 || i >= nprocs_) {
      throw domain_error("processor-indexed function applied at " + std::to_string(i) +
                         ", domain is [0, " + std::to_string(nprocs_ - 1) + "]");
    }
    return fn_(i);
  }

 private:
  int nprocs_;
  std::function<T(int)> fn_;
};

namespace detail {

template <typename T>
void check_same_machine(const ExecCtx& ex, const ParVector<T>& v, const char* op) {
  if (v.machine_id() != ex.state->machine_id) {
    throw usage_error(std::string(op) + ": vector belongs to a different machine");
  }
}

/// Values only count as communication when they carry data; an absent
/// optional is the empty message.
template <typename M>
struct EmptyMessage {
  static bool check(const M&) { return false; }
};

template <typename M>
struct EmptyMessage<std::optional<M>> {
  static bool check(const std::optional<M>& m) { return !m.has_value(); }
};

template <typename M>
bool is_empty_message(const M& m) {
  return EmptyMessage<M>::check(m);
}

/// Bookkeeping of one communication superstep: the shared payload plus the
/// per-pair message counts destined for the trace.
template <typename Payload>
struct Exchange {
  int index;
  int nprocs;
  const char* op;
  Payload payload;
  std::vector<std::size_t> counts;

  Exchange(int idx, int p, const char* name, Payload pl)
      : index(idx),
        nprocs(p),
        op(name),
        payload(std::move(pl)),
        counts(static_cast<std::size_t>(p) * p, 0) {}

  std::size_t& count(int src, int dst) {
    return counts[static_cast<std::size_t>(src) * nprocs + dst];
  }
};

template <typename Payload, typename MakePayload>
std::shared_ptr<Exchange<Payload>> begin_superstep(ExecCtx& ex, const char* op,
                                                   MakePayload&& make_payload) {
  const int p = ex.state->nprocs;
  return ex.template shared_object<Exchange<Payload>>([&] {
    const int index = static_cast<int>(ex.state->comm_steps.fetch_add(1));
    return std::make_shared<Exchange<Payload>>(index, p, op, make_payload());
  });
}

/// Barrier closing the superstep; afterwards every deposited value is visible
/// to every strand. Exactly one strand forwards the record to the trace.
template <typename Payload>
void end_superstep(ExecCtx& ex, const Exchange<Payload>& step) {
  ex.barrier_wait();
  if (ex.should_publish() && ex.state->trace != nullptr) {
    ex.state->trace->add(SuperstepRecord{step.index, step.op, step.nprocs, step.counts});
  }
}

template <typename T>
std::shared_ptr<Slots<T>> fresh_slots(ExecCtx& ex) {
  return ex.template shared_object<Slots<T>>(
      [&] { return std::make_shared<Slots<T>>(ex.state->machine_id, ex.state->nprocs); });
}

}  // namespace detail

/// Builds the vector whose component at every processor i is f(i). Local
/// computation phase only: no data exchange, no synchronization.
template <typename F>
auto mkpar(Ctx& ctx, F&& f) {
  using T = std::decay_t<std::invoke_result_t<F&, ProcId>>;
  auto& ex = detail::internals(ctx);
  const int p = ctx.nprocs();
  auto slots = detail::fresh_slots<T>(ex);
  ex.for_local([&](int i) { slots->put(i, f(ProcId(i, p))); });
  return detail::wrap_slots<T>(std::move(slots));
}

/// Pointwise application of a vector of functions to a vector of values.
/// Local computation phase only.
template <typename F, typename A>
auto apply(Ctx& ctx, const ParVector<F>& fv, const ParVector<A>& vv) {
  using B = std::decay_t<std::invoke_result_t<const F&, const A&>>;
  auto& ex = detail::internals(ctx);
  detail::check_same_machine(ex, fv, "apply");
  detail::check_same_machine(ex, vv, "apply");
  auto fs = detail::slots_of(fv);
  auto vs = detail::slots_of(vv);
  auto slots = detail::fresh_slots<B>(ex);
  ex.for_local([&](int i) { slots->put(i, fs->at(i)(vs->at(i))); });
  return detail::wrap_slots<B>(std::move(slots));
}

/// Global conversion of a vector into a function on [0, p-1]. A collective:
/// every processor contributes its component to all the others, costing one
/// full communication superstep.
template <typename T>
ProcFn<T> proj(Ctx& ctx, const ParVector<T>& v) {
  static_assert(std::is_copy_constructible_v<T>,
                "values crossing a communication phase must be self-contained copyable data");
  auto& ex = detail::internals(ctx);
  detail::check_same_machine(ex, v, "proj");
  const int p = ctx.nprocs();
  auto step = detail::begin_superstep<char>(ex, "proj", [] { return '\0'; });
  ex.for_local([&](int src) {
    for (int dst = 0; dst < p; ++dst) {
      if (dst != src) step->count(src, dst) = 1;
    }
  });
  detail::end_superstep(ex, *step);
  auto slots = detail::slots_of(v);
  return ProcFn<T>(p, [slots](int i) -> T { return slots->at(i); });
}

/// Arbitrary communication pattern. Component src of the input encodes the
/// messages processor src addresses to every destination; component dst of
/// the result gives dst's received messages by sender:
///
///     put(tosend) at dst, applied to src  ==  tosend at src, applied to dst
///
/// Costs one full communication superstep.
template <typename F>
auto put(Ctx& ctx, const ParVector<F>& tosend) {
  using M = std::decay_t<std::invoke_result_t<const F&, ProcId>>;
  static_assert(std::is_copy_constructible_v<M>,
                "messages crossing a communication phase must be self-contained copyable data");
  auto& ex = detail::internals(ctx);
  detail::check_same_machine(ex, tosend, "put");
  const int p = ctx.nprocs();

  using Matrix = std::vector<std::optional<M>>;
  auto step = detail::begin_superstep<Matrix>(
      ex, "put", [p] { return Matrix(static_cast<std::size_t>(p) * p); });

  auto src_slots = detail::slots_of(tosend);
  ex.for_local([&](int src) {
    const F& message_of = src_slots->at(src);
    for (int dst = 0; dst < p; ++dst) {
      M msg = message_of(ProcId(dst, p));
      if (dst != src && !detail::is_empty_message(msg)) step->count(src, dst) = 1;
      step->payload[static_cast<std::size_t>(src) * p + dst].emplace(std::move(msg));
    }
  });
  detail::end_superstep(ex, *step);

  auto result = detail::fresh_slots<ProcFn<M>>(ex);
  ex.for_local([&](int dst) {
    result->put(dst, ProcFn<M>(p, [step, dst, p](int src) -> M {
                  return *step->payload[static_cast<std::size_t>(src) * p + dst];
                }));
  });
  return detail::wrap_slots<ProcFn<M>>(std::move(result));
}

}  // namespace bsml
