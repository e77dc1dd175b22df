#pragma once

#include <cstdint>
#include <memory>
#include <utility>

#include "bsml/detail/slots.hpp"

namespace bsml {

template <typename T>
class ParVector;

namespace detail {

template <typename T>
std::shared_ptr<Slots<T>> slots_of(const ParVector<T>& v);

template <typename T>
ParVector<T> wrap_slots(std::shared_ptr<Slots<T>> slots);

}  // namespace detail

/// A parallel vector: one value of type T per processor of the machine that
/// created it. The handle is an immutable value; copying it is cheap and it
/// may move freely between threads. Programs cannot read components directly:
/// the only ways to look inside are the communication primitives (inside a
/// program) and the observation surface in bsml/observe.hpp (tests, tracing).
template <typename T>
class ParVector {
 public:
  using value_type = T;

  /// Extent, always the width of the owning machine.
  int extent() const { return slots_->extent(); }

  /// Identifier of the machine the vector was created under.
  std::uint64_t machine_id() const { return slots_->machine_id(); }

 private:
  explicit ParVector(std::shared_ptr<detail::Slots<T>> slots) : slots_(std::move(slots)) {}

  friend std::shared_ptr<detail::Slots<T>> detail::slots_of<T>(const ParVector<T>&);
  friend ParVector<T> detail::wrap_slots<T>(std::shared_ptr<detail::Slots<T>>);

  std::shared_ptr<detail::Slots<T>> slots_;
};

namespace detail {

template <typename T>
std::shared_ptr<Slots<T>> slots_of(const ParVector<T>& v) {
  return v.slots_;
}

template <typename T>
ParVector<T> wrap_slots(std::shared_ptr<Slots<T>> slots) {
  return ParVector<T>(std::move(slots));
}

}  // namespace detail

}  // namespace bsml
