#pragma once

// Specification-only observation of parallel vectors. Mirrors the split
// between executable code and specification: programs convert vectors with
// proj/put and pay a superstep for it, while specifications and tests may
// look inside components directly, for free. Library and application code
// must never include this header; tests, the property suites and the CLI
// tracer enable it explicitly.
#ifndef BSML_OBSERVE
#error "bsml/observe.hpp is a test/specification surface; compile with -DBSML_OBSERVE to use it"
#endif

#include <vector>

#include "bsml/machine.hpp"
#include "bsml/par_vector.hpp"

namespace bsml::observe {

/// Component held by processor i. Defined only once the creating run has
/// finished; invalid i is rejected like any processor identifier.
template <typename T>
const T& get(const ParVector<T>& v, int i) {
  ProcId checked(i, v.extent());
  return detail::slots_of(v)->at(checked.value());
}

/// All components in processor order.
template <typename T>
std::vector<T> all(const ParVector<T>& v) {
  std::vector<T> values;
  values.reserve(static_cast<std::size_t>(v.extent()));
  auto slots = detail::slots_of(v);
  for (int i = 0; i < v.extent(); ++i) values.push_back(slots->at(i));
  return values;
}

/// Extensional equality: same extent and componentwise equal values.
template <typename T>
bool equal(const ParVector<T>& v, const ParVector<T>& w) {
  if (v.extent() != w.extent()) return false;
  auto vs = detail::slots_of(v);
  auto ws = detail::slots_of(w);
  for (int i = 0; i < v.extent(); ++i) {
    if (!(vs->at(i) == ws->at(i))) return false;
  }
  return true;
}

}  // namespace bsml::observe
