#pragma once

#include <stdexcept>
#include <string>

namespace bsml {

/// Root of the library's error hierarchy. Every defined failure mode maps to
/// a subclass; violating a documented precondition never yields silent
/// garbage, it raises one of these.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Machine construction rejected (e.g. a non-positive processor count).
struct config_error : error {
  explicit config_error(const std::string& what) : error(what) {}
};

/// API misuse: mixing vectors of different machines, misaligned replicated
/// control flow, running on a busy machine.
struct usage_error : error {
  explicit usage_error(const std::string& what) : error(what) {}
};

/// A partial function was applied outside its domain, e.g. a processor-indexed
/// function evaluated outside [0, p-1].
struct domain_error : error {
  explicit domain_error(const std::string& what) : error(what) {}
};

/// A checkable precondition did not hold (empty-list maximum, negative init
/// length, unwrapping an absent optional, malformed explicit distribution).
struct precondition_error : error {
  explicit precondition_error(const std::string& what) : error(what) {}
};

/// Broadcast from an invalid root processor.
struct bcast_error : error {
  explicit bcast_error(const std::string& what) : error(what) {}
};

/// Checked-mode algebra validation failed: a sampled law violation or an
/// element outside the declared invariant.
struct contract_error : error {
  explicit contract_error(const std::string& what) : error(what) {}
};

}  // namespace bsml
