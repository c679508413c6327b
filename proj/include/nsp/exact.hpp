#pragma once

// Deterministic optimal placement by depth-first branch-and-bound over the
// full constraint set. Exact relative to the hop bound; intended for small
// substrates, where it serves as the optimum baseline.

#include <optional>

#include "nsp/placement.hpp"

namespace nsp {

struct ExactConfig {
  std::optional<int32_t> hop_bound;      // max hops per virtual-link path; nullopt = unbounded
  std::optional<int64_t> time_budget_ms; // wall-clock cutoff; nullopt = none

  void validate() const;  // throws std::invalid_argument
};

struct ExactResult {
  std::optional<Placement> placement;
  bool budget_exhausted = false;
};

// Searches VNFs in chain order, servers in ascending id, candidate paths in
// ascending incremental cost; prunes on the incumbent with a zero lower
// bound on the remainder. Equal-cost optima resolve to the lexicographically
// smallest host vector, then path sequence. Residuals in `psn` are restored
// before returning; the caller commits the returned placement.
ExactResult solve_exact(Psn& psn, const Nspr& nspr, const ExactConfig& cfg = {});

}  // namespace nsp
