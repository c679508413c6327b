#pragma once

// Residual-resource ledger operations. Solvers use the same reservation
// arithmetic for their tentative state, so there is exactly one code path
// adjusting usage counters.

#include <span>

#include "nsp/placement.hpp"

namespace nsp {

struct CommitError : std::runtime_error {
  Violation violation;
  explicit CommitError(Violation v) : std::runtime_error("commit rejected: " + v.describe()), violation(v) {}
};

// Single-entry reservation ops; every one re-checks 0 <= used <= cap and
// throws InvariantError on a breach.
void reserve_host(Psn& psn, int32_t server_id, int64_t cpu, int64_t ram);
void unreserve_host(Psn& psn, int32_t server_id, int64_t cpu, int64_t ram);
void reserve_path(Psn& psn, std::span<const int32_t> nodes, int64_t bw);
void unreserve_path(Psn& psn, std::span<const int32_t> nodes, int64_t bw);

// Applies a placement to the ledger. Validates first and throws CommitError
// carrying the first violated constraint; on success the update is atomic.
void commit(Psn& psn, const Nspr& nspr, const Placement& p);

// Exact inverse of commit. Throws InvariantError when the subtraction would
// underflow, which is how a double release or a never-committed placement
// surfaces.
void release(Psn& psn, const Nspr& nspr, const Placement& p);

}  // namespace nsp
