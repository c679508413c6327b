#pragma once

// Power-of-two-choices placement: per VNF, sample two candidate servers from
// a capacity+latency prefilter, route both from the anchor, keep the cheaper.
// One pass over the chain by default, with an optional bounded backtrack.

#include <optional>
#include <random>

#include "nsp/placement.hpp"

namespace nsp {

struct P2cConfig {
  int32_t resample_attempts = 4;  // extra draws per VNF when a sampled candidate has no path
  int32_t backtrack_budget = 0;   // times the search may undo the previous VNF's choice
  int32_t sample_choices = 2;     // 1 = single-choice ablation (no comparison)

  void validate() const;  // throws std::invalid_argument
};

// Uniform unordered pair of distinct indices in [0, n); n >= 2.
std::pair<uint64_t, uint64_t> sample_two_distinct(std::mt19937_64& rng, uint64_t n);

// Returns a feasible placement or nullopt on rejection (an admission outcome,
// not an error). Deterministic given the rng state. Residuals in `psn` are
// restored before returning; the caller commits the returned placement.
std::optional<Placement> solve_p2c(Psn& psn, const Nspr& nspr, const P2cConfig& cfg,
                                   const MinLatencyTable& lat_table, std::mt19937_64& rng);

}  // namespace nsp
