#pragma once

// Shared test fixtures: a hand-built 4-server diamond substrate with a
// 2-VNF chain request, tiny generated substrates, and randomized instances
// for property tests.

#include <random>

#include "nsp/nspr.hpp"
#include "nsp/placement.hpp"
#include "nsp/psn.hpp"

namespace nsp::test {

// Servers n1(4/4) n2(4/4) n3(2/2) n4(8/8), unit weights; links
// n1-n2(lat 10, bw 10), n1-n3(5,5), n3-n2(5,5), n2-n4(20,20). Node ids are
// 0-based: n1=0, n2=1, n3=2, n4=3. n1 doubles as the access anchor.
Psn fixture_d4();

constexpr int32_t kD4_N1 = 0;
constexpr int32_t kD4_N2 = 1;
constexpr int32_t kD4_N3 = 2;
constexpr int32_t kD4_N4 = 3;

// Chain v0(2/2) -> v1(2/2); access->v0 (bw 1, lat 10), v0->v1 (bw 4, lat 15);
// end-to-end budget 20; anchored at n1.
Nspr nspr_x();

// One access switch (id 0) plus `n_servers` uniform servers in a star.
Psn star_psn(int32_t n_servers, int64_t cpu, int64_t ram, int64_t link_bw, int64_t link_lat);

// Random connected all-server graph with <= max_nodes nodes; random
// capacities, bandwidths and latencies. Suitable as a placement substrate
// (every node is a server in one DC).
Psn random_graph_psn(std::mt19937_64& rng, int32_t max_nodes);

// Random chain request with <= max_vnfs VNFs anchored at a random node of
// `psn`, with demand ranges scaled to the fixture capacities.
Nspr random_nspr(std::mt19937_64& rng, const Psn& psn, int32_t max_vnfs, bool tight = false);

// Pre-loads the substrate by directly consuming a random fraction of
// server/link resources (keeps the ledger consistent for solver tests by
// leaving the usage attributed to no slice).
void random_preload(std::mt19937_64& rng, Psn& psn, double max_fill);

}  // namespace nsp::test
