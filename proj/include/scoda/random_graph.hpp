#pragma once

#include "scoda/graph.hpp"
#include "scoda/rng.hpp"

namespace scoda {

/// G(n, p): every unordered pair is an edge independently with probability p.
/// Isolated nodes are kept. Uses geometric skipping, so the cost is O(n + m).
/// Throws DomainError unless 0 < p <= 1.
Graph erdos_renyi(NodeId n, double p, Rng& rng);

}  // namespace scoda
