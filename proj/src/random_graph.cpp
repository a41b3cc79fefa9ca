#include "scoda/random_graph.hpp"

#include <cmath>
#include <vector>

#include "scoda/error.hpp"

namespace scoda {

Graph erdos_renyi(NodeId n, double p, Rng& rng) {
    if (!(p > 0.0) || p > 1.0) throw DomainError("edge probability must lie in (0, 1]");
    std::vector<Edge> edges;
    if (p == 1.0) {
        edges.reserve(static_cast<std::size_t>(n) * (n > 0 ? n - 1 : 0) / 2);
        for (NodeId v = 1; v < n; ++v)
            for (NodeId w = 0; w < v; ++w) edges.push_back({v, w});
        return Graph::from_edges(n, std::move(edges));
    }

    // Batagelj-Brandes: walk the lower triangle (v > w) in row-major order,
    // jumping over geometrically distributed runs of absent pairs.
    const double log_q = std::log1p(-p);
    std::uint64_t v = 1;
    double w = -1.0;
    while (v < n) {
        const double r = rng.uniform();
        w += 1.0 + std::floor(std::log1p(-r) / log_q);
        while (w >= static_cast<double>(v) && v < n) {
            w -= static_cast<double>(v);
            ++v;
        }
        if (v < n) edges.push_back({static_cast<NodeId>(v), static_cast<NodeId>(w)});
    }
    return Graph::from_edges(n, std::move(edges));
}

}  // namespace scoda
