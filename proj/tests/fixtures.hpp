#pragma once

// Small graphs and independent reference implementations used as oracles.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "scoda/graph.hpp"
#include "scoda/stream.hpp"

namespace fixtures {

using scoda::Edge;
using scoda::Graph;
using scoda::NodeId;

inline Graph triangle() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

inline Graph path3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }

inline Graph clique(NodeId n) {
    std::vector<Edge> e;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId v = u + 1; v < n; ++v) e.push_back({u, v});
    return Graph::from_edges(n, std::move(e));
}

/// Triangles {0,1,2} and {3,4,5} joined by the bridge 2-3.
inline Graph two_triangles() {
    return Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
}

inline Graph star(NodeId leaves) {
    std::vector<Edge> e;
    for (NodeId v = 1; v <= leaves; ++v) e.push_back({0, v});
    return Graph::from_edges(leaves + 1, std::move(e));
}

/// Square 0-1-2-3 with diagonal 0-2 and a pendant 3-4.
inline Graph kite() { return Graph::from_edges(5, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {3, 4}}); }

/// Every graph with m <= 6 used by the exhaustive checks.
inline std::vector<Graph> small_graphs() {
    return {Graph::from_edges(2, {{0, 1}}),
            path3(),
            triangle(),
            Graph::from_edges(4, {{0, 1}, {2, 3}}),
            star(3),
            Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
            clique(4),
            kite(),
            Graph::from_edges(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {2, 3}}),
            Graph::from_edges(7, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}})};
}

/// Straight-line transcription of the algorithm over an explicit ordered
/// list of oriented edges, with 1-based arrays as in the pseudocode.
inline std::vector<NodeId> reference_scoda(NodeId n, const std::vector<Edge>& ordered, unsigned D) {
    std::vector<long> d(n + 1, 0);
    std::vector<long> c(n + 1, 0);
    for (NodeId i = 1; i <= n; ++i) {
        d[i] = 0;
        c[i] = i;
    }
    for (const Edge& e : ordered) {
        const NodeId u = e.u + 1;
        const NodeId v = e.v + 1;
        d[u] = d[u] + 1;
        d[v] = d[v] + 1;
        if (d[u] <= static_cast<long>(D) && d[v] <= static_cast<long>(D)) {
            if (d[u] <= d[v])
                c[u] = c[v];
            else
                c[v] = c[u];
        }
    }
    std::vector<NodeId> out(n);
    for (NodeId i = 1; i <= n; ++i) out[i - 1] = static_cast<NodeId>(c[i] - 1);
    return out;
}

/// Calls visit(stream) for each of the m! * 2^m (order, flip) combinations.
inline void for_each_stream(std::size_t m, const std::function<void(const scoda::EdgeStream&)>& visit) {
    std::vector<scoda::EdgeIndex> order(m);
    std::iota(order.begin(), order.end(), 0U);
    do {
        for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
            std::vector<bool> flip(m);
            for (std::size_t e = 0; e < m; ++e) flip[e] = (mask >> e) & 1U;
            visit(scoda::EdgeStream(order, flip));
        }
    } while (std::next_permutation(order.begin(), order.end()));
}

/// Oriented edge list presented by a stream.
inline std::vector<Edge> presented(const Graph& g, const scoda::EdgeStream& s) {
    std::vector<Edge> out;
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto e = g.edges()[s.order()[j]];
        out.push_back(s.flipped(s.order()[j]) ? Edge{e.v, e.u} : e);
    }
    return out;
}

/// Group sizes of a label vector.
inline std::vector<std::size_t> group_sizes(const std::vector<NodeId>& labels) {
    std::map<NodeId, std::size_t> count;
    for (auto l : labels) ++count[l];
    std::vector<std::size_t> out;
    for (auto [l, c] : count) out.push_back(c);
    return out;
}

}  // namespace fixtures
