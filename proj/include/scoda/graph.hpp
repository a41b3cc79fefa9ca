#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

namespace scoda {

/// Contiguous node index in [0, n).
using NodeId = std::uint32_t;
/// Node identifier as it appears in input files.
using ExternalId = std::uint64_t;
/// Node degree, also the type of the threshold D.
using Degree = std::uint32_t;

struct Edge {
    NodeId u;
    NodeId v;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct LoadOptions {
    /// Drop repeated undirected edges instead of rejecting the input.
    bool dedupe = false;
};

/// Immutable simple undirected graph stored as an edge list.
///
/// Internal ids are dense; the mapping back to the ids of the source file is
/// kept alongside. Graphs built directly from internal edges use the identity
/// mapping and store no table.
class Graph {
public:
    Graph() = default;

    /// Builds a graph over nodes [0, n) with identity id mapping.
    /// Throws ValidationError on self-loops, duplicate edges, out-of-range
    /// endpoints, or bad weights.
    static Graph from_edges(NodeId n, std::vector<Edge> edges, std::vector<double> weights = {});

    /// Builds a graph whose node i is called external_ids[i] in files.
    static Graph from_edges(std::vector<ExternalId> external_ids, std::vector<Edge> edges,
                            std::vector<double> weights = {});

    NodeId node_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    std::span<const Edge> edges() const noexcept { return edges_; }

    bool weighted() const noexcept { return !weights_.empty(); }
    std::span<const double> weights() const noexcept { return weights_; }

    ExternalId external_id(NodeId u) const;
    std::optional<NodeId> internal_id(ExternalId x) const;

    /// Number of self-loop lines skipped by the loader.
    std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }
    /// Number of repeated undirected edges skipped by the loader (dedupe mode).
    std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

    /// Degree of every node.
    std::vector<Degree> degrees() const;

private:
    friend Graph load_graph(std::istream&, const LoadOptions&);

    void validate() const;

    NodeId n_ = 0;
    std::vector<Edge> edges_;
    std::vector<double> weights_;
    std::vector<ExternalId> external_ids_;  // empty means identity
    std::unordered_map<ExternalId, NodeId> internal_ids_;
    std::size_t self_loops_dropped_ = 0;
    std::size_t duplicates_dropped_ = 0;
};

/// Reads a SNAP-style edge list: '#' comment lines, blank lines, and lines of
/// two non-negative integer ids with an optional positive weight.
/// Internal ids follow first appearance. Self-loops are dropped and counted.
Graph load_graph(std::istream& in, const LoadOptions& options = {});
Graph load_graph_file(const std::filesystem::path& path, const LoadOptions& options = {});

/// Degree distribution summary used to pick the threshold D.
struct DegreeStats {
    std::vector<Degree> degrees;
    double average = 0.0;
    /// Lower median over all nodes, leaves included.
    double median = 0.0;
    /// Most frequent degree among degrees > 1, smallest on ties.
    /// Empty when every node has degree <= 1.
    std::optional<Degree> mode;
    Degree max = 0;
    /// m / (n(n-1)/2).
    double density = 0.0;
    std::map<Degree, std::size_t> histogram;

    /// Throws DomainError when the mode is undefined.
    Degree mode_or_throw() const;
};

DegreeStats degree_stats(const Graph& g);

/// Structural quantities of a node set C.
struct CommunityStats {
    std::vector<NodeId> members;        // sorted, unique
    std::size_t incident_edges = 0;     // |e(C)|
    std::size_t internal_edges = 0;     // |e(C,C)|
    std::size_t boundary_edges = 0;     // |e(C,~C)|
    std::vector<NodeId> boundary;       // nodes of C with a neighbour outside
    double conductance = 0.0;
    double pseudo_conductance = 0.0;
    /// Aligned with members.
    std::vector<Degree> degree;
    std::vector<Degree> outside_degree;
    std::vector<double> out_degree_fraction;
};

/// Throws ValidationError for ids >= n or an empty set, DomainError when C
/// touches no edge.
CommunityStats community_stats(const Graph& g, std::span<const NodeId> community);

}  // namespace scoda
