#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scoda/cover.hpp"
#include "scoda/error.hpp"
#include "scoda/graph.hpp"
#include "scoda/stream.hpp"

namespace scoda {

/// The algorithm's entire working memory: one degree counter and one
/// community label per node.
struct ScodaState {
    std::vector<Degree> degree;
    std::vector<NodeId> label;
    Degree threshold = 1;

    ScodaState(NodeId n, Degree threshold);

    NodeId size() const noexcept { return static_cast<NodeId>(label.size()); }

    /// Processes one streamed edge. Returns true when it was a transfer edge,
    /// i.e. both updated degrees were within the threshold and a label moved.
    bool process(NodeId u, NodeId v) noexcept {
        const Degree du = ++degree[u];
        const Degree dv = ++degree[v];
        if (du > threshold || dv > threshold) return false;
        if (du <= dv)
            label[u] = label[v];
        else
            label[v] = label[u];
        return true;
    }

    std::size_t memory_bytes() const noexcept {
        return degree.size() * sizeof(Degree) + label.size() * sizeof(NodeId);
    }
};

/// Final assignment of every node to a community label in [0, n).
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<NodeId> labels) : labels_(std::move(labels)) {}

    NodeId node_count() const noexcept { return static_cast<NodeId>(labels_.size()); }
    const std::vector<NodeId>& labels() const noexcept { return labels_; }
    NodeId label(NodeId u) const { return labels_.at(u); }

    /// Communities ordered by smallest member, members ascending.
    std::vector<std::vector<NodeId>> communities() const;
    /// Labels renumbered 0..k-1 in order of first node appearance.
    std::vector<NodeId> canonical_labels() const;

    std::size_t community_count() const;
    std::size_t singleton_count() const;
    std::size_t largest_community_size() const;

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::vector<NodeId> labels_;
};

/// How the degree threshold D is chosen from the degree distribution.
class ThresholdStrategy {
public:
    enum class Kind { Mode, Median, Average, Fixed };

    static ThresholdStrategy mode() { return ThresholdStrategy(Kind::Mode, 0); }
    static ThresholdStrategy median() { return ThresholdStrategy(Kind::Median, 0); }
    static ThresholdStrategy average() { return ThresholdStrategy(Kind::Average, 0); }
    /// Throws ValidationError for D = 0.
    static ThresholdStrategy fixed(Degree d);

    /// Parses "mode", "median", "avg"/"average" or "fixed:D".
    static ThresholdStrategy parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    Degree fixed_value() const noexcept { return fixed_; }
    std::string to_string() const;

private:
    ThresholdStrategy(Kind kind, Degree fixed) : kind_(kind), fixed_(fixed) {}

    Kind kind_;
    Degree fixed_;
};

/// Resolves the strategy against the degree statistics. Median and Average
/// round half-up and clamp to >= 1. An undefined mode throws DomainError
/// unless a fallback is given.
Degree resolve_threshold(const ThresholdStrategy& strategy, const DegreeStats& stats,
                         std::optional<Degree> fallback = std::nullopt);

namespace detail {
void check_run_args(const Graph& g, const EdgeStream& stream, Degree threshold);
}

/// Runs the algorithm and calls on_edge(position, oriented_edge, transfer, state)
/// after every processed edge. Used for instrumentation and step-wise tests.
template <typename OnEdge>
Partition run_observed(const Graph& g, const EdgeStream& stream, Degree threshold, OnEdge&& on_edge) {
    detail::check_run_args(g, stream, threshold);
    ScodaState state(g.node_count(), threshold);
    for (std::size_t j = 0; j < stream.size(); ++j) {
        const Edge e = stream.at(g, j);
        const bool transfer = state.process(e.u, e.v);
        on_edge(j, e, transfer, static_cast<const ScodaState&>(state));
    }
    return Partition(std::move(state.label));
}

/// One pass over the stream with threshold D.
/// Throws ValidationError for D = 0 and ContractError when the stream length
/// differs from the edge count.
Partition run(const Graph& g, const EdgeStream& stream, Degree threshold);

/// Same as run() but with the final state exposed (degrees included).
ScodaState run_state(const Graph& g, const EdgeStream& stream, Degree threshold);

/// Splits the stream into `workers` contiguous chunks processed concurrently
/// against shared arrays. Degree increments are atomic read-modify-writes and
/// labels are relaxed atomic loads/stores; there is no ordering across cells.
/// workers = 1 reproduces run() exactly.
Partition run_parallel(const Graph& g, const EdgeStream& stream, Degree threshold, unsigned workers);

struct Extraction {
    /// Groups of internal ids (or external ids, for the graph overload).
    Cover cover;
    std::size_t dropped = 0;
};

/// Groups nodes by label and drops communities smaller than min_size.
Extraction extract_communities(const Partition& p, std::size_t min_size = 1);
/// As above, with members translated to the graph's external ids.
Extraction extract_communities(const Partition& p, const Graph& g, std::size_t min_size = 1);

}  // namespace scoda
