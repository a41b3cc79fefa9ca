#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scoda/graph.hpp"

namespace scoda {

using EdgeIndex = std::uint32_t;

/// A replayable random presentation order of a graph's edges.
///
/// Position j of the stream presents edge order()[j]; that edge is given as
/// (v, u) instead of (u, v) when flipped(order()[j]) is set.
class EdgeStream {
public:
    EdgeStream() = default;

    /// Wraps an explicit order. Throws ValidationError unless order is a
    /// permutation of [0, m) and flip has length m.
    EdgeStream(std::vector<EdgeIndex> order, std::vector<bool> flip, std::uint64_t seed = 0);

    std::size_t size() const noexcept { return order_.size(); }
    bool empty() const noexcept { return order_.empty(); }
    std::span<const EdgeIndex> order() const noexcept { return order_; }
    bool flipped(EdgeIndex e) const { return flip_[e]; }
    const std::vector<bool>& flips() const noexcept { return flip_; }
    std::uint64_t seed() const noexcept { return seed_; }

    /// The oriented edge at stream position j.
    Edge at(const Graph& g, std::size_t position) const {
        const EdgeIndex e = order_[position];
        const Edge edge = g.edges()[e];
        return flip_[e] ? Edge{edge.v, edge.u} : edge;
    }

    /// Bytes held by the order and flip arrays.
    std::size_t memory_bytes() const noexcept { return order_.size() * sizeof(EdgeIndex) + (flip_.size() + 7) / 8; }

    friend bool operator==(const EdgeStream&, const EdgeStream&) = default;

private:
    std::vector<EdgeIndex> order_;
    std::vector<bool> flip_;
    std::uint64_t seed_ = 0;
};

/// Uniform permutation by Fisher-Yates, then one fair coin per edge for its
/// direction. The draws for a given (m, seed) are fixed across platforms.
EdgeStream shuffle(std::size_t m, std::uint64_t seed);

/// Permutation distributed as successive sampling without replacement with
/// probability proportional to the remaining weights. Throws ValidationError
/// on a non-positive or non-finite weight.
EdgeStream weighted_shuffle(std::span<const double> weights, std::uint64_t seed);

/// weighted_shuffle for weighted graphs, shuffle otherwise.
EdgeStream make_stream(const Graph& g, std::uint64_t seed);

}  // namespace scoda
