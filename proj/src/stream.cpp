#include "scoda/stream.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "scoda/error.hpp"
#include "scoda/rng.hpp"

namespace scoda {

namespace {

void check_size(std::size_t m) {
    if (m > std::numeric_limits<EdgeIndex>::max())
        throw ValidationError("edge count " + std::to_string(m) + " exceeds 32-bit edge indices");
}

// Flip bits are drawn 64 at a time after the permutation.
std::vector<bool> draw_flips(std::size_t m, Rng& rng) {
    std::vector<bool> flip(m);
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (i % 64 == 0) bits = rng.next();
        flip[i] = (bits >> (i % 64)) & 1U;
    }
    return flip;
}

}  // namespace

EdgeStream::EdgeStream(std::vector<EdgeIndex> order, std::vector<bool> flip, std::uint64_t seed)
    : order_(std::move(order)), flip_(std::move(flip)), seed_(seed) {
    check_size(order_.size());
    if (flip_.size() != order_.size())
        throw ValidationError("flip length " + std::to_string(flip_.size()) + " != order length " +
                              std::to_string(order_.size()));
    std::vector<bool> seen(order_.size(), false);
    for (EdgeIndex e : order_) {
        if (e >= order_.size() || seen[e]) throw ValidationError("edge order is not a permutation");
        seen[e] = true;
    }
}

EdgeStream shuffle(std::size_t m, std::uint64_t seed) {
    check_size(m);
    Rng rng(seed);
    std::vector<EdgeIndex> order(m);
    std::iota(order.begin(), order.end(), EdgeIndex{0});
    for (std::size_t i = m; i > 1; --i) {
        const std::size_t j = rng.below(i);
        std::swap(order[i - 1], order[j]);
    }
    auto flip = draw_flips(m, rng);
    return EdgeStream(std::move(order), std::move(flip), seed);
}

EdgeStream weighted_shuffle(std::span<const double> weights, std::uint64_t seed) {
    const std::size_t m = weights.size();
    check_size(m);
    for (double w : weights)
        if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("edge weights must be positive and finite");

    // Exponential race: edge e finishes at Exp(w_e); the order of finishing
    // times is successive sampling proportional to weight.
    Rng rng(seed);
    std::vector<double> key(m);
    for (std::size_t e = 0; e < m; ++e) key[e] = -std::log(rng.uniform_open_zero()) / weights[e];
    std::vector<EdgeIndex> order(m);
    std::iota(order.begin(), order.end(), EdgeIndex{0});
    std::stable_sort(order.begin(), order.end(), [&key](EdgeIndex a, EdgeIndex b) { return key[a] < key[b]; });
    auto flip = draw_flips(m, rng);
    return EdgeStream(std::move(order), std::move(flip), seed);
}

EdgeStream make_stream(const Graph& g, std::uint64_t seed) {
    return g.weighted() ? weighted_shuffle(g.weights(), seed) : shuffle(g.edge_count(), seed);
}

}  // namespace scoda
