#include "scoda/scoda.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <numeric>
#include <thread>

namespace scoda {

ScodaState::ScodaState(NodeId n, Degree threshold) : degree(n, 0), label(n), threshold(threshold) {
    std::iota(label.begin(), label.end(), NodeId{0});
}

std::vector<NodeId> Partition::canonical_labels() const {
    std::vector<NodeId> remap(labels_.size(), std::numeric_limits<NodeId>::max());
    std::vector<NodeId> out(labels_.size());
    NodeId next = 0;
    for (std::size_t u = 0; u < labels_.size(); ++u) {
        NodeId& slot = remap[labels_[u]];
        if (slot == std::numeric_limits<NodeId>::max()) slot = next++;
        out[u] = slot;
    }
    return out;
}

std::vector<std::vector<NodeId>> Partition::communities() const {
    const auto canon = canonical_labels();
    const NodeId k = canon.empty() ? 0 : *std::max_element(canon.begin(), canon.end()) + 1;
    std::vector<std::vector<NodeId>> groups(k);
    for (NodeId u = 0; u < canon.size(); ++u) groups[canon[u]].push_back(u);
    return groups;
}

std::size_t Partition::community_count() const {
    std::vector<bool> used(labels_.size(), false);
    std::size_t count = 0;
    for (NodeId l : labels_) {
        if (!used[l]) {
            used[l] = true;
            ++count;
        }
    }
    return count;
}

std::size_t Partition::singleton_count() const {
    std::vector<NodeId> size(labels_.size(), 0);
    for (NodeId l : labels_) ++size[l];
    return static_cast<std::size_t>(std::count(size.begin(), size.end(), NodeId{1}));
}

std::size_t Partition::largest_community_size() const {
    std::vector<NodeId> size(labels_.size(), 0);
    for (NodeId l : labels_) ++size[l];
    return size.empty() ? 0 : *std::max_element(size.begin(), size.end());
}

ThresholdStrategy ThresholdStrategy::fixed(Degree d) {
    if (d == 0) throw ValidationError("threshold D must be >= 1");
    return ThresholdStrategy(Kind::Fixed, d);
}

ThresholdStrategy ThresholdStrategy::parse(std::string_view text) {
    if (text == "mode") return mode();
    if (text == "median") return median();
    if (text == "avg" || text == "average") return average();
    constexpr std::string_view prefix = "fixed:";
    if (text.starts_with(prefix)) {
        const auto digits = text.substr(prefix.size());
        Degree d = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), d);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) return fixed(d);
    }
    throw ValidationError("unknown threshold '" + std::string(text) + "' (expected mode, median, avg or fixed:D)");
}

std::string ThresholdStrategy::to_string() const {
    switch (kind_) {
        case Kind::Mode: return "mode";
        case Kind::Median: return "median";
        case Kind::Average: return "avg";
        case Kind::Fixed: return "fixed:" + std::to_string(fixed_);
    }
    return {};
}

namespace {

Degree round_half_up(double x) {
    const double r = std::floor(x + 0.5);
    return r < 1.0 ? Degree{1} : static_cast<Degree>(r);
}

}  // namespace

Degree resolve_threshold(const ThresholdStrategy& strategy, const DegreeStats& stats, std::optional<Degree> fallback) {
    switch (strategy.kind()) {
        case ThresholdStrategy::Kind::Mode:
            if (stats.mode) return *stats.mode;
            if (fallback) return *fallback;
            return stats.mode_or_throw();
        case ThresholdStrategy::Kind::Median: return round_half_up(stats.median);
        case ThresholdStrategy::Kind::Average: return round_half_up(stats.average);
        case ThresholdStrategy::Kind::Fixed: return strategy.fixed_value();
    }
    throw ValidationError("unknown threshold strategy");
}

namespace detail {

void check_run_args(const Graph& g, const EdgeStream& stream, Degree threshold) {
    if (threshold == 0) throw ValidationError("threshold D must be >= 1");
    if (stream.size() != g.edge_count())
        throw ContractError("stream has " + std::to_string(stream.size()) + " edges but the graph has " +
                            std::to_string(g.edge_count()));
}

}  // namespace detail

ScodaState run_state(const Graph& g, const EdgeStream& stream, Degree threshold) {
    detail::check_run_args(g, stream, threshold);
    ScodaState state(g.node_count(), threshold);
    for (std::size_t j = 0; j < stream.size(); ++j) {
        const Edge e = stream.at(g, j);
        state.process(e.u, e.v);
    }
    return state;
}

Partition run(const Graph& g, const EdgeStream& stream, Degree threshold) {
    return Partition(std::move(run_state(g, stream, threshold).label));
}

Partition run_parallel(const Graph& g, const EdgeStream& stream, Degree threshold, unsigned workers) {
    if (workers == 0) throw ValidationError("workers must be >= 1");
    if (workers == 1) return run(g, stream, threshold);
    detail::check_run_args(g, stream, threshold);

    ScodaState state(g.node_count(), threshold);
    const std::size_t m = stream.size();
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
            const Edge e = stream.at(g, j);
            const Degree du = std::atomic_ref<Degree>(state.degree[e.u]).fetch_add(1, std::memory_order_relaxed) + 1;
            const Degree dv = std::atomic_ref<Degree>(state.degree[e.v]).fetch_add(1, std::memory_order_relaxed) + 1;
            if (du > threshold || dv > threshold) continue;
            const NodeId from = du <= dv ? e.v : e.u;
            const NodeId to = du <= dv ? e.u : e.v;
            const NodeId l = std::atomic_ref<NodeId>(state.label[from]).load(std::memory_order_relaxed);
            std::atomic_ref<NodeId>(state.label[to]).store(l, std::memory_order_relaxed);
        }
    };
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = m * w / workers;
            const std::size_t end = m * (w + 1) / workers;
            pool.emplace_back(work, begin, end);
        }
    }
    return Partition(std::move(state.label));
}

Extraction extract_communities(const Partition& p, std::size_t min_size) {
    if (min_size == 0) throw ValidationError("min_size must be >= 1");
    Extraction out;
    std::vector<Group> kept;
    for (auto& members : p.communities()) {
        if (members.size() < min_size) {
            ++out.dropped;
            continue;
        }
        kept.emplace_back(members.begin(), members.end());
    }
    out.cover = Cover(std::move(kept));
    return out;
}

Extraction extract_communities(const Partition& p, const Graph& g, std::size_t min_size) {
    if (p.node_count() != g.node_count()) throw ContractError("partition and graph disagree on node count");
    if (min_size == 0) throw ValidationError("min_size must be >= 1");
    Extraction out;
    std::vector<Group> kept;
    for (auto& members : p.communities()) {
        if (members.size() < min_size) {
            ++out.dropped;
            continue;
        }
        Group group;
        group.reserve(members.size());
        for (NodeId u : members) group.push_back(g.external_id(u));
        kept.push_back(std::move(group));
    }
    out.cover = Cover(std::move(kept));
    return out;
}

}  // namespace scoda
