#include "scoda/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "scoda/error.hpp"
#include "scoda/metrics.hpp"
#include "scoda/random_graph.hpp"
#include "scoda/rng.hpp"

namespace scoda {

namespace {

// Welford accumulator.
class Moments {
public:
    void add(double x) {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }
    double mean() const { return mean_; }
    double sample_std() const { return count_ > 1 ? std::sqrt(m2_ / static_cast<double>(count_ - 1)) : 0.0; }
    double standard_error() const { return count_ > 0 ? sample_std() / std::sqrt(static_cast<double>(count_)) : 0.0; }

private:
    std::size_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

double scored_f1(const Extraction& detected, const Cover& truth) {
    return detected.cover.empty() ? 0.0 : avg_f1(detected.cover, truth);
}

}  // namespace

IntraProbability intra_probability(const CommunityStats& stats, std::size_t k) {
    if (k == 0 || k > stats.incident_edges)
        throw DomainError("k = " + std::to_string(k) + " outside [1, |e(C)| = " + std::to_string(stats.incident_edges) +
                          "]");
    IntraProbability out;
    out.k = k;
    out.value = 1.0;
    out.phi.reserve(k);
    const auto cut = static_cast<double>(stats.boundary_edges);
    for (std::size_t l = 0; l < k; ++l) {
        const double phi = cut / static_cast<double>(stats.internal_edges + stats.boundary_edges - l);
        out.phi.push_back(phi);
        out.value *= 1.0 - phi;
    }
    return out;
}

double fpe_bound(const CommunityStats& stats, Degree threshold) {
    double bound = 0.0;
    for (std::size_t i = 0; i < stats.members.size(); ++i) {
        const Degree out = stats.outside_degree[i];
        if (out == 0) continue;
        const Degree deg = stats.degree[i];
        double stay = 1.0;  // probability the first D edges at u are internal
        for (Degree k = 0; k < threshold; ++k) {
            if (deg <= k || out >= deg - k) {
                stay = 0.0;
                break;
            }
            stay *= 1.0 - static_cast<double>(out) / static_cast<double>(deg - k);
        }
        bound += static_cast<double>(out) * (1.0 - stay);
    }
    return bound;
}

std::size_t count_false_positive_edges(const Graph& g, std::span<const std::uint8_t> inside, const EdgeStream& stream,
                                       Degree threshold) {
    if (inside.size() != g.node_count()) throw ContractError("membership mask must have one entry per node");
    std::size_t count = 0;
    run_observed(g, stream, threshold, [&](std::size_t, Edge e, bool transfer, const ScodaState&) {
        if (transfer && inside[e.u] != inside[e.v]) ++count;
    });
    return count;
}

FpeReport fpe_experiment(const Graph& g, std::span<const NodeId> community, Degree threshold, std::size_t trials,
                         std::uint64_t seed) {
    if (trials == 0) throw ValidationError("trials must be >= 1");
    if (threshold == 0) throw ValidationError("threshold D must be >= 1");
    const CommunityStats stats = community_stats(g, community);
    std::vector<std::uint8_t> inside(g.node_count(), 0);
    for (NodeId u : stats.members) inside[u] = 1;

    Moments moments;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto stream = make_stream(g, derive_seed(seed, t));
        moments.add(static_cast<double>(count_false_positive_edges(g, inside, stream, threshold)));
    }
    FpeReport report;
    report.community = stats.members;
    report.threshold = threshold;
    report.trials = trials;
    report.boundary_edges = stats.boundary_edges;
    report.empirical_mean = moments.mean();
    report.empirical_std = moments.sample_std();
    report.standard_error = moments.standard_error();
    report.bound = fpe_bound(stats, threshold);
    return report;
}

ErResult er_experiment(NodeId n, double p, std::size_t trials, const ThresholdStrategy& threshold, std::uint64_t seed,
                       unsigned workers) {
    if (n < 2) throw DomainError("n must be >= 2");
    if (!(p > 0.0) || p > 1.0) throw DomainError("edge probability must lie in (0, 1]");
    if (trials == 0) throw ValidationError("trials must be >= 1");

    ErResult result;
    result.n = n;
    result.p = p;
    result.trials = trials;
    Moments moments;
    for (std::size_t t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, t));
        const Graph g = erdos_renyi(n, p, rng);
        const DegreeStats stats = degree_stats(g);
        if (threshold.kind() == ThresholdStrategy::Kind::Mode && !stats.mode) ++result.fallback_trials;
        const Degree d = resolve_threshold(threshold, stats, Degree{1});
        const auto stream = shuffle(g.edge_count(), rng.next());
        const Partition part = workers > 1 ? run_parallel(g, stream, d, workers) : run(g, stream, d);
        moments.add(static_cast<double>(part.largest_community_size()) / static_cast<double>(n));
    }
    result.mean_ratio = moments.mean();
    result.std_error = moments.standard_error();
    return result;
}

VarianceResult variance_experiment(const Graph& g, const Cover& truth, Degree threshold,
                                   std::span<const std::uint64_t> seeds, std::size_t min_size) {
    if (seeds.size() < 2) throw ValidationError("variance needs at least 2 runs");
    Moments f1;
    Moments communities;
    for (auto s : seeds) {
        const Partition part = run(g, make_stream(g, s), threshold);
        const Extraction detected = extract_communities(part, g, min_size);
        f1.add(scored_f1(detected, truth));
        communities.add(static_cast<double>(detected.cover.size()));
    }
    VarianceResult r;
    r.runs = seeds.size();
    r.mean_f1 = f1.mean();
    r.std_f1 = f1.sample_std();
    r.mean_communities = communities.mean();
    r.std_communities = communities.sample_std();
    return r;
}

VarianceResult variance_experiment(const Graph& g, const Cover& truth, Degree threshold, std::size_t runs,
                                   std::uint64_t seed, std::size_t min_size) {
    std::vector<std::uint64_t> seeds(runs);
    for (std::size_t i = 0; i < runs; ++i) seeds[i] = derive_seed(seed, i);
    return variance_experiment(g, truth, threshold, seeds, min_size);
}

SweepResult sweep_d(const Graph& g, const Cover& truth, std::span<const Degree> thresholds, std::size_t runs_per_d,
                    std::uint64_t seed) {
    if (thresholds.empty()) throw ValidationError("threshold range is empty");
    if (runs_per_d == 0) throw ValidationError("runs per threshold must be >= 1");
    for (Degree d : thresholds)
        if (d == 0) throw ValidationError("threshold D must be >= 1");

    SweepResult out;
    const DegreeStats stats = degree_stats(g);
    out.average_degree = stats.average;
    out.median_degree = stats.median;
    out.mode_degree = stats.mode;

    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        const Degree d = thresholds[i];
        Moments f1;
        std::size_t largest = 0;
        for (std::size_t r = 0; r < runs_per_d; ++r) {
            const Partition part = run(g, make_stream(g, derive_seed(seed, r)), d);
            largest = std::max(largest, part.largest_community_size());
            f1.add(scored_f1(extract_communities(part, g, 2), truth));
        }
        out.thresholds.push_back(d);
        out.f1.push_back(f1.mean());
        out.max_community_size.push_back(largest);
    }
    const auto best = std::max_element(out.f1.begin(), out.f1.end());
    out.best_threshold = out.thresholds[static_cast<std::size_t>(best - out.f1.begin())];
    for (double f : out.f1) out.quality_ratio.push_back(*best > 0.0 ? f / *best : 0.0);
    return out;
}

}  // namespace scoda
