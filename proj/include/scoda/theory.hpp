#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scoda/cover.hpp"
#include "scoda/graph.hpp"
#include "scoda/scoda.hpp"
#include "scoda/stream.hpp"

namespace scoda {

/// Probability that the first k streamed edges touching C are all internal.
struct IntraProbability {
    std::size_t k = 0;
    double value = 0.0;
    /// phi_l = |e(C,~C)| / (|e(C)| - l) for l = 0..k-1; phi_0 is the
    /// pseudo-conductance.
    std::vector<double> phi;
};

/// Exact product formula. Throws DomainError unless 1 <= k <= |e(C)|.
IntraProbability intra_probability(const CommunityStats& stats, std::size_t k);

/// Upper bound on the expected number of boundary edges of C that act as
/// transfer edges with threshold D: each boundary edge (u in C) contributes
/// 1 - prod_{k<D} (1 - d_out(u) / (d(u) - k)). A factor that is <= 0 (or a
/// vanishing denominator) makes that edge's contribution 1.
double fpe_bound(const CommunityStats& stats, Degree threshold);

/// Runs the stream and counts boundary edges of C that were transfer edges.
/// `inside` marks the members of C and has one entry per node.
std::size_t count_false_positive_edges(const Graph& g, std::span<const std::uint8_t> inside,
                                       const EdgeStream& stream, Degree threshold);

struct FpeReport {
    std::vector<NodeId> community;
    Degree threshold = 1;
    std::size_t trials = 0;
    std::size_t boundary_edges = 0;
    double empirical_mean = 0.0;
    double empirical_std = 0.0;
    double standard_error = 0.0;
    double bound = 0.0;

    /// empirical_mean <= bound + 3 standard errors.
    bool within_bound() const noexcept { return empirical_mean <= bound + 3.0 * standard_error; }
};

FpeReport fpe_experiment(const Graph& g, std::span<const NodeId> community, Degree threshold, std::size_t trials,
                         std::uint64_t seed);

struct ErResult {
    NodeId n = 0;
    double p = 0.0;
    std::size_t trials = 0;
    /// Mean over trials of (largest community size) / n.
    double mean_ratio = 0.0;
    double std_error = 0.0;
    /// Trials whose mode was undefined (all degrees <= 1). SCoDA's output on
    /// such graphs does not depend on D, so they run with D = 1.
    std::size_t fallback_trials = 0;
};

/// Generates `trials` independent G(n, p) graphs, runs SCoDA once on each
/// with D resolved per graph, and averages the largest-community ratio.
/// workers > 1 uses run_parallel. Throws DomainError unless 0 < p <= 1 and
/// n >= 2.
ErResult er_experiment(NodeId n, double p, std::size_t trials, const ThresholdStrategy& threshold,
                       std::uint64_t seed, unsigned workers = 1);

struct VarianceResult {
    std::size_t runs = 0;
    double mean_f1 = 0.0;
    double std_f1 = 0.0;
    double mean_communities = 0.0;
    double std_communities = 0.0;
};

/// Detection + scoring repeated once per seed. Community counts include every
/// community of size >= min_size; F1 is scored on the same filtered cover.
VarianceResult variance_experiment(const Graph& g, const Cover& truth, Degree threshold,
                                   std::span<const std::uint64_t> seeds, std::size_t min_size = 1);
/// Seeds derived from the master seed. Throws ValidationError for runs < 2.
VarianceResult variance_experiment(const Graph& g, const Cover& truth, Degree threshold, std::size_t runs,
                                   std::uint64_t seed, std::size_t min_size = 1);

struct SweepResult {
    std::vector<Degree> thresholds;
    std::vector<double> f1;
    /// f1 / max(f1); all zero when every score is zero.
    std::vector<double> quality_ratio;
    /// Largest community seen over all runs at each threshold.
    std::vector<std::size_t> max_community_size;
    Degree best_threshold = 0;
    double average_degree = 0.0;
    double median_degree = 0.0;
    std::optional<Degree> mode_degree;
};

/// Average F1 (singletons excluded) for each D, averaged over runs_per_d runs.
/// Every threshold reuses the same run seeds so the scores are paired.
SweepResult sweep_d(const Graph& g, const Cover& truth, std::span<const Degree> thresholds, std::size_t runs_per_d,
                    std::uint64_t seed);

}  // namespace scoda
