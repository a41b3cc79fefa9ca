#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "scoda/cover.hpp"

namespace scoda {

/// Harmonic mean of precision |A∩B|/|A| and recall |A∩B|/|B|.
/// 0 when the sets do not intersect. Throws ValidationError on an empty set.
double f1_pair(std::span<const std::uint64_t> estimate, std::span<const std::uint64_t> truth);

/// Mean over truth groups of the best F1 against any estimate group.
double directional_f1(const Cover& estimate, const Cover& truth);

/// Average of the two directional F1 scores. Symmetric in its arguments.
double avg_f1(const Cover& detected, const Cover& truth);

/// Cover NMI over binary membership indicators (log base 2) for a universe
/// of `universe_size` nodes. Every node id in either cover must be one of the
/// universe's nodes, so universe_size must be at least the number of distinct
/// ids. Throws ValidationError for empty covers or a too-small universe.
double nmi(const Cover& detected, const Cover& truth, std::size_t universe_size);

struct BestMatch {
    std::size_t truth_group = 0;
    /// Index of the best-matching detected group, empty when nothing overlaps.
    std::optional<std::size_t> detected_group;
    double f1 = 0.0;
};

struct ScoreOptions {
    bool compute_f1 = true;
    bool compute_nmi = true;
    /// Universe size for NMI. When empty, detected groups are restricted to
    /// nodes that appear in the ground truth and the universe is that node set.
    std::optional<std::size_t> universe;
};

struct ScoreReport {
    double f1_forward = 0.0;   // detected scored against each truth group
    double f1_backward = 0.0;  // truth scored against each detected group
    double f1_avg = 0.0;
    std::optional<double> nmi;
    std::size_t nmi_universe = 0;
    std::vector<BestMatch> matches;  // one per truth group
};

ScoreReport score(const Cover& detected, const Cover& truth, const ScoreOptions& options = {});

}  // namespace scoda
