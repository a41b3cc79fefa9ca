#include "scoda/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "scoda/error.hpp"

namespace scoda {

namespace {

// Groups of a cover re-expressed over dense node indices, plus the inverted
// node -> groups index in CSR form.
struct IndexedCover {
    std::vector<std::vector<std::uint32_t>> groups;
    std::vector<std::size_t> offsets;  // node -> [offsets[v], offsets[v+1]) in owners
    std::vector<std::uint32_t> owners;
};

class NodeIndex {
public:
    NodeIndex(const Cover& a, const Cover& b) {
        ids_.reserve(a.membership_count() + b.membership_count());
        for (const auto* c : {&a, &b})
            for (const auto& g : c->groups()) ids_.insert(ids_.end(), g.begin(), g.end());
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    std::size_t size() const { return ids_.size(); }

    IndexedCover index(const Cover& cover) const {
        IndexedCover out;
        out.groups.reserve(cover.size());
        std::vector<std::size_t> counts(ids_.size() + 1, 0);
        for (const auto& g : cover.groups()) {
            std::vector<std::uint32_t> dense;
            dense.reserve(g.size());
            for (auto id : g) {
                const auto v = static_cast<std::uint32_t>(std::lower_bound(ids_.begin(), ids_.end(), id) - ids_.begin());
                dense.push_back(v);
                ++counts[v + 1];
            }
            out.groups.push_back(std::move(dense));
        }
        for (std::size_t v = 1; v < counts.size(); ++v) counts[v] += counts[v - 1];
        out.offsets = counts;
        out.owners.resize(counts.back());
        for (std::uint32_t k = 0; k < out.groups.size(); ++k)
            for (auto v : out.groups[k]) out.owners[counts[v]++] = k;
        return out;
    }

private:
    std::vector<std::uint64_t> ids_;
};

// For each group of `from`, calls visit(k, l, |from_k ∩ against_l|) for every
// intersecting group l of `against`, then done(k).
template <typename Visit, typename Done>
void for_each_intersection(const IndexedCover& from, const IndexedCover& against, Visit&& visit, Done&& done) {
    std::vector<std::size_t> count(against.groups.size(), 0);
    std::vector<std::uint32_t> touched;
    for (std::size_t k = 0; k < from.groups.size(); ++k) {
        for (auto v : from.groups[k]) {
            for (auto i = against.offsets[v]; i < against.offsets[v + 1]; ++i) {
                const auto l = against.owners[i];
                if (count[l]++ == 0) touched.push_back(l);
            }
        }
        std::sort(touched.begin(), touched.end());
        for (auto l : touched) {
            visit(k, l, count[l]);
            count[l] = 0;
        }
        touched.clear();
        done(k);
    }
}

double pair_score(std::size_t overlap, std::size_t a, std::size_t b) {
    return 2.0 * static_cast<double>(overlap) / static_cast<double>(a + b);
}

std::vector<BestMatch> best_matches(const IndexedCover& estimate, const IndexedCover& truth) {
    std::vector<BestMatch> out(truth.groups.size());
    for_each_intersection(
        truth, estimate,
        [&](std::size_t k, std::uint32_t l, std::size_t overlap) {
            const double f1 = pair_score(overlap, truth.groups[k].size(), estimate.groups[l].size());
            if (f1 > out[k].f1) {
                out[k].f1 = f1;
                out[k].detected_group = l;
            }
        },
        [&](std::size_t k) { out[k].truth_group = k; });
    return out;
}

double mean_best(const std::vector<BestMatch>& matches) {
    double sum = 0.0;
    for (const auto& m : matches) sum += m.f1;
    return sum / static_cast<double>(matches.size());
}

void require_nonempty(const Cover& c, const char* name) {
    if (c.empty()) throw ValidationError(std::string(name) + " cover is empty");
}

// -(w/n) log2(w/n), with 0 log 0 = 0.
double plogp(std::size_t w, std::size_t n) {
    if (w == 0) return 0.0;
    const double p = static_cast<double>(w) / static_cast<double>(n);
    return -p * std::log2(p);
}

// Sum over groups X_k of H(X_k | Y) / H(X_k), averaged.
double normalized_conditional_entropy(const IndexedCover& x, const IndexedCover& y, std::size_t n) {
    double total = 0.0;
    double best = 0.0;
    bool any_admissible = false;
    bool has_identical = false;
    for_each_intersection(
        x, y,
        [&](std::size_t k, std::uint32_t l, std::size_t both) {
            const std::size_t xs = x.groups[k].size();
            const std::size_t ys = y.groups[l].size();
            const std::size_t only_x = xs - both;
            const std::size_t only_y = ys - both;
            const std::size_t neither = n - both - only_x - only_y;
            if (only_x == 0 && only_y == 0) has_identical = true;
            const double h11 = plogp(both, n);
            const double h10 = plogp(only_x, n);
            const double h01 = plogp(only_y, n);
            const double h00 = plogp(neither, n);
            if (h11 + h00 < h10 + h01) return;
            const double joint = h11 + h10 + h01 + h00;
            const double hy = plogp(both + only_y, n) + plogp(neither + only_x, n);
            const double conditional = std::max(0.0, joint - hy);
            if (!any_admissible || conditional < best) best = conditional;
            any_admissible = true;
        },
        [&](std::size_t k) {
            const std::size_t xs = x.groups[k].size();
            const double hx = plogp(xs, n) + plogp(n - xs, n);
            double term = 0.0;
            if (hx == 0.0) {
                term = has_identical ? 0.0 : 1.0;
            } else {
                const double conditional = any_admissible ? std::min(best, hx) : hx;
                term = conditional / hx;
            }
            total += term;
            any_admissible = false;
            has_identical = false;
        });
    return total / static_cast<double>(x.groups.size());
}

}  // namespace

double f1_pair(std::span<const std::uint64_t> estimate, std::span<const std::uint64_t> truth) {
    if (estimate.empty() || truth.empty()) throw ValidationError("f1_pair needs two non-empty sets");
    std::vector<std::uint64_t> a(estimate.begin(), estimate.end());
    std::vector<std::uint64_t> b(truth.begin(), truth.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::size_t overlap = 0;
    for (std::size_t i = 0, j = 0; i < a.size() && j < b.size();) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++overlap;
            ++i;
            ++j;
        }
    }
    if (overlap == 0) return 0.0;
    return pair_score(overlap, a.size(), b.size());
}

double directional_f1(const Cover& estimate, const Cover& truth) {
    require_nonempty(estimate, "estimate");
    require_nonempty(truth, "truth");
    NodeIndex nodes(estimate, truth);
    return mean_best(best_matches(nodes.index(estimate), nodes.index(truth)));
}

double avg_f1(const Cover& detected, const Cover& truth) {
    require_nonempty(detected, "detected");
    require_nonempty(truth, "truth");
    NodeIndex nodes(detected, truth);
    const auto d = nodes.index(detected);
    const auto t = nodes.index(truth);
    return 0.5 * (mean_best(best_matches(d, t)) + mean_best(best_matches(t, d)));
}

double nmi(const Cover& detected, const Cover& truth, std::size_t universe_size) {
    require_nonempty(detected, "detected");
    require_nonempty(truth, "truth");
    NodeIndex nodes(detected, truth);
    if (universe_size < nodes.size())
        throw ValidationError("NMI universe of " + std::to_string(universe_size) + " nodes is smaller than the " +
                              std::to_string(nodes.size()) + " distinct nodes in the covers");
    const auto d = nodes.index(detected);
    const auto t = nodes.index(truth);
    const double hd = normalized_conditional_entropy(d, t, universe_size);
    const double ht = normalized_conditional_entropy(t, d, universe_size);
    return std::clamp(1.0 - 0.5 * (hd + ht), 0.0, 1.0);
}

ScoreReport score(const Cover& detected, const Cover& truth, const ScoreOptions& options) {
    require_nonempty(detected, "detected");
    require_nonempty(truth, "truth");
    ScoreReport report;
    if (options.compute_f1) {
        NodeIndex nodes(detected, truth);
        const auto d = nodes.index(detected);
        const auto t = nodes.index(truth);
        report.matches = best_matches(d, t);
        report.f1_forward = mean_best(report.matches);
        report.f1_backward = mean_best(best_matches(t, d));
        report.f1_avg = 0.5 * (report.f1_forward + report.f1_backward);
    }
    if (options.compute_nmi) {
        if (options.universe) {
            report.nmi_universe = *options.universe;
            report.nmi = nmi(detected, truth, *options.universe);
        } else {
            const auto universe = truth.nodes();
            std::vector<Group> restricted;
            for (const auto& g : detected.groups()) {
                Group kept;
                std::set_intersection(g.begin(), g.end(), universe.begin(), universe.end(), std::back_inserter(kept));
                if (!kept.empty()) restricted.push_back(std::move(kept));
            }
            report.nmi_universe = universe.size();
            report.nmi = restricted.empty() ? 0.0 : nmi(Cover(std::move(restricted)), truth, universe.size());
        }
    }
    return report;
}

}  // namespace scoda
