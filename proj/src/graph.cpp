#include "scoda/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>

#include "scoda/error.hpp"

namespace scoda {

namespace {

std::uint64_t undirected_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
}

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r' || ch == '\v' || ch == '\f'; }

// Splits on blanks; returns at most `limit` + 1 tokens so trailing junk is detectable.
std::size_t tokenize(std::string_view line, std::string_view* out, std::size_t limit) {
    std::size_t count = 0;
    std::size_t i = 0;
    while (i < line.size() && count <= limit) {
        while (i < line.size() && is_space(line[i])) ++i;
        if (i == line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !is_space(line[j])) ++j;
        out[count++] = line.substr(i, j - i);
        i = j;
    }
    return count;
}

ExternalId parse_id(std::string_view token, std::size_t line_no) {
    ExternalId value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw ParseError(line_no, "expected a non-negative integer node id, got '" + std::string(token) + "'");
    return value;
}

double parse_weight(std::string_view token, std::size_t line_no) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(value))
        throw ParseError(line_no, "expected a numeric weight, got '" + std::string(token) + "'");
    if (value <= 0.0)
        throw ValidationError("line " + std::to_string(line_no) + ": edge weight must be positive, got " +
                              std::string(token));
    return value;
}

}  // namespace

Graph Graph::from_edges(NodeId n, std::vector<Edge> edges, std::vector<double> weights) {
    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.weights_ = std::move(weights);
    g.validate();
    return g;
}

Graph Graph::from_edges(std::vector<ExternalId> external_ids, std::vector<Edge> edges,
                        std::vector<double> weights) {
    if (external_ids.size() > std::numeric_limits<NodeId>::max())
        throw ValidationError("too many nodes for 32-bit node ids");
    Graph g;
    g.n_ = static_cast<NodeId>(external_ids.size());
    g.internal_ids_.reserve(external_ids.size());
    for (NodeId i = 0; i < g.n_; ++i) {
        if (!g.internal_ids_.emplace(external_ids[i], i).second)
            throw ValidationError("external id " + std::to_string(external_ids[i]) + " mapped twice");
    }
    g.external_ids_ = std::move(external_ids);
    g.edges_ = std::move(edges);
    g.weights_ = std::move(weights);
    g.validate();
    return g;
}

void Graph::validate() const {
    if (!weights_.empty() && weights_.size() != edges_.size())
        throw ValidationError("weights length " + std::to_string(weights_.size()) + " != edge count " +
                              std::to_string(edges_.size()));
    for (double w : weights_)
        if (!(w > 0.0) || !std::isfinite(w)) throw ValidationError("edge weights must be positive and finite");
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_)
            throw ValidationError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                                  ") has an endpoint outside [0, " + std::to_string(n_) + ")");
        if (e.u == e.v) throw ValidationError("self-loop on node " + std::to_string(e.u));
        if (!seen.insert(undirected_key(e.u, e.v)).second)
            throw ValidationError("duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
}

ExternalId Graph::external_id(NodeId u) const {
    if (u >= n_) throw ValidationError("node " + std::to_string(u) + " out of range");
    return external_ids_.empty() ? ExternalId{u} : external_ids_[u];
}

std::optional<NodeId> Graph::internal_id(ExternalId x) const {
    if (external_ids_.empty()) {
        if (x < n_) return static_cast<NodeId>(x);
        return std::nullopt;
    }
    auto it = internal_ids_.find(x);
    if (it == internal_ids_.end()) return std::nullopt;
    return it->second;
}

std::vector<Degree> Graph::degrees() const {
    std::vector<Degree> deg(n_, 0);
    for (const auto& e : edges_) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

Graph load_graph(std::istream& in, const LoadOptions& options) {
    Graph g;
    std::unordered_set<std::uint64_t> seen;
    std::string line;
    std::size_t line_no = 0;
    std::optional<bool> has_weights;
    std::string_view tokens[4];

    auto intern = [&g](ExternalId x) -> NodeId {
        auto [it, inserted] = g.internal_ids_.try_emplace(x, static_cast<NodeId>(g.external_ids_.size()));
        if (inserted) {
            if (g.external_ids_.size() == std::numeric_limits<NodeId>::max())
                throw ValidationError("too many nodes for 32-bit node ids");
            g.external_ids_.push_back(x);
        }
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        std::size_t first = 0;
        while (first < view.size() && is_space(view[first])) ++first;
        if (first == view.size() || view[first] == '#') continue;

        const std::size_t count = tokenize(view, tokens, 3);
        if (count < 2) throw ParseError(line_no, "expected two node ids");
        if (count > 3) throw ParseError(line_no, "too many fields (expected 'u v [weight]')");
        const bool weighted_line = count == 3;
        if (!has_weights) has_weights = weighted_line;
        if (*has_weights != weighted_line)
            throw ParseError(line_no, "weights must be given on every edge line or on none");

        const ExternalId a = parse_id(tokens[0], line_no);
        const ExternalId b = parse_id(tokens[1], line_no);
        const double w = weighted_line ? parse_weight(tokens[2], line_no) : 0.0;

        const NodeId u = intern(a);
        const NodeId v = intern(b);
        if (u == v) {
            ++g.self_loops_dropped_;
            continue;
        }
        if (!seen.insert(undirected_key(u, v)).second) {
            if (!options.dedupe)
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate edge " + std::to_string(a) +
                                      " " + std::to_string(b) + " (use dedupe to drop repeats)");
            ++g.duplicates_dropped_;
            continue;
        }
        g.edges_.push_back({u, v});
        if (weighted_line) g.weights_.push_back(w);
    }
    if (in.bad()) throw Error("I/O error while reading edge list");
    g.n_ = static_cast<NodeId>(g.external_ids_.size());
    return g;
}

Graph load_graph_file(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open edge file '" + path.string() + "'");
    return load_graph(in, options);
}

Degree DegreeStats::mode_or_throw() const {
    if (!mode) throw DomainError("degree mode undefined: every node has degree <= 1");
    return *mode;
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats s;
    s.degrees = g.degrees();
    const std::size_t n = s.degrees.size();
    const std::size_t m = g.edge_count();

    for (Degree d : s.degrees) {
        ++s.histogram[d];
        s.max = std::max(s.max, d);
    }
    if (n > 0) {
        s.average = 2.0 * static_cast<double>(m) / static_cast<double>(n);
        // Lower median read off the histogram: the ((n-1)/2)-th smallest degree.
        const std::size_t target = (n - 1) / 2;
        std::size_t seen = 0;
        for (const auto& [d, count] : s.histogram) {
            seen += count;
            if (seen > target) {
                s.median = d;
                break;
            }
        }
    }
    if (n > 1) s.density = static_cast<double>(m) / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);

    std::size_t best = 0;
    for (const auto& [d, count] : s.histogram) {
        if (d <= 1) continue;
        if (count > best) {  // strict: ties keep the smaller degree
            best = count;
            s.mode = d;
        }
    }
    return s;
}

CommunityStats community_stats(const Graph& g, std::span<const NodeId> community) {
    if (community.empty()) throw ValidationError("community is empty");
    const NodeId n = g.node_count();
    CommunityStats s;
    s.members.assign(community.begin(), community.end());
    std::sort(s.members.begin(), s.members.end());
    s.members.erase(std::unique(s.members.begin(), s.members.end()), s.members.end());
    if (s.members.back() >= n)
        throw ValidationError("node " + std::to_string(s.members.back()) + " out of range [0, " + std::to_string(n) + ")");

    std::vector<std::uint8_t> inside(n, 0);
    for (NodeId u : s.members) inside[u] = 1;
    // Per-node counters indexed by position in members.
    std::vector<std::size_t> slot(n, 0);
    for (std::size_t i = 0; i < s.members.size(); ++i) slot[s.members[i]] = i;
    s.degree.assign(s.members.size(), 0);
    s.outside_degree.assign(s.members.size(), 0);

    for (const auto& e : g.edges()) {
        const bool in_u = inside[e.u] != 0;
        const bool in_v = inside[e.v] != 0;
        if (in_u) ++s.degree[slot[e.u]];
        if (in_v) ++s.degree[slot[e.v]];
        if (in_u && in_v) {
            ++s.internal_edges;
        } else if (in_u || in_v) {
            ++s.boundary_edges;
            ++s.outside_degree[slot[in_u ? e.u : e.v]];
        }
    }
    s.incident_edges = s.internal_edges + s.boundary_edges;
    if (s.incident_edges == 0) throw DomainError("conductance undefined: community has no incident edges");

    const auto cut = static_cast<double>(s.boundary_edges);
    const auto internal = static_cast<double>(s.internal_edges);
    s.conductance = cut / (2.0 * internal + cut);
    s.pseudo_conductance = cut / (internal + cut);

    s.out_degree_fraction.resize(s.members.size());
    for (std::size_t i = 0; i < s.members.size(); ++i) {
        s.out_degree_fraction[i] =
            s.degree[i] == 0 ? 0.0 : static_cast<double>(s.outside_degree[i]) / static_cast<double>(s.degree[i]);
        if (s.outside_degree[i] > 0) s.boundary.push_back(s.members[i]);
    }
    return s;
}

}  // namespace scoda
