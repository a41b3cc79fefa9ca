#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>

#include "scoda/cover.hpp"
#include "scoda/error.hpp"
#include "scoda/graph.hpp"
#include "scoda/metrics.hpp"
#include "scoda/random_graph.hpp"
#include "scoda/rng.hpp"
#include "scoda/scoda.hpp"
#include "scoda/stream.hpp"
#include "scoda/theory.hpp"

namespace py = pybind11;
using namespace scoda;

namespace {

using Groups = std::vector<std::vector<std::uint64_t>>;
using ThresholdArg = std::variant<Degree, std::string>;

ThresholdStrategy to_strategy(const ThresholdArg& arg) {
    if (const auto* d = std::get_if<Degree>(&arg)) return ThresholdStrategy::fixed(*d);
    return ThresholdStrategy::parse(std::get<std::string>(arg));
}

Graph make_graph(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& edges,
                 std::optional<std::vector<double>> weights) {
    std::vector<Edge> list;
    list.reserve(edges.size());
    for (auto [u, v] : edges) list.push_back({u, v});
    return Graph::from_edges(n, std::move(list), weights.value_or(std::vector<double>{}));
}

}  // namespace

PYBIND11_MODULE(_scoda, m) {
    m.doc() = "Streaming community detection in one randomized pass over the edges";

    py::register_exception<Error>(m, "ScodaError", PyExc_ValueError);

    py::class_<Graph>(m, "Graph")
        .def(py::init(&make_graph), py::arg("n"), py::arg("edges"), py::arg("weights") = py::none())
        .def_property_readonly("node_count", &Graph::node_count)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def_property_readonly("weighted", &Graph::weighted)
        .def_property_readonly("edges",
                               [](const Graph& g) {
                                   std::vector<std::pair<NodeId, NodeId>> out;
                                   for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
                                   return out;
                               })
        .def_property_readonly("self_loops_dropped", &Graph::self_loops_dropped)
        .def_property_readonly("duplicates_dropped", &Graph::duplicates_dropped)
        .def("external_id", &Graph::external_id)
        .def("internal_id", &Graph::internal_id)
        .def("degrees", &Graph::degrees)
        .def("__repr__", [](const Graph& g) {
            return "<Graph n=" + std::to_string(g.node_count()) + " m=" + std::to_string(g.edge_count()) + ">";
        });

    m.def(
        "load_graph",
        [](const std::string& path, bool dedupe) { return load_graph_file(path, LoadOptions{dedupe}); },
        py::arg("path"), py::arg("dedupe") = false, "Load a SNAP edge-list file.");
    m.def(
        "erdos_renyi", [](NodeId n, double p, std::uint64_t seed) {
            Rng rng(seed);
            return erdos_renyi(n, p, rng);
        },
        py::arg("n"), py::arg("p"), py::arg("seed"));

    py::class_<DegreeStats>(m, "DegreeStats")
        .def_readonly("degrees", &DegreeStats::degrees)
        .def_readonly("average", &DegreeStats::average)
        .def_readonly("median", &DegreeStats::median)
        .def_readonly("mode", &DegreeStats::mode)
        .def_readonly("max", &DegreeStats::max)
        .def_readonly("density", &DegreeStats::density)
        .def_readonly("histogram", &DegreeStats::histogram);
    m.def("degree_stats", &degree_stats, py::arg("graph"));

    py::class_<CommunityStats>(m, "CommunityStats")
        .def_readonly("members", &CommunityStats::members)
        .def_readonly("incident_edges", &CommunityStats::incident_edges)
        .def_readonly("internal_edges", &CommunityStats::internal_edges)
        .def_readonly("boundary_edges", &CommunityStats::boundary_edges)
        .def_readonly("boundary", &CommunityStats::boundary)
        .def_readonly("conductance", &CommunityStats::conductance)
        .def_readonly("pseudo_conductance", &CommunityStats::pseudo_conductance)
        .def_readonly("out_degree_fraction", &CommunityStats::out_degree_fraction);
    m.def(
        "community_stats", [](const Graph& g, const std::vector<NodeId>& c) { return community_stats(g, c); },
        py::arg("graph"), py::arg("community"));

    py::class_<EdgeStream>(m, "EdgeStream")
        .def_property_readonly("order", [](const EdgeStream& s) {
            return std::vector<EdgeIndex>(s.order().begin(), s.order().end());
        })
        .def_property_readonly("flips", [](const EdgeStream& s) { return std::vector<bool>(s.flips()); })
        .def_property_readonly("seed", &EdgeStream::seed)
        .def("__len__", &EdgeStream::size);
    m.def("shuffle", &shuffle, py::arg("m"), py::arg("seed"));
    m.def(
        "weighted_shuffle",
        [](const std::vector<double>& w, std::uint64_t seed) { return weighted_shuffle(w, seed); },
        py::arg("weights"), py::arg("seed"));

    py::class_<Partition>(m, "Partition")
        .def_property_readonly("labels", &Partition::labels)
        .def("communities", &Partition::communities)
        .def("canonical_labels", &Partition::canonical_labels)
        .def_property_readonly("community_count", &Partition::community_count)
        .def_property_readonly("singleton_count", &Partition::singleton_count)
        .def_property_readonly("largest_community_size", &Partition::largest_community_size);

    m.def(
        "resolve_threshold",
        [](const ThresholdArg& t, const DegreeStats& s) { return resolve_threshold(to_strategy(t), s); },
        py::arg("threshold"), py::arg("stats"));
    m.def("run", &run, py::arg("graph"), py::arg("stream"), py::arg("threshold"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_parallel", &run_parallel, py::arg("graph"), py::arg("stream"), py::arg("threshold"),
          py::arg("workers"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "detect",
        [](const Graph& g, const ThresholdArg& threshold, std::uint64_t seed, unsigned workers) {
            const Degree d = resolve_threshold(to_strategy(threshold), degree_stats(g));
            return run_parallel(g, make_stream(g, seed), d, workers);
        },
        py::arg("graph"), py::arg("threshold") = "mode", py::arg("seed") = 0, py::arg("workers") = 1,
        "Shuffle, resolve D and run in one call.");
    m.def(
        "extract_communities",
        [](const Partition& p, const Graph* g, std::size_t min_size) {
            const Extraction e = g ? extract_communities(p, *g, min_size) : extract_communities(p, min_size);
            return py::make_tuple(e.cover.groups(), e.dropped);
        },
        py::arg("partition"), py::arg("graph") = nullptr, py::arg("min_size") = 1,
        "Returns (groups, dropped_count).");

    m.def("f1_pair", [](const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
        return f1_pair(a, b);
    }, py::arg("estimate"), py::arg("truth"));
    m.def(
        "avg_f1", [](const Groups& d, const Groups& t) { return avg_f1(Cover(d), Cover(t)); }, py::arg("detected"),
        py::arg("truth"));
    m.def(
        "nmi", [](const Groups& d, const Groups& t, std::size_t n) { return nmi(Cover(d), Cover(t), n); },
        py::arg("detected"), py::arg("truth"), py::arg("universe"));

    py::class_<ScoreReport>(m, "ScoreReport")
        .def_readonly("f1_forward", &ScoreReport::f1_forward)
        .def_readonly("f1_backward", &ScoreReport::f1_backward)
        .def_readonly("f1_avg", &ScoreReport::f1_avg)
        .def_readonly("nmi", &ScoreReport::nmi)
        .def_readonly("nmi_universe", &ScoreReport::nmi_universe);
    m.def(
        "score",
        [](const Groups& d, const Groups& t, std::optional<std::size_t> universe) {
            ScoreOptions options;
            options.universe = universe;
            return score(Cover(d), Cover(t), options);
        },
        py::arg("detected"), py::arg("truth"), py::arg("universe") = py::none());

    py::class_<IntraProbability>(m, "IntraProbability")
        .def_readonly("k", &IntraProbability::k)
        .def_readonly("value", &IntraProbability::value)
        .def_readonly("phi", &IntraProbability::phi);
    m.def("intra_probability", &intra_probability, py::arg("stats"), py::arg("k"));
    m.def("fpe_bound", &fpe_bound, py::arg("stats"), py::arg("threshold"));

    py::class_<FpeReport>(m, "FpeReport")
        .def_readonly("community", &FpeReport::community)
        .def_readonly("threshold", &FpeReport::threshold)
        .def_readonly("trials", &FpeReport::trials)
        .def_readonly("boundary_edges", &FpeReport::boundary_edges)
        .def_readonly("empirical_mean", &FpeReport::empirical_mean)
        .def_readonly("standard_error", &FpeReport::standard_error)
        .def_readonly("bound", &FpeReport::bound)
        .def_property_readonly("within_bound", &FpeReport::within_bound);
    m.def(
        "fpe_experiment",
        [](const Graph& g, const std::vector<NodeId>& c, Degree d, std::size_t trials, std::uint64_t seed) {
            py::gil_scoped_release release;
            return fpe_experiment(g, c, d, trials, seed);
        },
        py::arg("graph"), py::arg("community"), py::arg("threshold"), py::arg("trials"), py::arg("seed"));

    py::class_<ErResult>(m, "ErResult")
        .def_readonly("n", &ErResult::n)
        .def_readonly("p", &ErResult::p)
        .def_readonly("trials", &ErResult::trials)
        .def_readonly("mean_ratio", &ErResult::mean_ratio)
        .def_readonly("std_error", &ErResult::std_error)
        .def_readonly("fallback_trials", &ErResult::fallback_trials);
    m.def(
        "er_experiment",
        [](NodeId n, double p, std::size_t trials, const ThresholdArg& t, std::uint64_t seed, unsigned workers) {
            const auto strategy = to_strategy(t);
            py::gil_scoped_release release;
            return er_experiment(n, p, trials, strategy, seed, workers);
        },
        py::arg("n"), py::arg("p"), py::arg("trials"), py::arg("threshold") = "mode", py::arg("seed") = 0,
        py::arg("workers") = 1);

    py::class_<VarianceResult>(m, "VarianceResult")
        .def_readonly("runs", &VarianceResult::runs)
        .def_readonly("mean_f1", &VarianceResult::mean_f1)
        .def_readonly("std_f1", &VarianceResult::std_f1)
        .def_readonly("mean_communities", &VarianceResult::mean_communities)
        .def_readonly("std_communities", &VarianceResult::std_communities);
    m.def(
        "variance_experiment",
        [](const Graph& g, const Groups& truth, Degree d, std::size_t runs, std::uint64_t seed, std::size_t min_size) {
            Cover t(truth);
            py::gil_scoped_release release;
            return variance_experiment(g, t, d, runs, seed, min_size);
        },
        py::arg("graph"), py::arg("truth"), py::arg("threshold"), py::arg("runs"), py::arg("seed"),
        py::arg("min_size") = 1);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("thresholds", &SweepResult::thresholds)
        .def_readonly("f1", &SweepResult::f1)
        .def_readonly("quality_ratio", &SweepResult::quality_ratio)
        .def_readonly("max_community_size", &SweepResult::max_community_size)
        .def_readonly("best_threshold", &SweepResult::best_threshold);
    m.def(
        "sweep_d",
        [](const Graph& g, const Groups& truth, const std::vector<Degree>& ds, std::size_t runs, std::uint64_t seed) {
            Cover t(truth);
            py::gil_scoped_release release;
            return sweep_d(g, t, ds, runs, seed);
        },
        py::arg("graph"), py::arg("truth"), py::arg("thresholds"), py::arg("runs_per_d"), py::arg("seed"));
}
