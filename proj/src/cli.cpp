#include "scoda/cli.hpp"

#include <sys/resource.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "scoda/cover.hpp"
#include "scoda/error.hpp"
#include "scoda/graph.hpp"
#include "scoda/metrics.hpp"
#include "scoda/rng.hpp"
#include "scoda/scoda.hpp"
#include "scoda/stream.hpp"
#include "scoda/theory.hpp"

namespace scoda::cli {

namespace {

// Destination for data: the --out file when given, stdout otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw Error("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

std::string fmt(double x, int precision = 6) {
    std::ostringstream os;
    os << std::setprecision(precision) << x;
    return os.str();
}

long peak_rss_kib() {
    rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    return usage.ru_maxrss;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed, std::ostream& err) {
    const std::uint64_t s = seed ? *seed : entropy_seed();
    err << "seed=" << s << '\n';
    return s;
}

// Parses "a:b" (inclusive) or a comma-separated list of thresholds.
std::vector<Degree> parse_range(const std::string& text) {
    std::vector<Degree> out;
    const auto colon = text.find(':');
    try {
        if (colon != std::string::npos) {
            const unsigned long lo = std::stoul(text.substr(0, colon));
            const unsigned long hi = std::stoul(text.substr(colon + 1));
            if (lo == 0 || hi < lo) throw ValidationError("");
            for (unsigned long d = lo; d <= hi; ++d) out.push_back(static_cast<Degree>(d));
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const unsigned long d = std::stoul(item);
                if (d == 0) throw ValidationError("");
                out.push_back(static_cast<Degree>(d));
            }
        }
    } catch (const std::exception&) {
        throw ValidationError("bad --d-range '" + text + "' (expected LO:HI or a comma list of values >= 1)");
    }
    if (out.empty()) throw ValidationError("--d-range is empty");
    return out;
}

struct GraphInput {
    std::string path;
    bool dedupe = false;

    void add_to(CLI::App* cmd) {
        cmd->add_option("edge_file", path, "SNAP edge list: 'u v [weight]' per line, '#' comments")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_flag("--dedupe", dedupe, "Drop repeated undirected edges instead of failing");
    }
    Graph load() const { return load_graph_file(path, LoadOptions{dedupe}); }
};

struct DetectArgs {
    GraphInput input;
    std::optional<std::uint64_t> seed;
    std::string threshold = "mode";
    unsigned workers = 1;
    std::size_t min_size = 1;
    bool weighted = false;
    std::string out;
    std::string format = "pairs";
};

int cmd_detect(const DetectArgs& a, std::ostream& out, std::ostream& err) {
    const auto strategy = ThresholdStrategy::parse(a.threshold);
    Graph g = a.input.load();
    if (a.weighted && !g.weighted()) throw ValidationError("--weighted requires a third (weight) column");
    const std::uint64_t seed = resolve_seed(a.seed, err);
    const DegreeStats stats = degree_stats(g);
    // Without a degree > 1 the output is the same for every D.
    const Degree d = resolve_threshold(strategy, stats, Degree{1});

    const auto start = std::chrono::steady_clock::now();
    const EdgeStream stream =
        a.weighted ? weighted_shuffle(g.weights(), seed) : shuffle(g.edge_count(), seed);
    const Partition part = run_parallel(g, stream, d, a.workers);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const Extraction extraction = extract_communities(part, g, a.min_size);
    Sink sink(a.out, out);
    if (a.format == "communities") {
        write_cover(sink.get(), extraction.cover);
    } else {
        const auto labels = part.canonical_labels();
        std::vector<std::size_t> size(labels.size(), 0);
        for (auto l : labels) ++size[l];
        for (NodeId u = 0; u < g.node_count(); ++u)
            if (size[labels[u]] >= a.min_size) sink.get() << g.external_id(u) << ' ' << labels[u] << '\n';
    }
    sink.get().flush();

    const std::size_t state_bytes = static_cast<std::size_t>(g.node_count()) * (sizeof(Degree) + sizeof(NodeId));
    err << "n=" << g.node_count() << " m=" << g.edge_count() << " self_loops_dropped=" << g.self_loops_dropped()
        << " duplicates_dropped=" << g.duplicates_dropped() << '\n'
        << "threshold=" << strategy.to_string() << " D=" << d << " workers=" << a.workers << '\n'
        << "communities=" << part.community_count() << " singletons=" << part.singleton_count()
        << " max_community_size=" << part.largest_community_size() << " written=" << extraction.cover.size()
        << " dropped=" << extraction.dropped << '\n'
        << "time_s=" << fmt(seconds) << '\n'
        << "state_bytes=" << state_bytes << " stream_bytes=" << stream.memory_bytes()
        << " peak_rss_kib=" << peak_rss_kib() << '\n';
    return 0;
}

struct ScoreArgs {
    std::string detected;
    std::string truth;
    std::string metric = "all";
    std::optional<std::size_t> universe;
    std::string format = "text";
    std::string out;
};

int cmd_score(const ScoreArgs& a, std::ostream& out, std::ostream&) {
    const Cover detected = read_cover_file(a.detected);
    const Cover truth = read_cover_file(a.truth);
    ScoreOptions options;
    options.compute_f1 = a.metric != "nmi";
    options.compute_nmi = a.metric != "f1";
    options.universe = a.universe;
    const ScoreReport r = score(detected, truth, options);

    Sink sink(a.out, out);
    auto& os = sink.get();
    if (a.format == "json") {
        nlohmann::json j;
        j["detected_groups"] = detected.size();
        j["truth_groups"] = truth.size();
        if (options.compute_f1) {
            j["f1_forward"] = r.f1_forward;
            j["f1_backward"] = r.f1_backward;
            j["f1_avg"] = r.f1_avg;
            auto& matches = j["matches"] = nlohmann::json::array();
            for (const auto& m : r.matches) {
                matches.push_back({{"truth", m.truth_group},
                                   {"detected", m.detected_group ? nlohmann::json(*m.detected_group) : nullptr},
                                   {"f1", m.f1}});
            }
        }
        if (r.nmi) {
            j["nmi"] = *r.nmi;
            j["nmi_universe"] = r.nmi_universe;
        }
        os << j.dump(2) << '\n';
    } else if (a.format == "csv") {
        os << "detected_groups,truth_groups,f1_forward,f1_backward,f1_avg,nmi,nmi_universe\n";
        os << detected.size() << ',' << truth.size() << ',';
        if (options.compute_f1)
            os << fmt(r.f1_forward, 10) << ',' << fmt(r.f1_backward, 10) << ',' << fmt(r.f1_avg, 10) << ',';
        else
            os << ",,,";
        if (r.nmi)
            os << fmt(*r.nmi, 10) << ',' << r.nmi_universe;
        else
            os << ',';
        os << '\n';
    } else {
        os << std::fixed << std::setprecision(4);
        os << std::left << std::setw(16) << "detected groups" << detected.size() << '\n';
        os << std::left << std::setw(16) << "truth groups" << truth.size() << '\n';
        if (options.compute_f1) {
            os << std::left << std::setw(16) << "F1 forward" << r.f1_forward << '\n';
            os << std::left << std::setw(16) << "F1 backward" << r.f1_backward << '\n';
            os << std::left << std::setw(16) << "F1 average" << r.f1_avg << '\n';
        }
        if (r.nmi) os << std::left << std::setw(16) << "NMI" << *r.nmi << "  (universe " << r.nmi_universe << ")\n";
    }
    return 0;
}

struct DegreeArgs {
    GraphInput input;
    bool histogram = false;
    std::string out;
};

int cmd_degree_stats(const DegreeArgs& a, std::ostream& out, std::ostream&) {
    const Graph g = a.input.load();
    const DegreeStats s = degree_stats(g);
    Sink sink(a.out, out);
    auto& os = sink.get();
    if (a.histogram) {
        os << "degree,count\n";
        for (const auto& [d, c] : s.histogram) os << d << ',' << c << '\n';
        return 0;
    }
    os << "n,m,d_avg,d_med,d_mode,d_max,density\n";
    os << g.node_count() << ',' << g.edge_count() << ',' << fmt(s.average, 10) << ',' << fmt(s.median, 10) << ','
       << (s.mode ? std::to_string(*s.mode) : std::string()) << ',' << s.max << ',' << fmt(s.density, 10) << '\n';
    return 0;
}

struct ErArgs {
    std::vector<NodeId> n{10};
    std::vector<double> p{0.5};
    std::size_t trials = 1000;
    std::string threshold = "mode";
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::string out;
};

int cmd_er_bench(const ErArgs& a, std::ostream& out, std::ostream& err) {
    const auto strategy = ThresholdStrategy::parse(a.threshold);
    const std::uint64_t seed = resolve_seed(a.seed, err);
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "n,p,trials,threshold,workers,mean_ratio,std_error,fallback_trials\n";
    std::uint64_t config = 0;
    for (NodeId n : a.n) {
        for (double p : a.p) {
            const ErResult r = er_experiment(n, p, a.trials, strategy, derive_seed(seed, config++), a.workers);
            os << r.n << ',' << fmt(r.p) << ',' << r.trials << ',' << strategy.to_string() << ',' << a.workers << ','
               << fmt(r.mean_ratio, 10) << ',' << fmt(r.std_error, 10) << ',' << r.fallback_trials << '\n';
        }
    }
    return 0;
}

struct SweepArgs {
    GraphInput input;
    std::string truth;
    std::string range = "1:10";
    std::size_t runs = 10;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_sweep_d(const SweepArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = a.input.load();
    const Cover truth = read_cover_file(a.truth);
    const auto range = parse_range(a.range);
    const std::uint64_t seed = resolve_seed(a.seed, err);
    const SweepResult r = sweep_d(g, truth, range, a.runs, seed);

    auto rounded = [](double x) { return static_cast<Degree>(std::floor(x + 0.5)); };
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "D,runs,f1,q,max_community_size,marks\n";
    for (std::size_t i = 0; i < r.thresholds.size(); ++i) {
        const Degree d = r.thresholds[i];
        std::string marks;
        auto mark = [&](bool hit, const char* name) {
            if (!hit) return;
            if (!marks.empty()) marks += ';';
            marks += name;
        };
        mark(d == rounded(r.average_degree), "d_avg");
        mark(d == rounded(r.median_degree), "d_med");
        mark(r.mode_degree && d == *r.mode_degree, "d_mode");
        mark(d == r.best_threshold, "best");
        os << d << ',' << a.runs << ',' << fmt(r.f1[i], 10) << ',' << fmt(r.quality_ratio[i], 10) << ','
           << r.max_community_size[i] << ',' << marks << '\n';
    }
    err << "d_avg=" << fmt(r.average_degree) << " d_med=" << fmt(r.median_degree)
        << " d_mode=" << (r.mode_degree ? std::to_string(*r.mode_degree) : std::string("undefined")) << '\n';
    return 0;
}

struct BoundArgs {
    GraphInput input;
    std::string communities;
    Degree d = 0;
    std::string threshold;
    std::size_t trials = 10000;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_verify_bound(const BoundArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = a.input.load();
    const Cover cover = read_cover_file(a.communities);
    Degree d = a.d;
    if (d == 0) d = resolve_threshold(ThresholdStrategy::parse(a.threshold.empty() ? "mode" : a.threshold), degree_stats(g));
    const std::uint64_t seed = resolve_seed(a.seed, err);
    err << "D=" << d << '\n';

    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "community,size,boundary_edges,D,trials,empirical_mean,empirical_std,std_error,bound,within_bound\n";
    bool all_within = true;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        std::vector<NodeId> members;
        for (auto x : cover[i]) {
            const auto u = g.internal_id(x);
            if (!u) throw ValidationError("community " + std::to_string(i) + ": node " + std::to_string(x) +
                                          " is not in the graph");
            members.push_back(*u);
        }
        const FpeReport r = fpe_experiment(g, members, d, a.trials, derive_seed(seed, i));
        all_within = all_within && r.within_bound();
        os << i << ',' << r.community.size() << ',' << r.boundary_edges << ',' << r.threshold << ',' << r.trials << ','
           << fmt(r.empirical_mean, 10) << ',' << fmt(r.empirical_std, 10) << ',' << fmt(r.standard_error, 10) << ','
           << fmt(r.bound, 10) << ',' << (r.within_bound() ? "true" : "false") << '\n';
    }
    err << (all_within ? "empirical <= bound for every community\n" : "bound exceeded for some community\n");
    return 0;
}

struct VarianceArgs {
    GraphInput input;
    std::string truth;
    std::size_t runs = 100;
    std::string threshold = "mode";
    std::size_t min_size = 1;
    std::optional<std::uint64_t> seed;
    std::string out;
};

int cmd_variance(const VarianceArgs& a, std::ostream& out, std::ostream& err) {
    const Graph g = a.input.load();
    const Cover truth = read_cover_file(a.truth);
    const auto strategy = ThresholdStrategy::parse(a.threshold);
    const Degree d = resolve_threshold(strategy, degree_stats(g));
    const std::uint64_t seed = resolve_seed(a.seed, err);
    err << "D=" << d << '\n';
    const VarianceResult r = variance_experiment(g, truth, d, a.runs, seed, a.min_size);
    Sink sink(a.out, out);
    sink.get() << "runs,D,min_size,mean_f1,std_f1,mean_communities,std_communities\n"
               << r.runs << ',' << d << ',' << a.min_size << ',' << fmt(r.mean_f1, 10) << ',' << fmt(r.std_f1, 10)
               << ',' << fmt(r.mean_communities, 10) << ',' << fmt(r.std_communities, 10) << '\n';
    return 0;
}

void add_seed(CLI::App* cmd, std::optional<std::uint64_t>& seed) {
    cmd->add_option("--seed", seed, "Random seed; drawn from system entropy and printed when omitted");
}

void add_out(CLI::App* cmd, std::string& out) {
    cmd->add_option("--out", out, "Write data to this file instead of stdout");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Streaming community detection (SCoDA) and its evaluation experiments", "scoda"};
    app.require_subcommand(1);

    DetectArgs detect;
    auto* c_detect = app.add_subcommand("detect", "Detect communities in one randomized pass over the edges");
    detect.input.add_to(c_detect);
    add_seed(c_detect, detect.seed);
    c_detect->add_option("--threshold", detect.threshold, "mode | median | avg | fixed:D")->capture_default_str();
    c_detect->add_option("--workers", detect.workers, "Threads sharing the degree/label arrays")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c_detect->add_option("--min-size", detect.min_size, "Omit communities smaller than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    c_detect->add_flag("--weighted", detect.weighted, "Draw edges with probability proportional to weight");
    add_out(c_detect, detect.out);
    c_detect->add_option("--format", detect.format, "pairs: 'node label' per line; communities: one group per line")
        ->capture_default_str()
        ->check(CLI::IsMember({"pairs", "communities"}));

    ScoreArgs score_args;
    auto* c_score = app.add_subcommand("score", "Score detected communities against ground truth (F1, NMI)");
    c_score->add_option("detected", score_args.detected, "Community file, one group per line")
        ->required()
        ->check(CLI::ExistingFile);
    c_score->add_option("truth", score_args.truth, "Ground-truth community file")->required()->check(CLI::ExistingFile);
    c_score->add_option("--metric", score_args.metric, "f1 | nmi | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"f1", "nmi", "all"}));
    c_score->add_option("--universe", score_args.universe,
                        "NMI node universe size (default: nodes of the ground truth, detected restricted to them)");
    c_score->add_option("--format", score_args.format, "text | csv | json")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "csv", "json"}));
    add_out(c_score, score_args.out);
    c_score->footer("CSV columns: detected_groups,truth_groups,f1_forward,f1_backward,f1_avg,nmi,nmi_universe");

    DegreeArgs degree;
    auto* c_degree = app.add_subcommand("degree-stats", "Degree distribution summary used to choose D");
    degree.input.add_to(c_degree);
    c_degree->add_flag("--histogram", degree.histogram, "Print the degree histogram instead");
    add_out(c_degree, degree.out);
    c_degree->footer("CSV columns: n,m,d_avg,d_med,d_mode,d_max,density (d_mode empty when undefined); "
                     "with --histogram: degree,count");

    ErArgs er;
    auto* c_er = app.add_subcommand("er-bench", "Largest-community ratio of SCoDA on Erdos-Renyi graphs");
    c_er->add_option("--n", er.n, "Node counts")->capture_default_str()->delimiter(',');
    c_er->add_option("--p", er.p, "Edge probabilities in (0, 1]")->capture_default_str()->delimiter(',');
    c_er->add_option("--trials", er.trials, "Graphs per (n, p)")->capture_default_str()->check(CLI::PositiveNumber);
    c_er->add_option("--threshold", er.threshold, "mode | median | avg | fixed:D")->capture_default_str();
    c_er->add_option("--workers", er.workers, "Threads per SCoDA run")->capture_default_str()->check(CLI::PositiveNumber);
    add_seed(c_er, er.seed);
    add_out(c_er, er.out);
    c_er->footer("CSV columns: n,p,trials,threshold,workers,mean_ratio,std_error,fallback_trials");

    SweepArgs sweep;
    auto* c_sweep = app.add_subcommand("sweep-d", "Average F1 and quality ratio Q(D) over a range of thresholds");
    sweep.input.add_to(c_sweep);
    c_sweep->add_option("truth", sweep.truth, "Ground-truth community file")->required()->check(CLI::ExistingFile);
    c_sweep->add_option("--d-range", sweep.range, "LO:HI or comma list")->capture_default_str();
    c_sweep->add_option("--runs", sweep.runs, "Runs per threshold")->capture_default_str()->check(CLI::PositiveNumber);
    add_seed(c_sweep, sweep.seed);
    add_out(c_sweep, sweep.out);
    c_sweep->footer("CSV columns: D,runs,f1,q,max_community_size,marks "
                    "(marks: which of d_avg, d_med, d_mode, best equal D)");

    BoundArgs bound;
    auto* c_bound = app.add_subcommand("verify-bound", "Monte-Carlo false-positive edges vs the closed-form bound");
    bound.input.add_to(c_bound);
    c_bound->add_option("--community-file", bound.communities, "Communities to test, one per line")
        ->required()
        ->check(CLI::ExistingFile);
    auto* d_opt = c_bound->add_option("--d", bound.d, "Threshold D")->check(CLI::PositiveNumber);
    c_bound->add_option("--threshold", bound.threshold, "Strategy for D when --d is absent (default mode)")
        ->excludes(d_opt);
    c_bound->add_option("--trials", bound.trials, "Runs per community")->capture_default_str()->check(CLI::PositiveNumber);
    add_seed(c_bound, bound.seed);
    add_out(c_bound, bound.out);
    c_bound->footer("CSV columns: community,size,boundary_edges,D,trials,empirical_mean,empirical_std,std_error,bound,"
                    "within_bound");

    VarianceArgs variance;
    auto* c_var = app.add_subcommand("variance", "Spread of average F1 and community count over repeated runs");
    variance.input.add_to(c_var);
    c_var->add_option("truth", variance.truth, "Ground-truth community file")->required()->check(CLI::ExistingFile);
    c_var->add_option("--runs", variance.runs, "Independent runs (>= 2)")->capture_default_str();
    c_var->add_option("--threshold", variance.threshold, "mode | median | avg | fixed:D")->capture_default_str();
    c_var->add_option("--min-size", variance.min_size, "Ignore communities smaller than this")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    add_seed(c_var, variance.seed);
    add_out(c_var, variance.out);
    c_var->footer("CSV columns: runs,D,min_size,mean_f1,std_f1,mean_communities,std_communities");

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("scoda");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*c_detect) return cmd_detect(detect, out, err);
        if (*c_score) return cmd_score(score_args, out, err);
        if (*c_degree) return cmd_degree_stats(degree, out, err);
        if (*c_er) return cmd_er_bench(er, out, err);
        if (*c_sweep) return cmd_sweep_d(sweep, out, err);
        if (*c_bound) return cmd_verify_bound(bound, out, err);
        if (*c_var) return cmd_variance(variance, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace scoda::cli
