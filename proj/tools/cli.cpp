#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "psiscore/psiscore.hpp"

namespace psiscore::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

constexpr double kDefaultLambda = 0.15;
constexpr double kDefaultMu = 0.85;
constexpr std::size_t kPowerNfWarnNodes = 100'000;

struct ActivityOptions {
    std::string file;
    std::vector<double> homogeneous;
    std::optional<std::uint64_t> seed;

    void add_to(CLI::App& cmd) {
        cmd.add_option("--activity", file, "Activity CSV (label,lambda,mu)");
        cmd.add_option("--homogeneous", homogeneous, "Constant rates: LAMBDA MU")
            ->expected(2)
            ->type_name("FLOAT FLOAT");
        cmd.add_option("--random-seed", seed, "Draw rates uniformly from (0,1) with this seed");
    }

    int count() const {
        return static_cast<int>(!file.empty()) + static_cast<int>(!homogeneous.empty()) +
               static_cast<int>(seed.has_value());
    }

    ActivityProfile resolve(const DirectedGraph& g) const {
        if (count() > 1) {
            throw UsageError("give at most one of --activity, --homogeneous, --random-seed");
        }
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw IoError(fmt::format("cannot open activity file '{}'", file));
            return load_activity(in, g);
        }
        if (seed) {
            return random_uniform(g.num_nodes(), *seed);
        }
        if (!homogeneous.empty()) {
            return homogeneous_profile(g.num_nodes());
        }
        return psiscore::homogeneous(g.num_nodes(), kDefaultLambda, kDefaultMu);
    }

    ActivityProfile homogeneous_profile(std::size_t n) const {
        const double lambda = homogeneous[0], mu = homogeneous[1];
        if (!(lambda >= 0.0) || !(mu >= 0.0) || !(lambda + mu > 0.0)) {
            throw UsageError("--homogeneous needs non-negative rates with a positive sum");
        }
        return psiscore::homogeneous(n, lambda, mu);
    }

    std::string describe() const {
        if (!file.empty()) return "file " + file;
        if (seed) return fmt::format("random-uniform seed {}", *seed);
        if (!homogeneous.empty())
            return fmt::format("homogeneous {:.17g} {:.17g}", homogeneous[0], homogeneous[1]);
        return fmt::format("homogeneous {} {} (default)", kDefaultLambda, kDefaultMu);
    }
};

DirectedGraph read_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(fmt::format("cannot open edge list '{}'", path));
    return parse_edge_list(in);
}

// Writes to the --output file, or to `out` when no path was given.
template <typename Writer>
void emit(const std::string& path, std::ostream& out, Writer&& write) {
    if (path.empty()) {
        write(out);
        out.flush();
        return;
    }
    std::ofstream file(path);
    if (!file) throw IoError(fmt::format("cannot open output file '{}'", path));
    write(file);
    file.flush();
    if (!file) throw IoError(fmt::format("failed writing '{}'", path));
}

void check_tolerance(double tol) {
    if (!(tol > 0.0)) throw UsageError(fmt::format("--tol must be positive, got {}", tol));
}

void print_summary(std::ostream& err, const DirectedGraph& g, std::string_view method,
                   const SolverResult& r) {
    err << fmt::format(
        "nodes={} edges={} method={} iterations={} matvecs={} seconds={:.6f} converged={}\n",
        g.num_nodes(), g.num_edges(), method, r.iterations, r.total_matvecs(), r.wall_seconds,
        r.converged ? "true" : "false");
}

void warn_dropped(std::ostream& err, const DirectedGraph& g) {
    if (g.dropped_self_loops() > 0 || g.dropped_duplicates() > 0) {
        err << fmt::format("warning: dropped {} self-loop(s) and {} duplicate edge(s)\n",
                           g.dropped_self_loops(), g.dropped_duplicates());
    }
}

int finish(std::ostream& err, const SolverResult& r) {
    if (!r.converged) {
        err << "error: solver did not reach the tolerance within the iteration cap; "
               "output is partial\n";
        return kNotConverged;
    }
    return kOk;
}

struct RankCommand {
    std::string edges;
    ActivityOptions activity;
    std::string method = "power-psi";
    double tolerance = 1e-9;
    std::string output;
    std::size_t dense_cap = kDefaultDenseCap;
    std::size_t max_iterations = kDefaultMaxIterations;

    int run(std::ostream& out, std::ostream& err) const {
        check_tolerance(tolerance);
        const DirectedGraph g = read_graph(edges);
        warn_dropped(err, g);
        const ActivityProfile act = activity.resolve(g);
        const PsiOperator op(g, act);
        const SolverConfig cfg{tolerance, max_iterations};

        SolverResult r;
        if (method == "power-psi") {
            r = power_psi(op, cfg);
        } else if (method == "power-nf") {
            if (g.num_nodes() > kPowerNfWarnNodes) {
                err << fmt::format(
                    "warning: power-nf solves one system per node; expect very long runtimes "
                    "on {} nodes\n",
                    g.num_nodes());
            }
            r = psi_via_power_nf(op, cfg);
        } else if (method == "exact") {
            r.psi = exact_psi(op, dense_cap);
            r.converged = true;
        } else {
            throw UsageError(fmt::format("unknown method '{}'", method));
        }
        const auto ranking = rank_vector(r.psi, g.labels());
        emit(output, out, [&](std::ostream& os) { write_ranking_csv(ranking, os); });
        print_summary(err, g, method, r);
        return finish(err, r);
    }
};

struct PageRankCommand {
    std::string edges;
    double alpha = 0.85;
    double tolerance = 1e-9;
    std::string output;
    std::size_t max_iterations = kDefaultMaxIterations;

    int run(std::ostream& out, std::ostream& err) const {
        check_tolerance(tolerance);
        if (!(alpha > 0.0 && alpha < 1.0)) {
            throw UsageError(fmt::format("--alpha must lie in (0, 1), got {}", alpha));
        }
        const DirectedGraph g = read_graph(edges);
        warn_dropped(err, g);
        const SolverResult r = pagerank_power(g, alpha, {tolerance, max_iterations});
        const auto ranking = rank_vector(r.psi, g.labels());
        emit(output, out, [&](std::ostream& os) { write_ranking_csv(ranking, os); });
        print_summary(err, g, "pagerank", r);
        return finish(err, r);
    }
};

struct BenchCommand {
    std::string edges;
    ActivityOptions activity;
    std::vector<std::string> methods{"power-psi", "power-nf"};
    std::string tolerances = "1e-1:1e-9";
    std::string reference = "auto";
    std::optional<double> alpha;
    std::string output;
    std::size_t dense_cap = kDefaultDenseCap;
    std::size_t max_iterations = kDefaultMaxIterations;

    int run(std::ostream& out, std::ostream& err) const {
        SweepOptions opts;
        opts.reference = parse_reference(reference);
        for (const auto& name : methods) {
            if (name == "exact-reference") {
                opts.reference = ReferenceMode::Exact;
            } else if (name == "tightest-reference") {
                opts.reference = ReferenceMode::TightestRun;
            } else {
                opts.methods.push_back(parse_method(name));
            }
        }
        opts.tolerances = parse_tolerances(tolerances);
        opts.dense_cap = dense_cap;
        opts.max_iterations = max_iterations;
        opts.alpha = alpha;

        const DirectedGraph g = read_graph(edges);
        warn_dropped(err, g);
        const ActivityProfile act = activity.resolve(g);
        BenchReport report = tolerance_sweep(g, act, opts);
        report.header.insert(report.header.begin(), {"activity", activity.describe()});
        report.header.insert(report.header.begin(), {"graph", edges});
        emit(output, out, [&](std::ostream& os) { write_bench_csv(report, os); });

        bool all_converged = true;
        for (const auto& row : report.rows) all_converged = all_converged && row.converged;
        err << fmt::format("nodes={} edges={} rows={} reference={}\n", g.num_nodes(),
                           g.num_edges(), report.rows.size(), reference_name(report.reference));
        if (!all_converged) {
            err << "warning: some cells hit the iteration cap (converged=false rows)\n";
        }
        return kOk;
    }
};

struct GenActivityCommand {
    std::optional<std::size_t> nodes;
    std::string edges;
    std::optional<std::uint64_t> seed;
    std::vector<double> homogeneous;
    std::string output;

    int run(std::ostream& out, std::ostream&) const {
        if (nodes.has_value() == !edges.empty()) {
            throw UsageError("gen-activity needs exactly one of --nodes or --edges");
        }
        if (seed && !homogeneous.empty()) {
            throw UsageError("give at most one of --seed, --homogeneous");
        }
        std::vector<NodeLabel> labels;
        if (nodes) {
            if (*nodes == 0) throw UsageError("--nodes must be at least 1");
            labels.resize(*nodes);
            for (std::size_t k = 0; k < *nodes; ++k) labels[k] = static_cast<NodeLabel>(k);
        } else {
            labels = read_graph(edges).labels();
        }
        ActivityProfile profile;
        if (seed) {
            profile = random_uniform(labels.size(), *seed);
        } else if (!homogeneous.empty()) {
            ActivityOptions a;
            a.homogeneous = homogeneous;
            profile = a.homogeneous_profile(labels.size());
        } else {
            profile = psiscore::homogeneous(labels.size(), kDefaultLambda, kDefaultMu);
        }
        emit(output, out, [&](std::ostream& os) { save_activity(profile, labels, os); });
        return kOk;
    }
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"psi-score influence ranking on follower/leader graphs", "psiscore"};
    app.require_subcommand(1);

    RankCommand rank;
    auto* rank_cmd = app.add_subcommand("rank", "Rank users by psi-score");
    rank_cmd->add_option("--edges", rank.edges, "Edge list: 'src dst' means src follows dst")
        ->required();
    rank.activity.add_to(*rank_cmd);
    rank_cmd->add_option("--method", rank.method, "power-psi | power-nf | exact")
        ->check(CLI::IsMember({"power-psi", "power-nf", "exact"}));
    rank_cmd->add_option("--tol", rank.tolerance, "Tolerance (default 1e-9)");
    rank_cmd->add_option("--output,-o", rank.output, "Ranking CSV path (default stdout)");
    rank_cmd->add_option("--dense-cap", rank.dense_cap, "Node limit for --method exact");
    rank_cmd->add_option("--max-iter", rank.max_iterations, "Iteration cap")
        ->check(CLI::PositiveNumber);

    PageRankCommand pr;
    auto* pr_cmd = app.add_subcommand("pagerank", "Rank users by PageRank (power method)");
    pr_cmd->add_option("--edges", pr.edges, "Edge list")->required();
    pr_cmd->add_option("--alpha", pr.alpha, "Damping factor in (0,1) (default 0.85)");
    pr_cmd->add_option("--tol", pr.tolerance, "Tolerance (default 1e-9)");
    pr_cmd->add_option("--output,-o", pr.output, "Ranking CSV path (default stdout)");
    pr_cmd->add_option("--max-iter", pr.max_iterations, "Iteration cap")
        ->check(CLI::PositiveNumber);

    BenchCommand bench;
    auto* bench_cmd = app.add_subcommand("bench", "Tolerance sweep: matvecs, time and error");
    bench_cmd->add_option("--edges", bench.edges, "Edge list")->required();
    bench.activity.add_to(*bench_cmd);
    bench_cmd->add_option("--methods", bench.methods,
                          "Comma list of power-psi, power-nf, pagerank")
        ->delimiter(',');
    bench_cmd->add_option("--tolerances", bench.tolerances,
                          "Decade grid '1e-1:1e-9' or list '1e-3,1e-6'");
    bench_cmd->add_option("--reference", bench.reference, "auto | exact | tightest-run");
    bench_cmd->add_option("--alpha", bench.alpha, "PageRank damping");
    bench_cmd->add_option("--output,-o", bench.output, "Bench CSV path (default stdout)");
    bench_cmd->add_option("--dense-cap", bench.dense_cap, "Node limit for the exact reference");
    bench_cmd->add_option("--max-iter", bench.max_iterations, "Iteration cap")
        ->check(CLI::PositiveNumber);

    GenActivityCommand gen;
    auto* gen_cmd = app.add_subcommand("gen-activity", "Write an activity CSV");
    gen_cmd->add_option("--nodes", gen.nodes, "Labels 0..N-1");
    gen_cmd->add_option("--edges", gen.edges, "Take labels from this edge list");
    gen_cmd->add_option("--seed", gen.seed, "Uniform (0,1) rates with this seed");
    gen_cmd->add_option("--homogeneous", gen.homogeneous, "Constant rates: LAMBDA MU")
        ->expected(2)
        ->type_name("FLOAT FLOAT");
    gen_cmd->add_option("--output,-o", gen.output, "Activity CSV path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        if (const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands()[0]) {
            err << sub->help();
        }
        return kUsage;
    }

    try {
        if (rank_cmd->parsed()) return rank.run(out, err);
        if (pr_cmd->parsed()) return pr.run(out, err);
        if (bench_cmd->parsed()) return bench.run(out, err);
        if (gen_cmd->parsed()) return gen.run(out, err);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const CapacityError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return kBadInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
    return kUsage;
}

}  // namespace psiscore::cli
