#include "psiscore/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <sys/utsname.h>

#include "psiscore/metrics.hpp"
#include "psiscore/operator.hpp"

namespace psiscore {

std::string_view method_name(Method m) noexcept {
    switch (m) {
        case Method::PowerPsi: return "power-psi";
        case Method::PowerNf: return "power-nf";
        case Method::PageRank: return "pagerank";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "power-psi") return Method::PowerPsi;
    if (name == "power-nf") return Method::PowerNf;
    if (name == "pagerank") return Method::PageRank;
    throw std::invalid_argument(fmt::format("unknown method '{}'", name));
}

std::string_view reference_name(ReferenceMode m) noexcept {
    switch (m) {
        case ReferenceMode::Exact: return "exact";
        case ReferenceMode::TightestRun: return "tightest-run";
        case ReferenceMode::Auto: return "auto";
    }
    return "unknown";
}

ReferenceMode parse_reference(std::string_view name) {
    if (name == "exact") return ReferenceMode::Exact;
    if (name == "tightest-run" || name == "tightest") return ReferenceMode::TightestRun;
    if (name == "auto") return ReferenceMode::Auto;
    throw std::invalid_argument(fmt::format("unknown reference mode '{}'", name));
}

BenchReport tolerance_sweep(const DirectedGraph& g, const ActivityProfile& activity,
                            const SweepOptions& options) {
    if (options.methods.empty() || options.tolerances.empty()) {
        throw std::invalid_argument("sweep needs at least one method and one tolerance");
    }
    for (double tol : options.tolerances) {
        if (!(tol > 0.0) || !std::isfinite(tol)) {
            throw std::invalid_argument(fmt::format("tolerance must be positive, got {}", tol));
        }
    }
    const PsiOperator op(g, activity);

    BenchReport report;
    report.reference = options.reference;
    if (report.reference == ReferenceMode::Auto) {
        report.reference = g.num_nodes() <= options.dense_cap ? ReferenceMode::Exact
                                                              : ReferenceMode::TightestRun;
    }
    if (report.reference == ReferenceMode::Exact && g.num_nodes() > options.dense_cap) {
        throw CapacityError(fmt::format(
            "exact reference needs N <= {} but the graph has {} nodes; use tightest-run",
            options.dense_cap, g.num_nodes()));
    }

    double alpha = 0.85;
    if (options.alpha) {
        alpha = *options.alpha;
    } else if (activity.is_homogeneous()) {
        alpha = activity.mu()[0] / (activity.lambda()[0] + activity.mu()[0]);
    }
    const bool wants_pagerank = std::find(options.methods.begin(), options.methods.end(),
                                          Method::PageRank) != options.methods.end();
    if (wants_pagerank && !(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument(fmt::format("alpha must lie in (0, 1), got {}", alpha));
    }

    std::vector<double> truth;
    if (report.reference == ReferenceMode::Exact) {
        truth = exact_psi(op, options.dense_cap);
    } else {
        truth = power_psi(op, {kTightestTolerance, options.max_iterations}).psi;
    }

    std::vector<Method> methods = options.methods;
    std::sort(methods.begin(), methods.end());
    methods.erase(std::unique(methods.begin(), methods.end()), methods.end());
    std::vector<double> tolerances = options.tolerances;
    std::sort(tolerances.begin(), tolerances.end(), std::greater<>());
    tolerances.erase(std::unique(tolerances.begin(), tolerances.end()), tolerances.end());

    for (Method m : methods) {
        for (double tol : tolerances) {
            const SolverConfig cfg{tol, options.max_iterations};
            SolverResult r;
            switch (m) {
                case Method::PowerPsi: r = power_psi(op, cfg); break;
                case Method::PowerNf: r = psi_via_power_nf(op, cfg); break;
                case Method::PageRank: r = pagerank_power(g, alpha, cfg); break;
            }
            report.rows.push_back({m, tol, r.total_matvecs(), r.iterations, r.wall_seconds,
                                   relative_error(truth, r.psi), r.converged});
        }
    }

    report.header.emplace_back("nodes", std::to_string(g.num_nodes()));
    report.header.emplace_back("edges", std::to_string(g.num_edges()));
    report.header.emplace_back("reference", std::string(reference_name(report.reference)));
    if (wants_pagerank) {
        report.header.emplace_back("alpha", fmt::format("{:.17g}", alpha));
    }
    report.header.emplace_back("machine", machine_description());
    return report;
}

std::vector<double> decade_grid(int from_exp, int to_exp) {
    std::vector<double> grid;
    const int step = from_exp >= to_exp ? -1 : 1;
    for (int e = from_exp;; e += step) {
        grid.push_back(std::pow(10.0, e));
        if (e == to_exp) break;
    }
    return grid;
}

namespace {

double parse_positive(std::string_view text) {
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    double value = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc() || ptr != end || !(value > 0.0) ||
        !std::isfinite(value)) {
        throw std::invalid_argument(fmt::format("invalid tolerance '{}'", text));
    }
    return value;
}

int decade_exponent(double value) {
    const double e = std::log10(value);
    const double rounded = std::round(e);
    if (std::abs(e - rounded) > 1e-9) {
        throw std::invalid_argument(
            fmt::format("grid endpoint {} is not a power of ten", value));
    }
    return static_cast<int>(rounded);
}

}  // namespace

std::vector<double> parse_tolerances(std::string_view spec) {
    if (const auto colon = spec.find(':'); colon != std::string_view::npos) {
        const int from = decade_exponent(parse_positive(spec.substr(0, colon)));
        const int to = decade_exponent(parse_positive(spec.substr(colon + 1)));
        return decade_grid(from, to);
    }
    std::vector<double> out;
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        out.push_back(parse_positive(spec.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        spec.remove_prefix(comma + 1);
    }
    if (out.empty()) {
        throw std::invalid_argument("empty tolerance list");
    }
    return out;
}

std::string machine_description() {
    struct utsname info {};
    std::string os = "unknown";
    if (uname(&info) == 0) {
        os = fmt::format("{} {} {}", info.sysname, info.release, info.machine);
    }
    return fmt::format("{}; {} hardware threads", os, std::thread::hardware_concurrency());
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
    for (const auto& [key, value] : report.header) {
        out << "# " << key << ": " << value << '\n';
    }
    out << "method,tolerance,matvecs,iterations,seconds,error,converged\n";
    for (const auto& row : report.rows) {
        out << fmt::format("{},{:.17g},{},{},{:.17g},{:.17g},{}\n", method_name(row.method),
                           row.tolerance, row.matvecs, row.iterations, row.seconds, row.error,
                           row.converged ? "true" : "false");
    }
}

}  // namespace psiscore
