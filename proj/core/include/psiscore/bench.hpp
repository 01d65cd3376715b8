#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psiscore/activity.hpp"
#include "psiscore/graph.hpp"
#include "psiscore/solvers.hpp"

namespace psiscore {

enum class Method { PowerPsi, PowerNf, PageRank };

std::string_view method_name(Method m) noexcept;
/// Accepts "power-psi", "power-nf" and "pagerank". Throws std::invalid_argument.
Method parse_method(std::string_view name);

/// Where the sweep's psi_true comes from. `Auto` picks the dense solve when
/// the graph fits under the dense cap, otherwise the tightest power-psi run.
enum class ReferenceMode { Exact, TightestRun, Auto };

std::string_view reference_name(ReferenceMode m) noexcept;
ReferenceMode parse_reference(std::string_view name);

/// Tolerance of the power-psi run used as reference when no dense solve is done.
inline constexpr double kTightestTolerance = 1e-12;

struct BenchRow {
    Method method;
    double tolerance;
    std::size_t matvecs;
    std::size_t iterations;
    double seconds;
    double error;
    bool converged;
};

struct BenchReport {
    std::vector<BenchRow> rows;
    /// Reference actually used (never Auto).
    ReferenceMode reference = ReferenceMode::Exact;
    /// Free-form "key: value" lines written as '#' comments ahead of the CSV.
    std::vector<std::pair<std::string, std::string>> header;
};

struct SweepOptions {
    std::vector<Method> methods;
    std::vector<double> tolerances;
    ReferenceMode reference = ReferenceMode::Auto;
    std::size_t dense_cap = kDefaultDenseCap;
    std::size_t max_iterations = kDefaultMaxIterations;
    /// PageRank damping. Defaults to mu/(lambda+mu) for homogeneous activity,
    /// else 0.85.
    std::optional<double> alpha;
};

/// Runs every (method, tolerance) cell sequentially and scores it against the
/// reference with relative_error. Timing covers the solver call only.
/// Rows are ordered by method (enum order) then by descending tolerance.
/// Throws CapacityError before running anything when an exact reference is
/// requested above the dense cap.
BenchReport tolerance_sweep(const DirectedGraph& g, const ActivityProfile& activity,
                            const SweepOptions& options);

/// Tolerances 10^from_exp, 10^(from_exp-1), ..., 10^to_exp.
std::vector<double> decade_grid(int from_exp, int to_exp);

/// Parses "1e-1:1e-9" (a decade grid between two powers of ten) or a comma
/// separated list "1e-3,1e-6". Throws std::invalid_argument.
std::vector<double> parse_tolerances(std::string_view spec);

/// OS, architecture and hardware thread count, for report headers.
std::string machine_description();

/// '#' header lines, then "method,tolerance,matvecs,iterations,seconds,error,converged".
void write_bench_csv(const BenchReport& report, std::ostream& out);

}  // namespace psiscore
