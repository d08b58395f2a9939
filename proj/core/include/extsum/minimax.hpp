#pragma once

// Numerical upper estimates of c(d,n,k) = min over configurations of the
// best signed k-term sum, by multi-start projected subgradient descent on
// the product of spheres.

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "extsum/exact.hpp"
#include "extsum/sphere.hpp"

namespace extsum {

enum class InnerSolver { exact, planar, bang_multistart };

std::string_view to_string(InnerSolver inner);
std::optional<InnerSolver> parse_inner_solver(std::string_view name);

struct SearchSettings {
    int restarts = 16;
    int max_iters = 2000;
    double step_init = 0.25;
    double step_decay = 0.5;
    double tolerance = 1e-12;
    std::uint64_t seed = 0;
    InnerSolver inner = InnerSolver::exact;
    /// Also start from the named extremal candidates that fit (d, n, k).
    bool warm_starts = true;
    /// Run restarts on several threads. Results do not depend on this.
    bool parallel = true;
};

struct MinimaxEstimate {
    Configuration best_config;
    double value = 0.0;
    std::vector<std::pair<int, double>> trace;  // (iteration, value), non-increasing
    int restarts_used = 0;
    int iterations = 0;  // total descent iterations over all runs
    InnerSolver inner_solver = InnerSolver::exact;
};

/// Value of the inner maximization for `config` under `inner`.
/// bang_multistart requires k = n and is a lower estimate of the inner max.
double inner_value(const Configuration& config, std::size_t k, InnerSolver inner,
                   std::uint64_t seed = 0);

/// Maximizing selections used for the descent direction: every selection
/// within 1e-9 of the max for the exact solver, the single best otherwise.
std::vector<SolveResult> maximizing_selections(const Configuration& config, std::size_t k,
                                               InnerSolver inner, std::uint64_t seed = 0);

struct DescentRun {
    Configuration config;
    double value = 0.0;
    std::vector<std::pair<int, double>> trace;
    int iterations = 0;
};

/// One descent run from `start`: step each selected u_i against ε_i s/|s|
/// (averaged over tied maximizers), renormalize, accept on strict decrease,
/// otherwise multiply the step by step_decay. Stops once the step drops
/// below tolerance or after max_iters iterations.
DescentRun descend(const Configuration& start, std::size_t k, const SearchSettings& settings);

/// Candidate extremal systems for (d, n, k): orthonormal (n <= d), copies of
/// a basis (d | n), simplex and simplex plus orthonormal (n = d+1), planar
/// polygon with multiplicity (d = 2, (k-1) | n).
std::vector<Configuration> warm_start_configurations(int d, int n, int k);

/// Smallest observed max-selection value: an upper estimate of c(d,n,k).
MinimaxEstimate estimate_c(int d, int n, int k, const SearchSettings& settings = {});

/// True iff the exact inner value of `config` is at least reference - 1e-9.
bool certify_not_below(const Configuration& config, std::size_t k, double reference);

}  // namespace extsum
