#include "extsum/minimax.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "extsum/config_gen.hpp"
#include "extsum/error.hpp"
#include "extsum/heuristics.hpp"

namespace extsum {

using detail::require;

namespace {

constexpr double kTiedMaximizerTolerance = 1e-9;
constexpr std::size_t kMaxTiedMaximizers = 4096;
constexpr int kBangStarts = 8;

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

SolveResult best_bang(const Configuration& config, std::uint64_t seed) {
    std::optional<SolveResult> best;
    auto offer = [&](SolveResult r) {
        if (!best || r.value > best->value + kTieTolerance) {
            best = std::move(r);
        }
    };
    offer(bang_ascent(config, std::vector<int>(config.size(), 1)).result);
    for (int s = 0; s < kBangStarts; ++s) {
        offer(bang_ascent(config, std::nullopt, mix_seed(seed + static_cast<std::uint64_t>(s))).result);
    }
    return std::move(*best);
}

void check_inner(const Configuration& config, std::size_t k, InnerSolver inner) {
    if (inner == InnerSolver::planar) {
        require(config.dim() == 2, "planar inner solver requires d = 2");
    }
    if (inner == InnerSolver::bang_multistart) {
        require(k == config.size(), "bang-multistart inner solver requires k = n");
    }
}

}  // namespace

std::string_view to_string(InnerSolver inner) {
    switch (inner) {
        case InnerSolver::exact: return "exact";
        case InnerSolver::planar: return "planar";
        case InnerSolver::bang_multistart: return "bang-multistart";
    }
    return "unknown";
}

std::optional<InnerSolver> parse_inner_solver(std::string_view name) {
    if (name == "exact") return InnerSolver::exact;
    if (name == "planar") return InnerSolver::planar;
    if (name == "bang-multistart" || name == "bang") return InnerSolver::bang_multistart;
    return std::nullopt;
}

double inner_value(const Configuration& config, std::size_t k, InnerSolver inner, std::uint64_t seed) {
    check_inner(config, k, inner);
    switch (inner) {
        case InnerSolver::exact: return max_over_selections(config, k, {.parallel = false}).value;
        case InnerSolver::planar: return max_over_selections_planar(config, k).value;
        case InnerSolver::bang_multistart: return best_bang(config, seed).value;
    }
    return 0.0;
}

std::vector<SolveResult> maximizing_selections(const Configuration& config, std::size_t k,
                                               InnerSolver inner, std::uint64_t seed) {
    check_inner(config, k, inner);
    switch (inner) {
        case InnerSolver::exact:
            return near_max_selections(config, k, kTiedMaximizerTolerance, kMaxTiedMaximizers);
        case InnerSolver::planar: return {max_over_selections_planar(config, k)};
        case InnerSolver::bang_multistart: return {best_bang(config, seed)};
    }
    return {};
}

DescentRun descend(const Configuration& start, std::size_t k, const SearchSettings& settings) {
    require(settings.max_iters >= 1, "max_iters must be positive");
    require(settings.step_init > 0.0, "step_init must be positive");
    require(settings.step_decay > 0.0 && settings.step_decay < 1.0, "step_decay must lie in (0, 1)");
    require(settings.tolerance >= 1e-12, "tolerance must be at least 1e-12");

    const std::size_t n = start.size();
    const std::size_t d = start.dim();
    const std::uint64_t inner_seed = settings.seed;

    DescentRun run{start, inner_value(start, k, settings.inner, inner_seed), {}, 0};
    run.trace.emplace_back(0, run.value);
    double step = settings.step_init;
    std::vector<double> grad(n * d);
    std::vector<double> rows(n * d);

    for (int it = 1; it <= settings.max_iters && step >= settings.tolerance; ++it) {
        run.iterations = it;
        const auto tied = maximizing_selections(run.config, k, settings.inner, inner_seed);
        std::fill(grad.begin(), grad.end(), 0.0);
        for (const SolveResult& sel : tied) {
            if (sel.value <= 0.0) {
                continue;
            }
            for (std::size_t j = 0; j < sel.selection.size(); ++j) {
                const std::size_t i = sel.selection.indices[j];
                const double e = sel.selection.signs[j] / sel.value;
                for (std::size_t c = 0; c < d; ++c) {
                    grad[i * d + c] += e * sel.sum[c];
                }
            }
        }
        const double weight = 1.0 / static_cast<double>(std::max<std::size_t>(tied.size(), 1));
        const auto current = run.config.data();
        for (std::size_t t = 0; t < rows.size(); ++t) {
            rows[t] = current[t] - step * weight * grad[t];
        }
        std::optional<Configuration> candidate;
        try {
            candidate = Configuration::from_rows(d, rows);
        } catch (const PreconditionError&) {
            step *= settings.step_decay;
            continue;
        }
        const double value = inner_value(*candidate, k, settings.inner, inner_seed);
        if (value < run.value) {
            run.config = std::move(*candidate);
            run.value = value;
            run.trace.emplace_back(it, value);
        } else {
            step *= settings.step_decay;
        }
    }
    return run;
}

std::vector<Configuration> warm_start_configurations(int d, int n, int k) {
    std::vector<Configuration> out;
    if (n <= d) {
        out.push_back(gen_orthonormal(d, n));
    }
    if (n > d && n % d == 0) {
        out.push_back(gen_orthonormal_copies(d, n / d));
    }
    if (n == d + 1) {
        out.push_back(gen_simplex(d));
        for (int h = 2; h < d; h += 2) {
            out.push_back(gen_simplex_plus_orthonormal(d, h));
        }
    }
    if (d == 2 && k >= 2 && n % (k - 1) == 0) {
        out.push_back(gen_polygon_multiplicity(n, k));
    }
    return out;
}

MinimaxEstimate estimate_c(int d, int n, int k, const SearchSettings& settings) {
    require(d >= 1, "d must be >= 1");
    require(n >= d, "estimate_c needs n >= d");
    require(k >= 1 && k <= n, "estimate_c needs 1 <= k <= n");
    require(settings.restarts >= 0, "restarts must be non-negative");
    const auto ku = static_cast<std::size_t>(k);

    std::vector<Configuration> starts;
    if (settings.warm_starts) {
        starts = warm_start_configurations(d, n, k);
    }
    for (int r = 0; r < settings.restarts; ++r) {
        starts.push_back(gen_random_uniform(d, n, mix_seed(settings.seed + static_cast<std::uint64_t>(r))));
    }
    require(!starts.empty(), "estimate_c needs at least one restart or warm start");
    // Surface budget problems before spawning threads.
    check_inner(starts.front(), ku, settings.inner);
    if (settings.inner == InnerSolver::exact) {
        if (ku > kMaxSubsetSize || enumeration_cost(static_cast<std::size_t>(n), ku) > kMaxEnumeratedSelections) {
            throw BudgetError("inner exact solver budget exceeded for this (n, k)");
        }
    }

    std::vector<std::optional<DescentRun>> runs(starts.size());
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    if (settings.parallel && hw > 1 && starts.size() > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(starts.size());
        {
            std::vector<std::jthread> pool;
            for (unsigned w = 0; w < std::min<std::size_t>(hw, starts.size()); ++w) {
                pool.emplace_back([&] {
                    for (std::size_t j; (j = next.fetch_add(1)) < starts.size();) {
                        try {
                            runs[j] = descend(starts[j], ku, settings);
                        } catch (...) {
                            errors[j] = std::current_exception();
                        }
                    }
                });
            }
        }
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    } else {
        for (std::size_t j = 0; j < starts.size(); ++j) {
            runs[j] = descend(starts[j], ku, settings);
        }
    }

    std::size_t best = 0;
    int total_iterations = 0;
    for (std::size_t j = 0; j < runs.size(); ++j) {
        total_iterations += runs[j]->iterations;
        if (runs[j]->value < runs[best]->value) {
            best = j;
        }
    }
    MinimaxEstimate out{std::move(runs[best]->config), 0.0, std::move(runs[best]->trace),
                        static_cast<int>(starts.size()), total_iterations, settings.inner};
    out.value = inner_value(out.best_config, ku, settings.inner, settings.seed);
    return out;
}

bool certify_not_below(const Configuration& config, std::size_t k, double reference) {
    return max_over_selections(config, k).value >= reference - 1e-9;
}

}  // namespace extsum
