#pragma once

// Exact maximum of signed k-term subset sums of a configuration: Gray-code
// enumeration in any dimension and a critical-angle sweep in the plane.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "extsum/sphere.hpp"

namespace extsum {

/// Indices are 0-based and strictly increasing; signs are +1 or -1.
/// Human-facing output (CLI, files) prints indices 1-based.
struct SignedSelection {
    std::vector<std::size_t> indices;
    std::vector<int> signs;

    std::size_t size() const noexcept { return indices.size(); }
    friend bool operator==(const SignedSelection&, const SignedSelection&) = default;
};

/// Lexicographic order on (indices, then signs with +1 < -1).
bool selection_less(const SignedSelection& a, const SignedSelection& b);

enum class Certificate { exhaustive, planar_sweep, heuristic };
std::string_view to_string(Certificate c);

struct SolveResult {
    SignedSelection selection;
    std::vector<double> sum;
    double value = 0.0;
    std::optional<Certificate> certificate;
};

/// Σ signs_j u_{indices_j}. Validates the selection against the configuration.
std::vector<double> signed_sum(const Configuration& config, const SignedSelection& selection);

/// Builds a SolveResult whose sum and value are recomputed from scratch.
SolveResult make_result(const Configuration& config, SignedSelection selection,
                        std::optional<Certificate> certificate);

/// Enumeration limits. Exceeding either raises BudgetError.
inline constexpr std::size_t kMaxSubsetSize = 30;
inline constexpr double kMaxEnumeratedSelections = 1e8;

/// Values closer than this are treated as ties and broken lexicographically.
inline constexpr double kTieTolerance = 1e-12;

struct ExactOptions {
    /// Spread subsets over hardware threads; the result is identical to a
    /// sequential run.
    bool parallel = true;
};

/// Max over all sign patterns of Σ ε_j u_{subset_j}. `subset` must hold
/// distinct indices (any order); the returned selection is sorted.
SolveResult max_signed_sum(const Configuration& config, std::vector<std::size_t> subset);

/// C(n, k) * 2^{k-1}, the number of sign classes enumerated for (n, k).
double enumeration_cost(std::size_t n, std::size_t k);

/// Exact max over all k-subsets and signs. Certificate: exhaustive.
SolveResult max_over_selections(const Configuration& config, std::size_t k,
                                const ExactOptions& options = {});

/// Every selection whose value is within `tolerance` of the maximum, up to
/// global sign (first sign +1), sorted by selection_less. At most
/// `max_results` are kept.
std::vector<SolveResult> near_max_selections(const Configuration& config, std::size_t k,
                                             double tolerance, std::size_t max_results = 4096);

/// Planar exact solver (d = 2). Sweeps the direction v over the critical
/// angles where |<v,u_i>| = |<v,u_j>| or <v,u_i> = 0 and evaluates the top-k
/// selection of each interval. Certificate: planar_sweep.
SolveResult max_over_selections_planar(const Configuration& config, std::size_t k);

/// Max |<u_i,u_j>| over i < j; n >= 2.
double coherence(const Configuration& config);

}  // namespace extsum
