#pragma once

// Scalable lower-bound solvers: sign-flip ascent with a Bang-type
// certificate, and selection of the points of ±ω_n inside a well-placed
// spherical cap.

#include <cstdint>
#include <optional>
#include <vector>

#include "extsum/exact.hpp"
#include "extsum/sphere.hpp"

namespace extsum {

/// margins[i] = <ε_i u_i, Σ_j ε_j u_j>. At a flip-local maximum every margin
/// is at least 1 (flipping sign i changes |s|^2 by 4 - 4 margins[i]).
struct BangCertificate {
    std::vector<double> margins;
    double min_margin = 0.0;
};

struct BangResult {
    SolveResult result;  // full selection, k = n
    BangCertificate certificate;
    std::size_t flips = 0;
};

/// Steepest single-sign-flip ascent on |Σ ε_i u_i|^2, ties to the lowest
/// index, until no flip gains more than 1e-12. Without initial signs the
/// start is drawn from `seed`. Signs are reported with ε_1 = +1.
BangResult bang_ascent(const Configuration& config,
                       std::optional<std::vector<int>> initial_signs = std::nullopt,
                       std::uint64_t seed = 0);

struct CapGreedyResult {
    SolveResult result;
    std::vector<double> center;
    double radius = 0.0;          // σ(C_radius) = k / (2n)
    std::size_t cap_count = 0;    // points of ±ω_n in C(center, radius)
    bool guaranteed = false;      // cap_count >= k, so value >= k cos(radius)
};

/// Picks the k elements of ±ω_n (one orientation per index) with the largest
/// inner product against a cap centre chosen among ±ω_n and then refined by
/// golden-section moves toward the centroid of the selected points.
CapGreedyResult cap_greedy_selection(const Configuration& config, std::size_t k);

/// Number of golden-section refinement rounds in cap_greedy_selection.
inline constexpr int kCapRefinementSteps = 50;

/// k * 2κ_{d-1}/(dκ_d): the spherical average of Σ|<v,u_i>| over any k
/// vectors, hence a lower bound on their best signed sum.
double averaging_lower_bound(const Configuration& config, std::size_t k);

}  // namespace extsum
