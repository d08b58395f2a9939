#pragma once

// Generators for the named configurations (orthonormal systems and their
// copies, regular simplices, planar polygons with multiplicity, simplex plus
// orthonormal complement) and for randomized inputs: uniform samples,
// zero-sum systems and separated sets.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "extsum/sphere.hpp"

namespace extsum {

enum class GeneratorKind {
    orthonormal,
    orthonormal_copies,
    simplex,
    polygon_multiplicity,
    simplex_plus_orthonormal,
    random_uniform,
    zero_sum,
    delta_separated,
    antipodal_separated,
};

std::string_view to_string(GeneratorKind kind);

/// Accepts the names printed by to_string plus the short aliases
/// "copies" and "polygon". Returns nullopt for unknown names.
std::optional<GeneratorKind> parse_generator_kind(std::string_view name);

/// Which fields matter depends on `kind`:
///  - orthonormal: d, n
///  - orthonormal_copies: d, m (n = m*d)
///  - simplex: d
///  - polygon_multiplicity: n, k (d = 2)
///  - simplex_plus_orthonormal: d, h
///  - random_uniform / zero_sum: d, n, seed
///  - delta_separated: d, delta (geodesic), seed
///  - antipodal_separated: d, n, delta (chordal), seed
struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::random_uniform;
    int d = 2;
    int n = 1;
    int k = 2;
    int m = 1;
    int h = 2;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

Configuration generate(const GeneratorSpec& spec);

/// First n standard basis vectors of R^d, 1 <= n <= d.
Configuration gen_orthonormal(int d, int n);

/// e_1 repeated m times, then e_2 repeated m times, ..., e_d.
Configuration gen_orthonormal_copies(int d, int m);

/// Vertices of the regular simplex inscribed in S^{d-1}: d+1 vectors with
/// pairwise inner products -1/d and zero sum. Built from the Cholesky factor
/// of the Gram matrix; for d = 2 the directions are 90°, 210°, 330°.
Configuration gen_simplex(int d);

/// n planar vectors whose antipodal closure is the regular 2n/(k-1)-gon with
/// every vertex taken k-1 times. Requires k >= 2 and (k-1) | n.
Configuration gen_polygon_multiplicity(int n, int k);

/// Regular simplex on the first h coordinates (h even, 2 <= h <= d) together
/// with e_{h+1}, ..., e_d; d+1 vectors in total.
Configuration gen_simplex_plus_orthonormal(int d, int h);

/// n independent uniform points on S^{d-1} (normalized Gaussian samples).
Configuration gen_random_uniform(int d, int n, std::uint64_t seed);

/// n >= d+1 unit vectors with |Σ u_i| <= 1e-9, found by alternately centering
/// and renormalizing from a random start. Throws BudgetError if 16 seeds fail.
Configuration gen_zero_sum(int d, int n, std::uint64_t seed);

/// Greedy geodesically delta-separated set, 0 < delta < π/2. Sampling stops
/// after 10^4 * |X| consecutive rejections.
Configuration gen_delta_separated(int d, double delta, std::uint64_t seed);

/// n points with |x_i - x_j| >= delta and |x_i + x_j| >= delta (Euclidean)
/// for every pair. Throws BudgetError when the rejection budget runs out.
Configuration gen_antipodal_separated(int d, int n, double delta, std::uint64_t seed);

/// Rejection budget of gen_antipodal_separated, counted in candidates.
inline constexpr std::uint64_t kAntipodalSeparatedBudget = 2'000'000;

}  // namespace extsum
