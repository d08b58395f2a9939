#pragma once

// Closed-form bounds on c(d,n,k), the largest norm of a signed k-term subset
// sum guaranteed for every n-element system of unit vectors in R^d. Each
// evaluator is tagged with the conditions under which it holds.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace extsum {

enum class BoundSide { lower, upper };

/// exact: holds for every admissible (d, n, k).
/// asymptotic_only: holds only for unspecified "large enough" n or d; never
///   asserted against finite instances.
/// conjectural: an unproven value.
enum class Validity { exact, asymptotic_only, conjectural };

std::string_view to_string(BoundSide side);
std::string_view to_string(Validity validity);

struct BoundReport {
    std::string name;
    double value = 0.0;
    BoundSide side = BoundSide::lower;
    Validity validity = Validity::exact;
    std::string anchor;              // short description of the underlying result
    std::string hypothesis;          // extra restriction on configurations, empty if none
    bool applicable = true;          // false when the parameter range is outside the result
    std::optional<bool> sharp;       // set where sharpness is characterized
};

/// Constants of the large-n upper bound for small and large k.
inline constexpr double kAlpha1 = 1.0 / (8.0 * 48.0 * 48.0);
inline constexpr double kAlpha2 = 1.0 / (64.0 * 36.0);

/// √(W₀(1)), the smallest value lambert_phi can take (k = n).
inline constexpr double kPhiAtEqualKN = 0.75308916;

/// Triangle inequality: k.
double trivial_upper(int k);

/// √k.
double sqrt_k_lower(int k);

/// max{k - 8 k^{(d+1)/(d-1)} n^{-2/(d-1)}, √(2/π) k / √d}; d >= 2, n >= d,
/// 3 <= k <= n.
double general_lower(int d, int n, int k);

/// Large-n upper bound, branch chosen by k < 6·100^{d-1}.
/// Validity: asymptotic_only.
BoundReport general_upper(int d, int n, int k);

/// Positive root φ of φ·k/n = exp(-φ²/2), i.e. √(W₀(n²/k²)); 1 <= k <= n.
double lambert_phi(double k, double n);

/// (4φ/√π)·k/√d with φ = lambert_phi(k, n). applicable iff
/// k > e^{-d/2} n / √d. Validity: asymptotic_only.
BoundReport large_k_upper(int d, int n, int k);

/// √(2 + 2√((n-d)/(d(n-1)))): the Welch coherence bound turned into a bound
/// on the best 2-term signed sum; n >= max(d, 2).
double welch_pair_lower(int d, int n);

/// (2 - 0.51 n^{-2/(d-1)}, 2 - 0.14 n^{-2/(d-1)}), both asymptotic_only.
std::pair<BoundReport, BoundReport> pair_large_n_bounds(int d, int n);

struct PlanarBound {
    double value = 0.0;
    bool sharp = false;  // attained: (k-1) divides n and k <= 3
};

/// Planar bound: k cos((k-1)π/(2n)) for even k,
/// √(1 + (k-1)(k+1) cos²((k-1)π/(2n))) for odd k; 2 <= k <= n.
PlanarBound planar_lower(int n, int k);

/// Best signed k-sum of gen_polygon_multiplicity(n, k):
/// √((k-1)² + 1 + 2(k-1) cos((k-1)π/n)), an upper bound on c(2,n,k).
/// Equals planar_lower(n, k) exactly when k <= 3.
double planar_polygon_value(int n, int k);

/// Minimum of |u_1 + ... + u_k| over planar unit vectors with angles in
/// [0, phi], phi in [0, π].
double arc_min_norm(int k, double phi);

/// √(d+2), valid for even d and configurations of d+1 vectors summing to 0.
double zero_sum_lower(int d);

/// √(d+2), the conjectured value of c(d, d+1, d+1).
double conjecture_value(int d);

/// Cardinality window (lower, upper) of a maximal geodesically
/// delta-separated subset of S^{d-1}; d >= 2, 0 < delta < π/2.
std::pair<double, double> separated_cardinality_bounds(int d, double delta);

/// Every bound that speaks about c(d,n,k), including inapplicable and
/// asymptotic ones (flagged).
std::vector<BoundReport> all_bounds(int d, int n, int k);

/// Lower bounds that hold for every configuration in the given (d, n, k):
/// exact validity, applicable, no extra hypothesis.
std::vector<BoundReport> unconditional_lower_bounds(int d, int n, int k);

}  // namespace extsum
