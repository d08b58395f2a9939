#pragma once

// Geometric primitives on the unit sphere S^{d-1}: unit vectors, ordered
// configurations of unit vectors, spherical caps, normalized surface measure
// and unit-ball volume constants.

#include <cstddef>
#include <span>
#include <vector>

namespace extsum {

/// Rows whose norm falls below this are rejected instead of normalized.
inline constexpr double kMinNormalizableNorm = 1e-9;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// A point of S^{d-1}. Construction always normalizes; the stored
/// coordinates have unit norm to within 1e-12.
class UnitVector {
public:
    /// Normalizes `coords`. Throws PreconditionError on an empty input or
    /// a norm below kMinNormalizableNorm.
    explicit UnitVector(std::vector<double> coords);

    /// e_axis in R^dim.
    static UnitVector basis(std::size_t dim, std::size_t axis);

    std::size_t dim() const noexcept { return coords_.size(); }
    std::span<const double> coords() const noexcept { return coords_; }
    double operator[](std::size_t i) const noexcept { return coords_[i]; }

    UnitVector operator-() const;

    friend bool operator==(const UnitVector&, const UnitVector&) = default;

private:
    std::vector<double> coords_;
};

/// An ordered list of n >= 1 unit vectors in R^d. Indices are stable
/// identifiers; vectors are stored row-major in one contiguous buffer.
class Configuration {
public:
    explicit Configuration(std::vector<UnitVector> vectors);

    /// Normalizes every row of a row-major n x dim buffer.
    static Configuration from_rows(std::size_t dim, std::span<const double> rows);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return coords_.size() / dim_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {coords_.data() + i * dim_, dim_};
    }
    UnitVector at(std::size_t i) const;

    /// Row-major coordinates, size() * dim() entries.
    std::span<const double> data() const noexcept { return coords_; }

    std::vector<UnitVector> vectors() const;

    friend bool operator==(const Configuration&, const Configuration&) = default;

private:
    Configuration(std::size_t dim, std::vector<double> coords);

    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

/// ±ω_n: element 2i is u_i and element 2i+1 is -u_i (0-based).
class AntipodalConfiguration {
public:
    explicit AntipodalConfiguration(Configuration base) : base_(std::move(base)) {}

    const Configuration& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return 2 * base_.size(); }
    UnitVector at(std::size_t j) const;

    /// Inner product of element j with an arbitrary vector.
    double dot_with(std::size_t j, std::span<const double> x) const;

private:
    Configuration base_;
};

/// Closed spherical cap {y : geodesic(center, y) <= radius}.
class Cap {
public:
    Cap(UnitVector center, double radius);

    const UnitVector& center() const noexcept { return center_; }
    double radius() const noexcept { return radius_; }

    bool contains(std::span<const double> y) const;

private:
    UnitVector center_;
    double radius_;
};

/// κ_d = π^{d/2} / Γ(d/2 + 1).
double ball_volume(int d);

/// κ_{d-1} / (d κ_d); d >= 2.
double kappa_ratio(int d);

/// Normalized measure σ(C_r) of a cap of geodesic radius r on S^{d-1},
/// d >= 2, r in [0, π]. Adaptive quadrature of sin^{d-2}, absolute error
/// below 1e-12.
double cap_measure(int d, double r);

/// Inverse of cap_measure on [0, π/2] for target in (0, 1/2].
double cap_radius_for_measure(int d, double target);

/// arccos of the clamped inner product.
double geodesic_distance(std::span<const double> u, std::span<const double> v);
double geodesic_distance(const UnitVector& u, const UnitVector& v);

}  // namespace extsum
