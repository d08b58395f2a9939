#include "extsum/sphere.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "extsum/error.hpp"

namespace extsum {

using detail::require;

double dot(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dimension mismatch in inner product");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

double norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) {
        s += x * x;
    }
    return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// UnitVector / Configuration

UnitVector::UnitVector(std::vector<double> coords) : coords_(std::move(coords)) {
    require(!coords_.empty(), "unit vector needs dimension >= 1");
    const double n = norm(coords_);
    if (!(n >= kMinNormalizableNorm) || !std::isfinite(n)) {
        throw PreconditionError("cannot normalize a vector of norm " + std::to_string(n));
    }
    // Leave rows that are already unit to rounding untouched, so that
    // normalization is idempotent and serialized rows reload bit-exactly.
    const double slack = static_cast<double>(coords_.size() + 4) * std::numeric_limits<double>::epsilon();
    if (std::abs(n - 1.0) > slack) {
        for (double& x : coords_) {
            x /= n;
        }
    }
}

UnitVector UnitVector::basis(std::size_t dim, std::size_t axis) {
    require(axis < dim, "basis axis out of range");
    std::vector<double> c(dim, 0.0);
    c[axis] = 1.0;
    return UnitVector(std::move(c));
}

UnitVector UnitVector::operator-() const {
    std::vector<double> c(coords_);
    for (double& x : c) {
        x = -x;
    }
    return UnitVector(std::move(c));
}

Configuration::Configuration(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {}

Configuration::Configuration(std::vector<UnitVector> vectors) {
    require(!vectors.empty(), "configuration needs at least one vector");
    dim_ = vectors.front().dim();
    coords_.reserve(vectors.size() * dim_);
    for (const auto& v : vectors) {
        require(v.dim() == dim_, "all vectors of a configuration must share one dimension");
        coords_.insert(coords_.end(), v.coords().begin(), v.coords().end());
    }
}

Configuration Configuration::from_rows(std::size_t dim, std::span<const double> rows) {
    require(dim >= 1, "dimension must be >= 1");
    require(!rows.empty() && rows.size() % dim == 0,
            "row buffer size must be a positive multiple of the dimension");
    std::vector<UnitVector> vs;
    vs.reserve(rows.size() / dim);
    for (std::size_t off = 0; off < rows.size(); off += dim) {
        vs.emplace_back(std::vector<double>(rows.begin() + static_cast<std::ptrdiff_t>(off),
                                            rows.begin() + static_cast<std::ptrdiff_t>(off + dim)));
    }
    return Configuration(std::move(vs));
}

UnitVector Configuration::at(std::size_t i) const {
    require(i < size(), "configuration index out of range");
    auto r = row(i);
    return UnitVector(std::vector<double>(r.begin(), r.end()));
}

std::vector<UnitVector> Configuration::vectors() const {
    std::vector<UnitVector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out.push_back(at(i));
    }
    return out;
}

UnitVector AntipodalConfiguration::at(std::size_t j) const {
    require(j < size(), "antipodal index out of range");
    UnitVector u = base_.at(j / 2);
    return (j % 2 == 0) ? u : -u;
}

double AntipodalConfiguration::dot_with(std::size_t j, std::span<const double> x) const {
    const double p = dot(base_.row(j / 2), x);
    return (j % 2 == 0) ? p : -p;
}

Cap::Cap(UnitVector center, double radius) : center_(std::move(center)), radius_(radius) {
    require(radius >= 0.0 && radius <= std::numbers::pi, "cap radius must lie in [0, pi]");
}

bool Cap::contains(std::span<const double> y) const {
    return geodesic_distance(center_.coords(), y) <= radius_;
}

// ---------------------------------------------------------------------------
// Measures

double ball_volume(int d) {
    require(d >= 1, "ball_volume needs d >= 1");
    const double h = 0.5 * d;
    return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1.0));
}

double kappa_ratio(int d) {
    require(d >= 2, "kappa_ratio needs d >= 2");
    // Γ(d/2+1) / (d √π Γ((d+1)/2)), via log-gamma to stay finite for large d.
    const double lg = std::lgamma(0.5 * d + 1.0) - std::lgamma(0.5 * (d + 1.0));
    return std::exp(lg) / (d * std::sqrt(std::numbers::pi));
}

namespace {

// 7-point Gauss / 15-point Kronrod pair on [-1, 1].
constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class F>
void gk15(const F& f, double a, double b, double& result, double& error) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double rk = fc * kWk[7];
    double rg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXk[j];
        const double s = f(c - dx) + f(c + dx);
        rk += kWk[j] * s;
        if (j % 2 == 1) {
            rg += kWg[j / 2] * s;
        }
    }
    result = rk * h;
    error = std::abs((rk - rg) * h);
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth) {
    double r = 0.0;
    double e = 0.0;
    gk15(f, a, b, r, e);
    if (e <= tol || depth <= 0 || (b - a) < 1e-14) {
        return r;
    }
    const double m = 0.5 * (a + b);
    return adaptive_gk(f, a, m, 0.5 * tol, depth - 1) + adaptive_gk(f, m, b, 0.5 * tol, depth - 1);
}

// σ(C_r) for r in [0, π/2].
double cap_measure_lower_half(int d, double r) {
    if (r <= 0.0) {
        return 0.0;
    }
    const double factor = (d - 1) * kappa_ratio(d);
    if (d == 2) {
        return factor * r;
    }
    const int p = d - 2;
    auto integrand = [p](double t) { return std::pow(std::sin(t), p); };
    const double tol = 1e-14 / factor;
    return factor * adaptive_gk(integrand, 0.0, r, tol, 40);
}

}  // namespace

double cap_measure(int d, double r) {
    require(d >= 2, "cap_measure needs d >= 2");
    require(r >= 0.0 && r <= std::numbers::pi, "cap radius must lie in [0, pi]");
    constexpr double half = 0.5 * std::numbers::pi;
    if (r <= half) {
        return cap_measure_lower_half(d, r);
    }
    return 1.0 - cap_measure_lower_half(d, std::numbers::pi - r);
}

double cap_radius_for_measure(int d, double target) {
    require(d >= 2, "cap_radius_for_measure needs d >= 2");
    require(target > 0.0 && target <= 0.5, "cap measure target must lie in (0, 1/2]");
    double lo = 0.0;
    double hi = 0.5 * std::numbers::pi;
    if (target == 0.5) {
        return hi;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double m = cap_measure(d, mid);
        if (std::abs(m - target) <= 1e-13 || hi - lo < 1e-16) {
            return mid;
        }
        if (m < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double geodesic_distance(std::span<const double> u, std::span<const double> v) {
    require(u.size() == v.size(), "geodesic_distance: dimension mismatch");
    return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

double geodesic_distance(const UnitVector& u, const UnitVector& v) {
    return geodesic_distance(u.coords(), v.coords());
}

}  // namespace extsum
