#include "extsum/bounds.hpp"

#include <cmath>
#include <numbers>

#include "extsum/error.hpp"
#include "extsum/sphere.hpp"

namespace extsum {

using detail::require;

std::string_view to_string(BoundSide side) {
    return side == BoundSide::lower ? "lower" : "upper";
}

std::string_view to_string(Validity validity) {
    switch (validity) {
        case Validity::exact: return "exact";
        case Validity::asymptotic_only: return "asymptotic-only";
        case Validity::conjectural: return "conjectural";
    }
    return "unknown";
}

double trivial_upper(int k) {
    require(k >= 1, "k must be >= 1");
    return static_cast<double>(k);
}

double sqrt_k_lower(int k) {
    require(k >= 1, "k must be >= 1");
    return std::sqrt(static_cast<double>(k));
}

double general_lower(int d, int n, int k) {
    require(d >= 2, "general lower bound needs d >= 2");
    require(n >= d, "general lower bound needs n >= d");
    require(k >= 3, "general lower bound needs k >= 3");
    require(k <= n, "general lower bound needs k <= n");
    const double kd = k;
    const double cap_term =
        kd - 8.0 * std::pow(kd, (d + 1.0) / (d - 1.0)) * std::pow(static_cast<double>(n), -2.0 / (d - 1.0));
    const double average_term = std::sqrt(2.0 / std::numbers::pi) * kd / std::sqrt(static_cast<double>(d));
    return std::max(cap_term, average_term);
}

BoundReport general_upper(int d, int n, int k) {
    require(d >= 2, "general upper bound needs d >= 2");
    require(k >= 3 && k <= n, "general upper bound needs 3 <= k <= n");
    const double kd = k;
    const double growth =
        std::pow(kd, (d + 1.0) / (d - 1.0)) * std::pow(static_cast<double>(n), -2.0 / (d - 1.0));
    const bool small_k = kd < 6.0 * std::pow(100.0, d - 1.0);
    BoundReport r;
    r.name = "general_upper";
    r.side = BoundSide::upper;
    r.validity = Validity::asymptotic_only;
    r.anchor = small_k ? "packing construction, 3 <= k < 6*100^(d-1)"
                       : "packing construction, k >= 6*100^(d-1)";
    r.value = small_k ? kd - kAlpha1 / (static_cast<double>(d) * d) * growth : kd - kAlpha2 * growth;
    return r;
}

double lambert_phi(double k, double n) {
    require(k >= 1.0 && k <= n, "lambert_phi needs 1 <= k <= n");
    const double ratio = k / n;
    auto residual = [ratio](double phi) { return phi * ratio - std::exp(-0.5 * phi * phi); };
    // h(φ) = ln φ + φ²/2 + ln(k/n) is increasing with the same root.
    const double log_ratio = std::log(ratio);
    auto h = [log_ratio](double phi) { return std::log(phi) + 0.5 * phi * phi + log_ratio; };

    constexpr double kW0AtOne = 0.5671432904097838;
    double phi = std::sqrt(std::max(kW0AtOne, std::log(1.0 / (ratio * ratio) + 1.0)));
    for (int it = 0; it < 100; ++it) {
        const double step = h(phi) / (1.0 / phi + phi);
        double next = phi - step;
        if (next <= 0.0) {
            next = 0.5 * phi;
        }
        phi = next;
        if (std::abs(residual(phi)) <= 1e-13 && std::abs(step) < 1e-15 * phi + 1e-300) {
            break;
        }
    }
    if (std::abs(residual(phi)) <= 1e-12) {
        return phi;
    }
    // Bisection fallback on h.
    double lo = 1e-6;
    double hi = 1.0;
    while (h(hi) < 0.0) {
        hi *= 2.0;
    }
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

BoundReport large_k_upper(int d, int n, int k) {
    require(d >= 2, "large-k upper bound needs d >= 2");
    require(k >= 1 && k <= n, "large-k upper bound needs 1 <= k <= n");
    const double phi = lambert_phi(k, n);
    BoundReport r;
    r.name = "large_k_upper";
    r.side = BoundSide::upper;
    r.validity = Validity::asymptotic_only;
    r.anchor = "separated-set construction, Lambert-W radius";
    r.value = 4.0 * phi / std::sqrt(std::numbers::pi) * k / std::sqrt(static_cast<double>(d));
    r.applicable = k > std::exp(-0.5 * d) * n / std::sqrt(static_cast<double>(d));
    return r;
}

double welch_pair_lower(int d, int n) {
    require(d >= 1, "welch bound needs d >= 1");
    require(n >= 2, "welch bound needs n >= 2");
    require(n >= d, "welch bound needs n >= d");
    const double coh = std::sqrt(static_cast<double>(n - d) / (static_cast<double>(d) * (n - 1)));
    return std::sqrt(2.0 + 2.0 * coh);
}

std::pair<BoundReport, BoundReport> pair_large_n_bounds(int d, int n) {
    require(d >= 2, "pair bounds need d >= 2");
    require(n >= 1, "pair bounds need n >= 1");
    const double t = std::pow(static_cast<double>(n), -2.0 / (d - 1.0));
    BoundReport lo;
    lo.name = "pair_large_n_lower";
    lo.value = 2.0 - 0.51 * t;
    lo.side = BoundSide::lower;
    lo.validity = Validity::asymptotic_only;
    lo.anchor = "separated-set cardinality, k = 2";
    BoundReport hi = lo;
    hi.name = "pair_large_n_upper";
    hi.value = 2.0 - 0.14 * t;
    hi.side = BoundSide::upper;
    hi.anchor = "antipodally separated construction, k = 2";
    return {lo, hi};
}

PlanarBound planar_lower(int n, int k) {
    require(k >= 2 && k <= n, "planar bound needs 2 <= k <= n");
    const double c = std::cos((k - 1) * std::numbers::pi / (2.0 * n));
    PlanarBound out;
    // The polygon with multiplicity k-1 meets the bound only for k <= 3; for
    // larger k, k-1 copies of one vertex plus a neighbour already beat it.
    out.sharp = n % (k - 1) == 0 && k <= 3;
    if (k % 2 == 0) {
        out.value = k * c;
    } else {
        out.value = std::sqrt(1.0 + (k - 1.0) * (k + 1.0) * c * c);
    }
    return out;
}

double planar_polygon_value(int n, int k) {
    require(k >= 2 && k <= n, "polygon value needs 2 <= k <= n");
    require(n % (k - 1) == 0, "polygon: (k-1) must divide n");
    const double m = k - 1.0;
    return std::sqrt(m * m + 1.0 + 2.0 * m * std::cos(m * std::numbers::pi / n));
}

double arc_min_norm(int k, double phi) {
    require(k >= 1, "arc_min_norm needs k >= 1");
    require(phi >= 0.0 && phi <= std::numbers::pi, "arc angle must lie in [0, pi]");
    const double c = std::max(0.0, std::cos(0.5 * phi));
    if (k % 2 == 0) {
        return k * c;
    }
    return std::sqrt(1.0 + (k - 1.0) * (k + 1.0) * c * c);
}

double zero_sum_lower(int d) {
    require(d >= 1, "d must be >= 1");
    require(d % 2 == 0, "zero-sum bound holds for even d only");
    return std::sqrt(d + 2.0);
}

double conjecture_value(int d) {
    require(d >= 1, "d must be >= 1");
    return std::sqrt(d + 2.0);
}

std::pair<double, double> separated_cardinality_bounds(int d, double delta) {
    require(d >= 2, "separated cardinality bounds need d >= 2");
    require(delta > 0.0 && delta < 0.5 * std::numbers::pi, "need 0 < delta < pi/2");
    const double e = d - 1.0;
    const double lower = std::sqrt(2.0 * std::numbers::pi) * std::pow(std::sin(delta), -e);
    const double upper =
        23.0 * std::pow(e, 1.5) * std::pow(std::sin(0.5 * delta), -e) * std::pow(2.0, -0.5 * e);
    return {lower, upper};
}

namespace {

BoundReport report(std::string name, double value, BoundSide side, Validity validity,
                   std::string anchor) {
    BoundReport r;
    r.name = std::move(name);
    r.value = value;
    r.side = side;
    r.validity = validity;
    r.anchor = std::move(anchor);
    return r;
}

}  // namespace

std::vector<BoundReport> all_bounds(int d, int n, int k) {
    require(d >= 1, "d must be >= 1");
    require(n >= 1, "n must be >= 1");
    require(k >= 1 && k <= n, "need 1 <= k <= n");
    std::vector<BoundReport> out;
    out.push_back(report("trivial_upper", trivial_upper(k), BoundSide::upper, Validity::exact,
                         "triangle inequality"));
    out.push_back(report("sqrt_k_lower", sqrt_k_lower(k), BoundSide::lower, Validity::exact,
                         "average of the squared norm over all sign patterns"));
    if (d >= 2) {
        out.push_back(report("averaging_lower", 2.0 * k * kappa_ratio(d), BoundSide::lower,
                             Validity::exact, "spherical average of sum |<v,u_i>|"));
    }
    if (d >= 2 && n >= d && k >= 3) {
        out.push_back(report("general_lower", general_lower(d, n, k), BoundSide::lower,
                             Validity::exact, "cap counting and spherical averaging"));
        out.push_back(general_upper(d, n, k));
    }
    if (d >= 2) {
        out.push_back(large_k_upper(d, n, k));
    }
    if (n <= d) {
        out.push_back(report("orthonormal_upper", std::sqrt(static_cast<double>(k)), BoundSide::upper,
                             Validity::exact, "orthonormal system attains sqrt(k)"));
    }
    if (n % d == 0) {
        const int m = n / d;
        if (k % m == 0 && k / m <= d) {
            const int a = k / m;
            out.push_back(report("copies_upper", std::sqrt(static_cast<double>(a)) * m,
                                 BoundSide::upper, Validity::exact,
                                 "m copies of an orthonormal basis, k = a*m"));
        }
    }
    if (k == 2) {
        if (n >= d && n >= 2) {
            out.push_back(report("welch_pair_lower", welch_pair_lower(d, n), BoundSide::lower,
                                 Validity::exact, "Welch coherence bound via |u+v|^2 = 2+2<u,v>"));
        }
        if (n == d + 1) {
            out.push_back(report("simplex_pair_upper", std::sqrt(2.0 + 2.0 / d), BoundSide::upper,
                                 Validity::exact, "regular simplex attains sqrt(2+2/d)"));
        }
        if (d >= 2) {
            auto [lo, hi] = pair_large_n_bounds(d, n);
            out.push_back(std::move(lo));
            out.push_back(std::move(hi));
        }
    }
    if (d == 2 && k >= 2) {
        const PlanarBound p = planar_lower(n, k);
        BoundReport r = report("planar_lower", p.value, BoundSide::lower, Validity::exact,
                               "k points of the antipodal system on a short arc");
        r.sharp = p.sharp;
        out.push_back(r);
        if (n % (k - 1) == 0) {
            out.push_back(report("planar_polygon_upper", planar_polygon_value(n, k), BoundSide::upper,
                                 Validity::exact, "regular 2n/(k-1)-gon with multiplicity k-1"));
        }
    }
    if (n == d + 1 && k == n) {
        if (d % 2 == 0) {
            BoundReport r = report("zero_sum_lower", zero_sum_lower(d), BoundSide::lower,
                                   Validity::exact, "even dimension, vectors summing to zero");
            r.hypothesis = "sum of vectors is zero";
            out.push_back(r);
        }
        out.push_back(report("conjecture_value", conjecture_value(d), BoundSide::upper,
                             Validity::conjectural, "simplex plus orthonormal complement"));
    }
    return out;
}

std::vector<BoundReport> unconditional_lower_bounds(int d, int n, int k) {
    std::vector<BoundReport> out;
    for (auto& r : all_bounds(d, n, k)) {
        if (r.side == BoundSide::lower && r.validity == Validity::exact && r.applicable &&
            r.hypothesis.empty()) {
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace extsum
