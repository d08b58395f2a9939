#include "extsum/config_gen.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "extsum/error.hpp"

namespace extsum {

using detail::require;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<double> gaussian_direction(std::mt19937_64& rng, int d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(d));
    for (;;) {
        for (double& x : v) {
            x = normal(rng);
        }
        const double n = norm(v);
        if (n > 1e-6) {
            for (double& x : v) {
                x /= n;
            }
            return v;
        }
    }
}

void snap_small(std::vector<double>& v) {
    for (double& x : v) {
        if (std::abs(x) < 1e-15) {
            x = 0.0;
        }
    }
}

}  // namespace

std::string_view to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::orthonormal: return "orthonormal";
        case GeneratorKind::orthonormal_copies: return "orthonormal-copies";
        case GeneratorKind::simplex: return "simplex";
        case GeneratorKind::polygon_multiplicity: return "polygon-multiplicity";
        case GeneratorKind::simplex_plus_orthonormal: return "simplex-plus-orthonormal";
        case GeneratorKind::random_uniform: return "random-uniform";
        case GeneratorKind::zero_sum: return "zero-sum";
        case GeneratorKind::delta_separated: return "delta-separated";
        case GeneratorKind::antipodal_separated: return "antipodal-separated";
    }
    return "unknown";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view name) {
    for (auto kind : {GeneratorKind::orthonormal, GeneratorKind::orthonormal_copies,
                      GeneratorKind::simplex, GeneratorKind::polygon_multiplicity,
                      GeneratorKind::simplex_plus_orthonormal, GeneratorKind::random_uniform,
                      GeneratorKind::zero_sum, GeneratorKind::delta_separated,
                      GeneratorKind::antipodal_separated}) {
        if (name == to_string(kind)) {
            return kind;
        }
    }
    if (name == "copies") return GeneratorKind::orthonormal_copies;
    if (name == "polygon") return GeneratorKind::polygon_multiplicity;
    if (name == "random") return GeneratorKind::random_uniform;
    return std::nullopt;
}

Configuration generate(const GeneratorSpec& spec) {
    switch (spec.kind) {
        case GeneratorKind::orthonormal: return gen_orthonormal(spec.d, spec.n);
        case GeneratorKind::orthonormal_copies: return gen_orthonormal_copies(spec.d, spec.m);
        case GeneratorKind::simplex: return gen_simplex(spec.d);
        case GeneratorKind::polygon_multiplicity: return gen_polygon_multiplicity(spec.n, spec.k);
        case GeneratorKind::simplex_plus_orthonormal:
            return gen_simplex_plus_orthonormal(spec.d, spec.h);
        case GeneratorKind::random_uniform: return gen_random_uniform(spec.d, spec.n, spec.seed);
        case GeneratorKind::zero_sum: return gen_zero_sum(spec.d, spec.n, spec.seed);
        case GeneratorKind::delta_separated:
            return gen_delta_separated(spec.d, spec.delta, spec.seed);
        case GeneratorKind::antipodal_separated:
            return gen_antipodal_separated(spec.d, spec.n, spec.delta, spec.seed);
    }
    throw PreconditionError("unknown generator kind");
}

Configuration gen_orthonormal(int d, int n) {
    require(d >= 1, "orthonormal: d must be >= 1");
    require(n >= 1 && n <= d, "orthonormal: need 1 <= n <= d");
    std::vector<UnitVector> vs;
    for (int i = 0; i < n; ++i) {
        vs.push_back(UnitVector::basis(static_cast<std::size_t>(d), static_cast<std::size_t>(i)));
    }
    return Configuration(std::move(vs));
}

Configuration gen_orthonormal_copies(int d, int m) {
    require(d >= 1, "orthonormal-copies: d must be >= 1");
    require(m >= 1, "orthonormal-copies: m must be >= 1");
    std::vector<UnitVector> vs;
    for (int i = 0; i < d; ++i) {
        for (int c = 0; c < m; ++c) {
            vs.push_back(UnitVector::basis(static_cast<std::size_t>(d), static_cast<std::size_t>(i)));
        }
    }
    return Configuration(std::move(vs));
}

Configuration gen_simplex(int d) {
    require(d >= 1, "simplex: d must be >= 1");
    const Eigen::Index dim = d;
    Eigen::MatrixXd gram = Eigen::MatrixXd::Constant(dim, dim, -1.0 / d);
    gram.diagonal().setOnes();
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success) {
        throw PreconditionError("simplex: Gram factorization failed");
    }
    const Eigen::MatrixXd lower = llt.matrixL();

    // Reverse the coordinate order and flip all but the last coordinate so
    // that u_1 = e_d and, in the plane, the vertices sit at 90°, 210°, 330°.
    std::vector<UnitVector> vs;
    std::vector<double> total(static_cast<std::size_t>(d), 0.0);
    for (Eigen::Index i = 0; i < dim; ++i) {
        std::vector<double> c(static_cast<std::size_t>(d));
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double x = lower(i, dim - 1 - j);
            c[static_cast<std::size_t>(j)] = (j == dim - 1) ? x : -x;
        }
        snap_small(c);
        for (std::size_t j = 0; j < c.size(); ++j) {
            total[j] += c[j];
        }
        vs.emplace_back(std::move(c));
    }
    for (double& x : total) {
        x = -x;
    }
    snap_small(total);
    vs.emplace_back(std::move(total));
    return Configuration(std::move(vs));
}

Configuration gen_polygon_multiplicity(int n, int k) {
    require(k >= 2, "polygon: k must be >= 2");
    require(n >= 1, "polygon: n must be >= 1");
    if (n % (k - 1) != 0) {
        throw PreconditionError("polygon: (k-1) must divide n");
    }
    const int directions = n / (k - 1);
    std::vector<UnitVector> vs;
    for (int j = 0; j < directions; ++j) {
        const double angle = std::numbers::pi * j / directions;
        std::vector<double> c = {std::cos(angle), std::sin(angle)};
        snap_small(c);
        const UnitVector u(std::move(c));
        for (int r = 0; r < k - 1; ++r) {
            vs.push_back(u);
        }
    }
    return Configuration(std::move(vs));
}

Configuration gen_simplex_plus_orthonormal(int d, int h) {
    require(d >= 1, "simplex-plus-orthonormal: d must be >= 1");
    require(h % 2 == 0, "simplex-plus-orthonormal: h must be even");
    require(h >= 2, "simplex-plus-orthonormal: h = 0 leaves the simplex part ill-formed");
    require(h <= d, "simplex-plus-orthonormal: need h <= d");
    const Configuration simplex = gen_simplex(h);
    std::vector<UnitVector> vs;
    for (std::size_t i = 0; i < simplex.size(); ++i) {
        auto r = simplex.row(i);
        std::vector<double> c(static_cast<std::size_t>(d), 0.0);
        std::copy(r.begin(), r.end(), c.begin());
        vs.emplace_back(std::move(c));
    }
    for (int j = h; j < d; ++j) {
        vs.push_back(UnitVector::basis(static_cast<std::size_t>(d), static_cast<std::size_t>(j)));
    }
    return Configuration(std::move(vs));
}

Configuration gen_random_uniform(int d, int n, std::uint64_t seed) {
    require(d >= 1, "random-uniform: d must be >= 1");
    require(n >= 1, "random-uniform: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::vector<UnitVector> vs;
    vs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        vs.emplace_back(gaussian_direction(rng, d));
    }
    return Configuration(std::move(vs));
}

Configuration gen_zero_sum(int d, int n, std::uint64_t seed) {
    require(d >= 1, "zero-sum: d must be >= 1");
    require(n >= d + 1, "zero-sum: need n >= d+1");
    constexpr int kSeeds = 16;
    constexpr int kIterations = 10'000;
    const auto du = static_cast<std::size_t>(d);
    const auto nu = static_cast<std::size_t>(n);

    for (int attempt = 0; attempt < kSeeds; ++attempt) {
        std::mt19937_64 rng(attempt == 0 ? seed : splitmix64(seed + static_cast<std::uint64_t>(attempt)));
        std::vector<double> rows;
        rows.reserve(nu * du);
        for (std::size_t i = 0; i < nu; ++i) {
            auto v = gaussian_direction(rng, d);
            rows.insert(rows.end(), v.begin(), v.end());
        }
        bool degenerate = false;
        for (int it = 0; it < kIterations && !degenerate; ++it) {
            std::vector<double> mean(du, 0.0);
            for (std::size_t i = 0; i < nu; ++i) {
                for (std::size_t j = 0; j < du; ++j) {
                    mean[j] += rows[i * du + j];
                }
            }
            if (norm(mean) <= 1e-9) {
                return Configuration::from_rows(du, rows);
            }
            for (double& x : mean) {
                x /= static_cast<double>(n);
            }
            for (std::size_t i = 0; i < nu; ++i) {
                std::span<double> r(rows.data() + i * du, du);
                for (std::size_t j = 0; j < du; ++j) {
                    r[j] -= mean[j];
                }
                const double len = norm(r);
                if (len < 1e-6) {
                    degenerate = true;
                    break;
                }
                for (double& x : r) {
                    x /= len;
                }
            }
        }
    }
    throw BudgetError("zero-sum: alternating projection did not converge for 16 seeds");
}

Configuration gen_delta_separated(int d, double delta, std::uint64_t seed) {
    require(d >= 1, "delta-separated: d must be >= 1");
    require(delta > 0.0 && delta < 0.5 * std::numbers::pi,
            "delta-separated: need 0 < delta < pi/2");
    const double max_dot = std::cos(delta);
    const auto du = static_cast<std::size_t>(d);
    std::mt19937_64 rng(seed);
    std::vector<double> rows;
    std::size_t count = 0;
    std::uint64_t streak = 0;
    for (;;) {
        const std::uint64_t limit = 10'000ULL * std::max<std::size_t>(count, 1);
        if (streak >= limit) {
            break;
        }
        auto x = gaussian_direction(rng, d);
        bool ok = true;
        for (std::size_t i = 0; i < count; ++i) {
            if (dot(std::span<const double>(rows.data() + i * du, du), x) > max_dot) {
                ok = false;
                break;
            }
        }
        if (ok) {
            rows.insert(rows.end(), x.begin(), x.end());
            ++count;
            streak = 0;
        } else {
            ++streak;
        }
    }
    return Configuration::from_rows(du, rows);
}

Configuration gen_antipodal_separated(int d, int n, double delta, std::uint64_t seed) {
    require(d >= 2, "antipodal-separated: d must be >= 2");
    require(n >= 1, "antipodal-separated: n must be >= 1");
    require(delta > 0.0, "antipodal-separated: delta must be positive");
    // |x-y| >= δ and |x+y| >= δ  <=>  |<x,y>| <= 1 - δ²/2 for unit x, y.
    const double max_abs_dot = 1.0 - 0.5 * delta * delta;
    const auto du = static_cast<std::size_t>(d);
    std::mt19937_64 rng(seed);
    std::vector<double> rows;
    std::size_t count = 0;
    for (std::uint64_t tries = 0; tries < kAntipodalSeparatedBudget; ++tries) {
        auto x = gaussian_direction(rng, d);
        bool ok = true;
        for (std::size_t i = 0; i < count; ++i) {
            if (std::abs(dot(std::span<const double>(rows.data() + i * du, du), x)) > max_abs_dot) {
                ok = false;
                break;
            }
        }
        if (ok) {
            rows.insert(rows.end(), x.begin(), x.end());
            if (++count == static_cast<std::size_t>(n)) {
                return Configuration::from_rows(du, rows);
            }
        }
    }
    throw BudgetError("antipodal-separated: found only " + std::to_string(count) + " of " +
                      std::to_string(n) + " points within the rejection budget");
}

}  // namespace extsum
