// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "extsum/bounds.hpp"
#include "extsum/config_gen.hpp"
#include "extsum/exact.hpp"
#include "extsum/heuristics.hpp"
#include "extsum/minimax.hpp"

namespace {

using namespace extsum;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    int checks = 0;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            detail << "first failure: " << what;
        }
    }
};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string at(int d, int n, int k) {
    return "(d=" + std::to_string(d) + ", n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
}

double exact_value(const Configuration& c, int k) { return max_over_selections(c, static_cast<std::size_t>(k)).value; }

void simplex_pair(Outcome& o) {
    for (int d = 1; d <= 8; ++d) {
        const double want = std::sqrt(2.0 + 2.0 / d);
        const double got = exact_value(gen_simplex(d), 2);
        o.check(std::abs(got - want) <= 1e-9, "simplex exact " + at(d, d + 1, 2) + " = " + fmt(got));
    }
    for (int d = 2; d <= 4; ++d) {
        const double want = std::sqrt(2.0 + 2.0 / d);
        const MinimaxEstimate e = estimate_c(d, d + 1, 2, SearchSettings{});
        o.check(std::abs(e.value - want) <= 1e-4, "estimate_c " + at(d, d + 1, 2) + " = " + fmt(e.value));
        o.detail << "estimate_c" << at(d, d + 1, 2) << "=" << fmt(e.value) << " ";
    }
}

void planar_sharpness(Outcome& o) {
    std::mt19937_64 rng(2002);
    std::string missed;
    for (int n = 1; n <= 12; ++n) {
        for (int k = 2; k <= std::min(n, 6); ++k) {
            if (n % (k - 1) != 0) continue;
            const auto ku = static_cast<std::size_t>(k);
            const double bound = planar_lower(n, k).value;
            const double got = max_over_selections_planar(gen_polygon_multiplicity(n, k), ku).value;
            const bool attained = std::abs(got - bound) <= 1e-9;
            o.check(attained, "polygon " + at(2, n, k) + " = " + fmt(got) + " vs " + fmt(bound));
            if (!attained) {
                missed += " (" + std::to_string(n) + "," + std::to_string(k) + ")";
            }
            for (int t = 0; t < 200; ++t) {
                const double v = max_over_selections_planar(gen_random_uniform(2, n, rng()), ku).value;
                o.check(v >= bound - 1e-9, "random planar " + at(2, n, k) + " = " + fmt(v));
            }
        }
    }
    if (!missed.empty()) {
        o.detail << "; polygon above the bound at (n,k) =" << missed;
    }
}

void orthonormal_sqrt_k(Outcome& o) {
    for (int d = 1; d <= 6; ++d)
        for (int n = 1; n <= d; ++n)
            for (int k = 1; k <= n; ++k) {
                const double got = exact_value(gen_orthonormal(d, n), k);
                o.check(std::abs(got - std::sqrt(k)) <= 1e-12, "orthonormal " + at(d, n, k) + " = " + fmt(got));
            }
    std::mt19937_64 rng(2003);
    for (int t = 0; t < 500; ++t) {
        const int d = std::uniform_int_distribution<int>(1, 4)(rng);
        const int n = std::uniform_int_distribution<int>(1, 10)(rng);
        const Configuration c = gen_random_uniform(d, n, rng());
        for (int k = 1; k <= n; ++k) {
            const double got = exact_value(c, k);
            o.check(got >= std::sqrt(k) - 1e-9, "random " + at(d, n, k) + " = " + fmt(got));
        }
    }
}

void bang_certificate(Outcome& o) {
    std::mt19937_64 rng(2004);
    double worst = 1e300;
    for (int t = 0; t < 500; ++t) {
        const int d = std::uniform_int_distribution<int>(1, 8)(rng);
        const int n = std::uniform_int_distribution<int>(1, 20)(rng);
        const BangResult b = bang_ascent(gen_random_uniform(d, n, rng()), std::nullopt, rng());
        worst = std::min(worst, b.certificate.min_margin);
        o.check(b.certificate.min_margin >= 1.0 - 1e-9, "min_margin " + at(d, n, n) + " = " + fmt(b.certificate.min_margin));
        o.check(b.result.value >= std::sqrt(n) - 1e-9, "bang value " + at(d, n, n) + " = " + fmt(b.result.value));
    }
    o.detail << "smallest min_margin " << fmt(worst) << " ";
}

void zero_sum(Outcome& o) {
    std::mt19937_64 rng(2005);
    for (int d : {2, 4, 6}) {
        double worst = 1e300;
        for (int t = 0; t < 100; ++t) {
            const Configuration c = gen_zero_sum(d, d + 1, rng());
            const double got = exact_value(c, d + 1);
            worst = std::min(worst, got);
            o.check(got >= std::sqrt(d + 2.0) - 1e-9, "zero-sum " + at(d, d + 1, d + 1) + " = " + fmt(got));
        }
        o.detail << "d=" << d << " min " << fmt(worst) << " ";
    }
}

void oracle_equivalence(Outcome& o) {
    std::mt19937_64 rng(2006);
    for (int t = 0; t < 300; ++t) {
        const int n = std::uniform_int_distribution<int>(1, 12)(rng);
        const Configuration c = gen_random_uniform(2, n, rng());
        for (int k = 1; k <= n; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const double exact = exact_value(c, k);
            const double planar = max_over_selections_planar(c, ku).value;
            o.check(std::abs(exact - planar) <= 1e-9, "planar vs exact " + at(2, n, k));
            const double cap = cap_greedy_selection(c, ku).result.value;
            o.check(cap <= exact + 1e-12, "cap-greedy above exact " + at(2, n, k));
            if (k == n) {
                const double bang = bang_ascent(c, std::nullopt, rng()).result.value;
                o.check(bang <= exact + 1e-12, "bang above exact " + at(2, n, k));
            }
        }
    }
}

void bounds_consistency(Outcome& o) {
    std::mt19937_64 rng(2007);
    for (int t = 0; t < 300; ++t) {
        const int d = std::uniform_int_distribution<int>(1, 5)(rng);
        const int n = std::uniform_int_distribution<int>(d, 10)(rng);
        const int k = std::uniform_int_distribution<int>(1, n)(rng);
        const Configuration c = gen_random_uniform(d, n, rng());
        const double v = exact_value(c, k);
        double lower = 0.0;
        for (const BoundReport& r : unconditional_lower_bounds(d, n, k)) {
            o.check(r.validity == Validity::exact, "non-exact bound in the lower set: " + r.name);
            lower = std::max(lower, r.value);
        }
        o.check(v >= lower - 1e-9, "exact below lower bound " + at(d, n, k));
        o.check(v <= k + 1e-12, "exact above k " + at(d, n, k));
        if (n >= 2) {
            o.check(welch_pair_lower(d, n) <= exact_value(c, 2) + 1e-9, "welch above exact " + at(d, n, 2));
        }
    }
}

void lambert(Outcome& o) {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double n = std::pow(10.0, 6.0 * i / 999.0);
        for (double frac : {1.0, 0.5, 1e-3}) {
            const double k = std::max(1.0, std::min(n, frac * n));
            const double phi = lambert_phi(k, n);
            worst = std::max(worst, std::abs(phi * k / n - std::exp(-0.5 * phi * phi)));
        }
    }
    o.check(worst <= 1e-12, "residual " + fmt(worst));
    for (double n : {1.0, 7.0, 1000.0, 1e9}) {
        o.check(std::abs(lambert_phi(n, n) - 0.753089) <= 1e-5, "lambert_phi(n, n) at n = " + fmt(n));
    }
    o.detail << "max residual " << fmt(worst) << " ";
}

void copies_construction(Outcome& o) {
    for (int d : {2, 3})
        for (int m : {2, 3})
            for (int a = 1; a <= d; ++a) {
                const double got = exact_value(gen_orthonormal_copies(d, m), a * m);
                const double want = std::sqrt(a) * m;
                o.check(std::abs(got - want) <= 1e-9, "copies " + at(d, d * m, a * m) + " = " + fmt(got));
            }
}

void substituted_properties(Outcome& o) {
    // (a) formula arithmetic.
    o.check(std::abs(general_lower(4, 1000, 3) - 2.50077988246754301) <= 1e-12, "general_lower(4,1000,3)");
    o.check(std::abs(general_upper(2, 1000000, 3).value - (3.0 - 3.662109375e-16)) <= 1e-15, "general_upper small k");
    o.check(std::abs(3.0 - general_upper(2, 1000, 3).value - 3.662109375e-10) <= 1e-15, "general_upper deficit");
    o.check(std::abs(700.0 - general_upper(2, 1000000, 700).value - 1.48871527777e-7) <= 1e-12,
            "general_upper large k");
    o.check(std::abs(large_k_upper(3, 12, 12).value - 11.77476024627013084) <= 1e-11, "large_k_upper(3,12,12)");
    o.check(std::abs(large_k_upper(4, 1000, 1000).value / 1000.0 - 0.849770124728420525) <= 1e-12,
            "large_k_upper(4,n,n)/n");
    const auto [plo, phi] = pair_large_n_bounds(10, 1000000);
    o.check(std::abs(plo.value - 1.97632789694857483) <= 1e-13, "pair lower");
    o.check(std::abs(phi.value - 1.99350177563294211) <= 1e-13, "pair upper");
    const auto [slo, shi] = separated_cardinality_bounds(3, 0.5);
    o.check(std::abs(slo - 10.9055507853471895) <= 1e-12 && std::abs(shi - 531.409780123852628) <= 1e-10,
            "separated cardinality");

    // (b) validity flags: asymptotic results never enter finite-instance checks.
    for (int d = 1; d <= 8; ++d)
        for (int n = 1; n <= 40; ++n)
            for (int k = 1; k <= n; ++k) {
                for (const BoundReport& r : all_bounds(d, n, k)) {
                    const bool asymptotic_name = r.name == "general_upper" || r.name == "large_k_upper" ||
                                                 r.name == "pair_large_n_lower" || r.name == "pair_large_n_upper";
                    o.check(!asymptotic_name || r.validity == Validity::asymptotic_only, "flag on " + r.name);
                }
                for (const BoundReport& r : unconditional_lower_bounds(d, n, k))
                    o.check(r.validity == Validity::exact && r.applicable && r.hypothesis.empty(),
                            "unconditional set holds " + r.name);
            }

    // (c) growth window for d = n = k.
    SearchSettings s;
    s.restarts = 4;
    s.max_iters = 200;
    const double lo = std::sqrt(2.0 / std::numbers::pi) - 0.05;
    const double hi = 4.0 / std::sqrt(std::numbers::pi) + 0.05;
    for (int d : {4, 9, 16}) {
        const MinimaxEstimate e = estimate_c(d, d, d, s);
        const double ratio = e.value * std::sqrt(d) / d;
        o.check(ratio >= lo && ratio <= hi, "ratio at d = " + std::to_string(d) + " is " + fmt(ratio));
        o.detail << " d=" << d << " ratio " << fmt(ratio);
    }
}

struct Criterion {
    const char* id;
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"AC1", "simplex pair value and minimax recovery", 120, simplex_pair},
        {"AC2", "planar bound sharpness", 60, planar_sharpness},
        {"AC3", "orthonormal sqrt(k) and universal sqrt(k) lower bound", 120, orthonormal_sqrt_k},
        {"AC4", "sign-flip certificate", 60, bang_certificate},
        {"AC5", "zero-sum systems in even dimension", 60, zero_sum},
        {"AC6", "oracle equivalence of solvers", 180, oracle_equivalence},
        {"AC7", "bounds consistency", 120, bounds_consistency},
        {"AC8", "Lambert-W radius solver", 1, lambert},
        {"AC9", "orthonormal copies construction", 60, copies_construction},
        {"AC10", "asymptotic results: arithmetic, flags, growth window", 0, substituted_properties},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0 && secs > c.budget_s) {
            o.pass = false;
            o.detail << "over the " << c.budget_s << "s runtime budget";
        }
        if (!o.pass) ++failed;
        std::printf("%-4s %s  %-52s %4d checks  %7.2fs  %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                    o.checks, secs, o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
