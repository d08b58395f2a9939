#include "extsum/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "extsum/error.hpp"

namespace extsum {

using detail::require;

namespace {

constexpr double kFlipGainTolerance = 1e-12;

std::vector<double> sum_with_signs(const Configuration& config, const std::vector<int>& signs) {
    std::vector<double> s(config.dim(), 0.0);
    for (std::size_t i = 0; i < config.size(); ++i) {
        auto r = config.row(i);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] += signs[i] * r[c];
        }
    }
    return s;
}

}  // namespace

BangResult bang_ascent(const Configuration& config, std::optional<std::vector<int>> initial_signs,
                       std::uint64_t seed) {
    const std::size_t n = config.size();
    std::vector<int> signs;
    if (initial_signs) {
        require(initial_signs->size() == n, "initial signs must have length n");
        for (int e : *initial_signs) {
            require(e == 1 || e == -1, "initial signs must be +1 or -1");
        }
        signs = std::move(*initial_signs);
    } else {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(0.5);
        signs.resize(n);
        for (int& e : signs) {
            e = coin(rng) ? 1 : -1;
        }
    }

    std::vector<double> s = sum_with_signs(config, signs);
    std::size_t flips = 0;
    for (;;) {
        double best_gain = kFlipGainTolerance;
        std::size_t best_i = n;
        for (std::size_t i = 0; i < n; ++i) {
            const double margin = signs[i] * dot(config.row(i), s);
            const double gain = 4.0 - 4.0 * margin;
            if (gain > best_gain) {
                best_gain = gain;
                best_i = i;
            }
        }
        if (best_i == n) {
            break;
        }
        auto r = config.row(best_i);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] -= 2.0 * signs[best_i] * r[c];
        }
        signs[best_i] = -signs[best_i];
        if (++flips % 64 == 0) {
            s = sum_with_signs(config, signs);
        }
    }

    if (signs[0] == -1) {
        for (int& e : signs) {
            e = -e;
        }
    }
    SignedSelection sel;
    sel.indices.resize(n);
    std::iota(sel.indices.begin(), sel.indices.end(), std::size_t{0});
    sel.signs = signs;

    BangResult out;
    out.result = make_result(config, std::move(sel), Certificate::heuristic);
    out.flips = flips;
    out.certificate.margins.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.certificate.margins[i] = signs[i] * dot(config.row(i), out.result.sum);
    }
    out.certificate.min_margin =
        *std::min_element(out.certificate.margins.begin(), out.certificate.margins.end());
    return out;
}

namespace {

struct CapScore {
    std::size_t count = 0;
    double score = 0.0;  // Σ of the k largest |<x,u_i>|
};

bool better(const CapScore& a, const CapScore& b) {
    return a.count > b.count || (a.count == b.count && a.score > b.score + 1e-12);
}

class CapEvaluator {
public:
    CapEvaluator(const Configuration& config, std::size_t k, double cos_r)
        : config_(config), k_(k), cos_r_(cos_r), proj_(config.size()), order_(config.size()) {}

    CapScore score(std::span<const double> x) {
        CapScore out;
        for (std::size_t i = 0; i < config_.size(); ++i) {
            proj_[i] = dot(config_.row(i), x);
            // u_i and -u_i are both elements of ±ω_n.
            if (proj_[i] >= cos_r_ - 1e-12) ++out.count;
            if (-proj_[i] >= cos_r_ - 1e-12) ++out.count;
        }
        top_k();
        for (std::size_t j = 0; j < k_; ++j) {
            out.score += std::abs(proj_[order_[j]]);
        }
        return out;
    }

    // Valid after score(): the k chosen indices with their orientation.
    SignedSelection selection() const {
        SignedSelection sel;
        sel.indices.assign(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k_));
        std::sort(sel.indices.begin(), sel.indices.end());
        for (std::size_t i : sel.indices) {
            sel.signs.push_back(proj_[i] < 0.0 ? -1 : 1);
        }
        if (sel.signs.front() == -1) {
            for (int& e : sel.signs) {
                e = -e;
            }
        }
        return sel;
    }

    std::vector<double> centroid_direction() const {
        std::vector<double> c(config_.dim(), 0.0);
        for (std::size_t j = 0; j < k_; ++j) {
            const std::size_t i = order_[j];
            const double e = proj_[i] < 0.0 ? -1.0 : 1.0;
            auto r = config_.row(i);
            for (std::size_t t = 0; t < c.size(); ++t) {
                c[t] += e * r[t];
            }
        }
        return c;
    }

private:
    void top_k() {
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        auto cmp = [this](std::size_t a, std::size_t b) {
            const double pa = std::abs(proj_[a]);
            const double pb = std::abs(proj_[b]);
            return pa > pb || (pa == pb && a < b);
        };
        std::partial_sort(order_.begin(), order_.begin() + static_cast<std::ptrdiff_t>(k_),
                          order_.end(), cmp);
    }

    const Configuration& config_;
    std::size_t k_;
    double cos_r_;
    std::vector<double> proj_;
    std::vector<std::size_t> order_;
};

// Point at fraction t of the great-circle arc from x to y (both unit).
std::vector<double> slerp(std::span<const double> x, std::span<const double> y, double t) {
    const double omega = geodesic_distance(x, y);
    std::vector<double> out(x.size());
    if (omega < 1e-15) {
        std::copy(x.begin(), x.end(), out.begin());
        return out;
    }
    const double a = std::sin((1.0 - t) * omega) / std::sin(omega);
    const double b = std::sin(t * omega) / std::sin(omega);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = a * x[i] + b * y[i];
    }
    const double len = norm(out);
    for (double& v : out) {
        v /= len;
    }
    return out;
}

}  // namespace

CapGreedyResult cap_greedy_selection(const Configuration& config, std::size_t k) {
    const std::size_t n = config.size();
    const std::size_t d = config.dim();
    require(d >= 2, "cap-greedy needs d >= 2");
    require(k >= 1 && k <= n, "selection size k must satisfy 1 <= k <= n");

    const double radius =
        cap_radius_for_measure(static_cast<int>(d), static_cast<double>(k) / (2.0 * static_cast<double>(n)));
    CapEvaluator eval(config, k, std::cos(radius));

    // Candidate centres: the 2n elements of ±ω_n, in that order.
    std::vector<double> center;
    CapScore best;
    bool have = false;
    std::vector<double> x(d);
    for (std::size_t j = 0; j < 2 * n; ++j) {
        auto r = config.row(j / 2);
        const double e = (j % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t t = 0; t < d; ++t) {
            x[t] = e * r[t];
        }
        const CapScore s = eval.score(x);
        if (!have || better(s, best)) {
            best = s;
            center = x;
            have = true;
        }
    }

    constexpr double kInvPhi = 0.6180339887498949;
    for (int step = 0; step < kCapRefinementSteps; ++step) {
        eval.score(center);
        std::vector<double> target = eval.centroid_direction();
        const double len = norm(target);
        if (len < 1e-12) {
            break;
        }
        for (double& v : target) {
            v /= len;
        }
        if (geodesic_distance(center, target) < 1e-12) {
            break;
        }
        // Golden-section search for the best point on the arc center -> target.
        double lo = 0.0;
        double hi = 1.0;
        double t1 = hi - kInvPhi * (hi - lo);
        double t2 = lo + kInvPhi * (hi - lo);
        double f1 = eval.score(slerp(center, target, t1)).score;
        double f2 = eval.score(slerp(center, target, t2)).score;
        for (int it = 0; it < 40; ++it) {
            if (f1 < f2) {
                lo = t1;
                t1 = t2;
                f1 = f2;
                t2 = lo + kInvPhi * (hi - lo);
                f2 = eval.score(slerp(center, target, t2)).score;
            } else {
                hi = t2;
                t2 = t1;
                f2 = f1;
                t1 = hi - kInvPhi * (hi - lo);
                f1 = eval.score(slerp(center, target, t1)).score;
            }
        }
        // The endpoint is the exact maximizer for a fixed selection; keep it
        // in the running alongside the interior optimum.
        std::vector<double> moved = slerp(center, target, 0.5 * (lo + hi));
        CapScore moved_score = eval.score(moved);
        const CapScore end_score = eval.score(target);
        if (end_score.score > moved_score.score) {
            moved = target;
            moved_score = end_score;
        }
        const bool keeps_guarantee = moved_score.count >= std::min(best.count, k);
        if (!(moved_score.score > best.score + 1e-12) || !keeps_guarantee) {
            break;
        }
        center = std::move(moved);
        best = moved_score;
    }

    CapGreedyResult out;
    const CapScore final_score = eval.score(center);
    out.result = make_result(config, eval.selection(), Certificate::heuristic);
    out.center = center;
    out.radius = radius;
    out.cap_count = final_score.count;
    out.guaranteed = final_score.count >= k;
    return out;
}

double averaging_lower_bound(const Configuration& config, std::size_t k) {
    require(config.dim() >= 2, "averaging bound needs d >= 2");
    require(k >= 1 && k <= config.size(), "selection size k must satisfy 1 <= k <= n");
    return static_cast<double>(k) * 2.0 * kappa_ratio(static_cast<int>(config.dim()));
}

}  // namespace extsum
