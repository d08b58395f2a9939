#include "extsum/exact.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <string>
#include <thread>

#include "extsum/error.hpp"

namespace extsum {

using detail::require;

bool selection_less(const SignedSelection& a, const SignedSelection& b) {
    if (a.indices != b.indices) {
        return std::lexicographical_compare(a.indices.begin(), a.indices.end(), b.indices.begin(),
                                            b.indices.end());
    }
    // +1 sorts before -1.
    return std::lexicographical_compare(a.signs.begin(), a.signs.end(), b.signs.begin(),
                                        b.signs.end(), [](int x, int y) { return x > y; });
}

std::string_view to_string(Certificate c) {
    switch (c) {
        case Certificate::exhaustive: return "exhaustive";
        case Certificate::planar_sweep: return "planar-sweep";
        case Certificate::heuristic: return "heuristic";
    }
    return "unknown";
}

std::vector<double> signed_sum(const Configuration& config, const SignedSelection& selection) {
    require(selection.indices.size() == selection.signs.size(),
            "selection indices and signs differ in length");
    std::vector<double> s(config.dim(), 0.0);
    for (std::size_t j = 0; j < selection.indices.size(); ++j) {
        const std::size_t i = selection.indices[j];
        require(i < config.size(), "selection index out of range");
        const int e = selection.signs[j];
        require(e == 1 || e == -1, "selection signs must be +1 or -1");
        auto r = config.row(i);
        for (std::size_t c = 0; c < s.size(); ++c) {
            s[c] += e * r[c];
        }
    }
    return s;
}

SolveResult make_result(const Configuration& config, SignedSelection selection,
                        std::optional<Certificate> certificate) {
    SolveResult out;
    out.sum = signed_sum(config, selection);
    out.value = norm(out.sum);
    out.selection = std::move(selection);
    out.certificate = certificate;
    return out;
}

namespace {

// Best sign pattern of one subset. Patterns are bit masks where bit
// (k-1-j) set means sign -1 at position j, so numeric order equals the
// lexicographic order on signs with + < -. Position 0 is pinned to +.
struct SubsetBest {
    double value2 = -1.0;
    std::uint32_t mask = 0;
};

class SubsetEnumerator {
public:
    SubsetEnumerator(const Configuration& config) : config_(config), dim_(config.dim()) {}

    // Visits all 2^{k-1} patterns in Gray-code order; `visit(value2, mask)`.
    template <class Visit>
    void enumerate(std::span<const std::size_t> subset, Visit&& visit) {
        const std::size_t k = subset.size();
        sum_.assign(dim_, 0.0);
        for (std::size_t idx : subset) {
            auto r = config_.row(idx);
            for (std::size_t c = 0; c < dim_; ++c) {
                sum_[c] += r[c];
            }
        }
        std::uint32_t mask = 0;
        visit(norm2(), mask);
        const std::uint64_t patterns = std::uint64_t{1} << (k - 1);
        for (std::uint64_t step = 1; step < patterns; ++step) {
            // Gray code: flip position (k-1-t) where t = ctz(step), t < k-1.
            const int t = std::countr_zero(step);
            const std::size_t pos = k - 1 - static_cast<std::size_t>(t);
            const std::uint32_t bit = std::uint32_t{1} << t;
            mask ^= bit;
            const double e = (mask & bit) ? -2.0 : 2.0;
            auto r = config_.row(subset[pos]);
            for (std::size_t c = 0; c < dim_; ++c) {
                sum_[c] += e * r[c];
            }
            if ((step & 0xfffU) == 0) {
                resync(subset, mask);
            }
            visit(norm2(), mask);
        }
    }

    SubsetBest best_of(std::span<const std::size_t> subset) {
        SubsetBest best;
        enumerate(subset, [&](double v2, std::uint32_t mask) {
            if (v2 > best.value2 + kTieTolerance ||
                (v2 >= best.value2 - kTieTolerance && mask < best.mask)) {
                best.value2 = v2;
                best.mask = mask;
            }
        });
        return best;
    }

private:
    double norm2() const {
        double s = 0.0;
        for (double x : sum_) {
            s += x * x;
        }
        return s;
    }

    void resync(std::span<const std::size_t> subset, std::uint32_t mask) {
        const std::size_t k = subset.size();
        sum_.assign(dim_, 0.0);
        for (std::size_t j = 0; j < k; ++j) {
            const double e = (mask >> (k - 1 - j)) & 1U ? -1.0 : 1.0;
            auto r = config_.row(subset[j]);
            for (std::size_t c = 0; c < dim_; ++c) {
                sum_[c] += e * r[c];
            }
        }
    }

    const Configuration& config_;
    std::size_t dim_;
    std::vector<double> sum_;
};

SignedSelection selection_from_mask(std::span<const std::size_t> subset, std::uint32_t mask) {
    SignedSelection sel;
    const std::size_t k = subset.size();
    sel.indices.assign(subset.begin(), subset.end());
    sel.signs.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        sel.signs[j] = ((mask >> (k - 1 - j)) & 1U) ? -1 : 1;
    }
    return sel;
}

// Running best with tolerance ties broken lexicographically.
struct Incumbent {
    std::optional<SolveResult> result;

    void offer(SolveResult candidate) {
        if (!result || candidate.value > result->value + kTieTolerance ||
            (candidate.value >= result->value - kTieTolerance &&
             selection_less(candidate.selection, result->selection))) {
            result = std::move(candidate);
        }
    }
};

// Advances `comb` (strictly increasing, values < n) to the next k-combination
// in lexicographic order; returns false after the last one.
bool next_combination(std::vector<std::size_t>& comb, std::size_t n) {
    const std::size_t k = comb.size();
    std::size_t i = k;
    while (i > 0) {
        --i;
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (std::size_t j = i + 1; j < k; ++j) {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    return false;
}

void check_budget(std::size_t n, std::size_t k) {
    require(k >= 1 && k <= n, "selection size k must satisfy 1 <= k <= n");
    if (k > kMaxSubsetSize) {
        throw BudgetError("k = " + std::to_string(k) + " exceeds the enumeration limit of " +
                          std::to_string(kMaxSubsetSize) + "; use a heuristic method");
    }
    const double cost = enumeration_cost(n, k);
    if (cost > kMaxEnumeratedSelections) {
        throw BudgetError("C(n,k)*2^(k-1) = " + std::to_string(cost) +
                          " exceeds the enumeration budget of 1e8; use a heuristic or the planar solver");
    }
}

// Best selection over all k-subsets whose first index is `first`.
std::optional<SolveResult> best_with_first(const Configuration& config, std::size_t k,
                                           std::size_t first) {
    const std::size_t n = config.size();
    if (first + k > n) {
        return std::nullopt;
    }
    SubsetEnumerator en(config);
    Incumbent inc;
    std::vector<std::size_t> comb(k);
    for (std::size_t j = 0; j < k; ++j) {
        comb[j] = first + j;
    }
    do {
        if (comb[0] != first) {
            break;
        }
        const SubsetBest b = en.best_of(comb);
        // Cheap reject before building a full result.
        if (inc.result && std::sqrt(b.value2) < inc.result->value - 1e-9) {
            continue;
        }
        inc.offer(make_result(config, selection_from_mask(comb, b.mask), Certificate::exhaustive));
    } while (next_combination(comb, n));
    return inc.result;
}

}  // namespace

double enumeration_cost(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0.0;
    }
    double c = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return c * std::ldexp(1.0, static_cast<int>(k) - 1);
}

SolveResult max_signed_sum(const Configuration& config, std::vector<std::size_t> subset) {
    const std::size_t k = subset.size();
    require(k >= 1, "subset must be non-empty");
    std::sort(subset.begin(), subset.end());
    require(std::adjacent_find(subset.begin(), subset.end()) == subset.end(),
            "subset indices must be distinct");
    require(subset.back() < config.size(), "subset index out of range");
    if (k > kMaxSubsetSize) {
        throw BudgetError("subset size " + std::to_string(k) + " exceeds the enumeration limit of " +
                          std::to_string(kMaxSubsetSize));
    }
    SubsetEnumerator en(config);
    const SubsetBest b = en.best_of(subset);
    return make_result(config, selection_from_mask(subset, b.mask), Certificate::exhaustive);
}

SolveResult max_over_selections(const Configuration& config, std::size_t k,
                                const ExactOptions& options) {
    const std::size_t n = config.size();
    check_budget(n, k);
    const std::size_t jobs = n - k + 1;
    std::vector<std::optional<SolveResult>> partial(jobs);

    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const bool go_parallel = options.parallel && hw > 1 && jobs > 1 &&
                             enumeration_cost(n, k) * static_cast<double>(config.dim()) > 1e6;
    if (go_parallel) {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        const unsigned workers = std::min<unsigned>(hw, static_cast<unsigned>(jobs));
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t job; (job = next.fetch_add(1)) < jobs;) {
                    partial[job] = best_with_first(config, k, job);
                }
            });
        }
    } else {
        for (std::size_t job = 0; job < jobs; ++job) {
            partial[job] = best_with_first(config, k, job);
        }
    }
    // Merge in lexicographic subset order, exactly as a sequential scan would.
    Incumbent inc;
    for (auto& p : partial) {
        if (p) {
            inc.offer(std::move(*p));
        }
    }
    return std::move(*inc.result);
}

std::vector<SolveResult> near_max_selections(const Configuration& config, std::size_t k,
                                             double tolerance, std::size_t max_results) {
    const std::size_t n = config.size();
    check_budget(n, k);
    require(tolerance >= 0.0, "tolerance must be non-negative");

    struct Candidate {
        double value;
        std::vector<std::size_t> subset;
        std::uint32_t mask;
    };
    std::vector<Candidate> kept;
    double best = -1.0;
    SubsetEnumerator en(config);
    std::vector<std::size_t> comb(k);
    for (std::size_t j = 0; j < k; ++j) {
        comb[j] = j;
    }
    do {
        en.enumerate(comb, [&](double v2, std::uint32_t mask) {
            const double v = std::sqrt(v2);
            if (v < best - tolerance) {
                return;
            }
            if (v > best) {
                best = v;
                std::erase_if(kept, [&](const Candidate& c) { return c.value < best - tolerance; });
            }
            kept.push_back({v, comb, mask});
        });
    } while (next_combination(comb, n));

    std::vector<SolveResult> out;
    out.reserve(kept.size());
    for (const auto& c : kept) {
        out.push_back(make_result(config, selection_from_mask(c.subset, c.mask), Certificate::exhaustive));
    }
    std::sort(out.begin(), out.end(), [](const SolveResult& a, const SolveResult& b) {
        return selection_less(a.selection, b.selection);
    });
    if (out.size() > max_results) {
        out.resize(max_results);
    }
    return out;
}

double coherence(const Configuration& config) {
    require(config.size() >= 2, "coherence needs n >= 2");
    double best = 0.0;
    for (std::size_t i = 0; i < config.size(); ++i) {
        for (std::size_t j = i + 1; j < config.size(); ++j) {
            best = std::max(best, std::abs(dot(config.row(i), config.row(j))));
        }
    }
    return std::min(best, 1.0);
}

}  // namespace extsum
