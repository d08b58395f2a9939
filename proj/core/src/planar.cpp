#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "extsum/error.hpp"
#include "extsum/exact.hpp"

namespace extsum {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleMergeTolerance = 1e-12;

// Angle in [0, π) of the direction perpendicular to w.
double normal_angle(double wx, double wy) {
    double a = std::atan2(wy, wx) + 0.5 * kPi;
    a = std::fmod(a, kPi);
    if (a < 0.0) {
        a += kPi;
    }
    if (a >= kPi) {
        a -= kPi;
    }
    return a;
}

struct Event {
    double angle;
    std::size_t i;
    std::size_t j;  // == i for a zero crossing of <v, u_i>
};

}  // namespace

SolveResult max_over_selections_planar(const Configuration& config, std::size_t k) {
    detail::require(config.dim() == 2, "planar solver requires d = 2");
    const std::size_t n = config.size();
    detail::require(k >= 1 && k <= n, "selection size k must satisfy 1 <= k <= n");

    // f(v) = sum of the k largest |<v,u_i>| is even in v, so directions
    // v(θ) = (cos θ, sin θ) with θ in [0, π) suffice. The ordering of the
    // keys |<v,u_i>| changes only at the events below.
    std::vector<Event> events;
    events.reserve(n + n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        auto ui = config.row(i);
        events.push_back({normal_angle(ui[0], ui[1]), i, i});
        for (std::size_t j = i + 1; j < n; ++j) {
            auto uj = config.row(j);
            const double dx = ui[0] - uj[0];
            const double dy = ui[1] - uj[1];
            const double sx = ui[0] + uj[0];
            const double sy = ui[1] + uj[1];
            // u_i = ±u_j makes one of these vanish: equal keys everywhere.
            if (std::hypot(dx, dy) > 1e-12) {
                events.push_back({normal_angle(dx, dy), i, j});
            }
            if (std::hypot(sx, sy) > 1e-12) {
                events.push_back({normal_angle(sx, sy), i, j});
            }
        }
    }
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) { return a.angle < b.angle; });

    // Group coincident angles.
    std::vector<std::size_t> group_start;
    for (std::size_t e = 0; e < events.size(); ++e) {
        if (e == 0 || events[e].angle - events[e - 1].angle > kAngleMergeTolerance) {
            group_start.push_back(e);
        }
    }
    // Also merge the last group with the first across the wrap at π.
    if (group_start.size() > 1 &&
        events.front().angle + kPi - events.back().angle <= kAngleMergeTolerance) {
        for (std::size_t e = group_start.back(); e < events.size(); ++e) {
            events[e].angle -= kPi;
        }
        std::rotate(events.begin(), events.begin() + static_cast<std::ptrdiff_t>(group_start.back()),
                    events.end());
        const std::size_t shift = events.size() - group_start.back();
        group_start.pop_back();
        for (std::size_t g = 1; g < group_start.size(); ++g) {
            group_start[g] += shift;
        }
    }
    const std::size_t groups = group_start.size();
    auto group_angle = [&](std::size_t g) {
        return g < groups ? events[group_start[g]].angle : events[group_start[0]].angle + kPi;
    };

    std::vector<double> key(n);
    std::vector<int> sign(n, 1);
    double cos_t = 1.0;
    double sin_t = 0.0;
    auto evaluate = [&](std::size_t i) {
        auto u = config.row(i);
        const double p = cos_t * u[0] + sin_t * u[1];
        key[i] = std::abs(p);
        sign[i] = p < 0.0 ? -1 : 1;
    };
    auto by_key = [&](std::size_t a, std::size_t b) {
        return key[a] > key[b] || (key[a] == key[b] && a < b);
    };

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<std::size_t> position(n);
    std::vector<char> touched(n, 0);
    std::vector<std::size_t> affected;
    std::vector<std::size_t> slots;

    // Running sum of the current top-k selection with its signs.
    double sx = 0.0;
    double sy = 0.0;
    auto accumulate = [&](std::size_t i, double weight) {
        auto u = config.row(i);
        sx += weight * sign[i] * u[0];
        sy += weight * sign[i] * u[1];
    };
    auto resync = [&] {
        sx = 0.0;
        sy = 0.0;
        for (std::size_t p = 0; p < k; ++p) {
            accumulate(order[p], 1.0);
        }
    };

    std::optional<SolveResult> best;
    auto consider = [&] {
        if (best && std::hypot(sx, sy) < best->value - 1e-9) {
            return;
        }
        SignedSelection sel;
        sel.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(sel.indices.begin(), sel.indices.end());
        sel.signs.resize(k);
        const int flip = sign[sel.indices[0]];
        for (std::size_t j = 0; j < k; ++j) {
            sel.signs[j] = sign[sel.indices[j]] * flip;
        }
        SolveResult r = make_result(config, std::move(sel), Certificate::planar_sweep);
        if (!best || r.value > best->value + kTieTolerance ||
            (r.value >= best->value - kTieTolerance && selection_less(r.selection, best->selection))) {
            best = std::move(r);
        }
    };

    for (std::size_t g = 0; g < groups; ++g) {
        const double mid = 0.5 * (group_angle(g) + group_angle(g + 1));
        cos_t = std::cos(mid);
        sin_t = std::sin(mid);
        if (g == 0) {
            for (std::size_t i = 0; i < n; ++i) {
                evaluate(i);
            }
            std::sort(order.begin(), order.end(), by_key);
            for (std::size_t p = 0; p < n; ++p) {
                position[order[p]] = p;
            }
            resync();
        } else {
            // Only elements named by this group's events can change rank or
            // sign; re-sort them within the slots they occupy.
            affected.clear();
            const std::size_t end = g + 1 < groups ? group_start[g + 1] : events.size();
            for (std::size_t e = group_start[g]; e < end; ++e) {
                for (std::size_t idx : {events[e].i, events[e].j}) {
                    if (!touched[idx]) {
                        touched[idx] = 1;
                        affected.push_back(idx);
                    }
                }
            }
            slots.clear();
            for (std::size_t idx : affected) {
                touched[idx] = 0;
                slots.push_back(position[idx]);
                if (position[idx] < k) {
                    accumulate(idx, -1.0);
                }
                evaluate(idx);
            }
            std::sort(slots.begin(), slots.end());
            std::sort(affected.begin(), affected.end(), by_key);
            for (std::size_t t = 0; t < slots.size(); ++t) {
                order[slots[t]] = affected[t];
                position[affected[t]] = slots[t];
                if (slots[t] < k) {
                    accumulate(affected[t], 1.0);
                }
            }
            if (g % n == 0) {
                resync();
            }
        }
        consider();
    }
    return std::move(*best);
}

}  // namespace extsum
