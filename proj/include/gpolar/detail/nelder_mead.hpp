#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>

namespace gpolar::detail {

template <std::size_t N>
struct SimplexResult {
    std::array<double, N> x{};
    double value = 0.0;
    int evaluations = 0;
};

// Deterministic Nelder-Mead with the standard coefficients
// (reflection 1, expansion 2, contraction 1/2, shrink 1/2).
template <std::size_t N, class F>
SimplexResult<N> nelder_mead(F&& f, const std::array<double, N>& start, double step, int max_evals,
                             double ftol = 1e-14) {
    using Point = std::array<double, N>;
    std::array<Point, N + 1> pts;
    std::array<double, N + 1> vals;
    int evals = 0;
    auto eval = [&](const Point& p) {
        ++evals;
        return f(p);
    };

    pts[0] = start;
    vals[0] = eval(start);
    for (std::size_t i = 0; i < N; ++i) {
        pts[i + 1] = start;
        pts[i + 1][i] += step;
        vals[i + 1] = eval(pts[i + 1]);
    }

    std::array<std::size_t, N + 1> order;
    auto along = [](const Point& from, const Point& to, double coef) {
        Point out;
        for (std::size_t k = 0; k < N; ++k) out[k] = from[k] + coef * (to[k] - from[k]);
        return out;
    };

    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[N - 1];
        if (vals[worst] - vals[best] <= ftol * (1.0 + std::abs(vals[best]))) {
            break;
        }

        Point centroid{};
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[i][k] / static_cast<double>(N);
        }

        const Point reflected = along(centroid, pts[worst], -1.0);
        const double fr = eval(reflected);
        if (fr < vals[best]) {
            const Point expanded = along(centroid, pts[worst], -2.0);
            const double fe = eval(expanded);
            if (fe < fr) {
                pts[worst] = expanded;
                vals[worst] = fe;
            } else {
                pts[worst] = reflected;
                vals[worst] = fr;
            }
            continue;
        }
        if (fr < vals[second_worst]) {
            pts[worst] = reflected;
            vals[worst] = fr;
            continue;
        }
        const bool outside = fr < vals[worst];
        const Point contracted = outside ? along(centroid, reflected, 0.5) : along(centroid, pts[worst], 0.5);
        const double fc = eval(contracted);
        if (fc < std::min(fr, vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= N; ++i) {
            if (i == best) continue;
            pts[i] = along(pts[best], pts[i], 0.5);
            vals[i] = eval(pts[i]);
        }
    }

    const auto it = std::min_element(vals.begin(), vals.end());
    const auto idx = static_cast<std::size_t>(it - vals.begin());
    return {pts[idx], vals[idx], evals};
}

} // namespace gpolar::detail
