// Copyright 2026 The entangle Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Derivative-free Nelder-Mead simplex minimization with dimension-adaptive
// coefficients (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/(2n),
// shrink 1 - 1/n), which keeps the method effective past a handful of
// parameters.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace entangle::optim {

struct NelderMeadOptions {
    int max_iters = 2000;
    double initial_step = 0.25;
    /// Stop once the best value improved by less than this over `patience` iterations.
    double stagnation_tol = 1e-12;
    int patience = 200;
    /// Stop once every vertex lies within this distance of the best vertex.
    double min_diameter = 1e-12;
};

struct NelderMeadResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    /// True when the run ended by stagnation or simplex collapse rather than
    /// by exhausting max_iters.
    bool stalled = false;
    /// Best value after each iteration (entry 0 is the starting value).
    std::vector<double> trace;
};

inline NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                                    const Eigen::VectorXd &x0,
                                    const NelderMeadOptions &opts = {}) {
    const Eigen::Index n = x0.size();
    NelderMeadResult res;
    if (n == 0) {
        res.x = x0;
        res.value = f(x0);
        res.stalled = true;
        res.trace.push_back(res.value);
        return res;
    }
    const double nd = static_cast<double>(n);
    const double alpha = 1.0;
    const double gamma = 1.0 + 2.0 / nd;
    const double rho = 0.75 - 1.0 / (2.0 * nd);
    const double sigma = 1.0 - 1.0 / nd;

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> vals(static_cast<std::size_t>(n + 1));
    for (Eigen::Index k = 0; k < n; ++k) {
        pts[static_cast<std::size_t>(k + 1)][k] += opts.initial_step;
    }
    for (std::size_t k = 0; k < pts.size(); ++k) {
        vals[k] = f(pts[k]);
    }
    std::vector<std::size_t> order(pts.size());

    auto sort_simplex = [&] {
        std::iota(order.begin(), order.end(), 0);
        std::ranges::stable_sort(order, [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    };
    sort_simplex();
    res.trace.push_back(vals[order.front()]);

    int last_improvement = 0;
    double anchor = vals[order.front()];
    int it = 0;
    for (; it < opts.max_iters; ++it) {
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t k = 0; k + 1 < order.size(); ++k) {
            centroid += pts[order[k]];
        }
        centroid /= nd;

        const Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
        const double fr = f(xr);
        if (fr < vals[best]) {
            const Eigen::VectorXd xe = centroid + gamma * (xr - centroid);
            const double fe = f(xe);
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + rho * (xr - centroid))
                                               : Eigen::VectorXd(centroid + rho * (pts[worst] - centroid));
            const double fc = f(xc);
            if (fc < (outside ? fr : vals[worst])) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 1; k < order.size(); ++k) {
                    const std::size_t idx = order[k];
                    pts[idx] = pts[best] + sigma * (pts[idx] - pts[best]);
                    vals[idx] = f(pts[idx]);
                }
            }
        }
        sort_simplex();
        const double current = vals[order.front()];
        res.trace.push_back(current);
        if (anchor - current > opts.stagnation_tol) {
            anchor = current;
            last_improvement = it + 1;
        }
        if (it + 1 - last_improvement >= opts.patience) {
            res.stalled = true;
            ++it;
            break;
        }
        double diameter = 0.0;
        for (std::size_t k = 1; k < order.size(); ++k) {
            diameter = std::max(diameter, (pts[order[k]] - pts[order.front()]).lpNorm<Eigen::Infinity>());
        }
        if (diameter < opts.min_diameter) {
            res.stalled = true;
            ++it;
            break;
        }
    }
    res.iterations = it;
    res.x = pts[order.front()];
    res.value = vals[order.front()];
    return res;
}

} // namespace entangle::optim
