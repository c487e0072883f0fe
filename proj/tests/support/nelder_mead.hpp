/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/support/nelder_mead.hpp
 *
 * Copyright 2026 The tbgan authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <functional>
#include <vector>

namespace tbgan::testing {

/// Plain Nelder-Mead simplex minimizer. Test-side oracle for "generic
/// nonlinear least squares" comparisons; no relation to the library code.
inline std::pair<std::vector<double>, double>
nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> start,
            double initial_step, int max_evals, double f_tol = 1e-14) {
    const std::size_t n = start.size();
    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        simplex[i + 1][i] += initial_step;
    for (std::size_t i = 0; i <= n; ++i)
        value[i] = f(simplex[i]);
    int evals = int(n) + 1;

    auto order = [&] {
        std::vector<std::size_t> idx(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
        std::vector<std::vector<double>> s2(n + 1);
        std::vector<double> v2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            s2[i] = simplex[idx[i]];
            v2[i] = value[idx[i]];
        }
        simplex.swap(s2);
        value.swap(v2);
    };

    while (evals < max_evals) {
        order();
        if (value[n] - value[0] < f_tol * (1.0 + std::abs(value[0])))
            break;
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                centroid[j] += simplex[i][j] / double(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j)
                p[j] = centroid[j] + coeff * (simplex[n][j] - centroid[j]);
            return p;
        };

        auto reflected = blend(-1.0);
        double fr = f(reflected);
        ++evals;
        if (fr < value[0]) {
            auto expanded = blend(-2.0);
            double fe = f(expanded);
            ++evals;
            simplex[n] = fe < fr ? expanded : reflected;
            value[n] = std::min(fe, fr);
        } else if (fr < value[n - 1]) {
            simplex[n] = reflected;
            value[n] = fr;
        } else {
            auto contracted = blend(fr < value[n] ? -0.5 : 0.5);
            double fc = f(contracted);
            ++evals;
            if (fc < std::min(fr, value[n])) {
                simplex[n] = contracted;
                value[n] = fc;
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t j = 0; j < n; ++j)
                        simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
                    value[i] = f(simplex[i]);
                    ++evals;
                }
            }
        }
    }
    order();
    return {simplex[0], value[0]};
}

} // namespace tbgan::testing
