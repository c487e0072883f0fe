/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/expression_label.hpp
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

#include "core/error.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

namespace tbgan::arch {

/// Distribution over the universal expressions (7 in the reference setting):
/// non-negative entries summing to 1 within 1e-6.
struct ExpressionLabel {
    std::vector<double> p;

    std::size_t size() const { return p.size(); }

    static ExpressionLabel one_hot(int index, int n) {
        require(index >= 0 && index < n, errc::invalid_argument, "expression label: index out of range");
        ExpressionLabel e;
        e.p.assign(std::size_t(n), 0.0);
        e.p[std::size_t(index)] = 1.0;
        return e;
    }

    void validate() const {
        double total = 0.0;
        for (double v : p) {
            require(v >= -1e-9, errc::invalid_argument, "expression label: negative weight");
            total += v;
        }
        require(std::abs(total - 1.0) <= 1e-6, errc::invalid_argument,
                "expression label: weights must sum to 1 within 1e-6");
    }
};

} // namespace tbgan::arch
