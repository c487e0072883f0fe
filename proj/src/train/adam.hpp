/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/adam.hpp
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

#include "arch/model.hpp"
#include "train/config.hpp"

#include <span>

namespace tbgan::training {

/// Adaptive-moment optimizer over a ParamStore. Moments and masters stay in
/// float64; gradients arrive in whatever precision the training tape used.
class Adam {
public:
    void init(std::size_t n_scalars) {
        m_.assign(n_scalars, 0.0);
        v_.assign(n_scalars, 0.0);
        t_ = 0;
    }

    bool initialized() const { return !m_.empty(); }
    long long steps_taken() const { return t_; }

    /// grad_flat is the concatenation of per-parameter gradients in store
    /// order. lr == 0 leaves parameters bit-identical (moments still advance).
    void step(arch::ParamStore& params, std::span<const double> grad_flat, const TrainConfig& cfg) {
        require(grad_flat.size() == m_.size() && params.total_scalars() == m_.size(),
                errc::contract_violation, "adam: gradient size mismatch");
        ++t_;
        const double b1 = cfg.adam_beta1, b2 = cfg.adam_beta2;
        const double corr1 = 1.0 - std::pow(b1, double(t_));
        const double corr2 = 1.0 - std::pow(b2, double(t_));
        std::size_t k = 0;
        for (std::size_t i = 0; i < params.count(); ++i) {
            auto& value = params.at(int(i)).value;
            for (double& w : value) {
                const double g = grad_flat[k];
                m_[k] = b1 * m_[k] + (1.0 - b1) * g;
                v_[k] = b2 * v_[k] + (1.0 - b2) * g * g;
                if (cfg.learning_rate != 0.0) {
                    const double mhat = m_[k] / corr1;
                    const double vhat = v_[k] / corr2;
                    w -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
                }
                ++k;
            }
        }
    }

    /// Serialized as [t, m..., v...] for checkpoint blobs.
    std::vector<double> serialize() const {
        std::vector<double> out;
        out.reserve(1 + 2 * m_.size());
        out.push_back(double(t_));
        out.insert(out.end(), m_.begin(), m_.end());
        out.insert(out.end(), v_.begin(), v_.end());
        return out;
    }

    void deserialize(std::span<const double> blob, std::size_t n_scalars) {
        require(blob.size() == 1 + 2 * n_scalars, errc::format_error, "adam: bad state blob size");
        t_ = (long long)(blob[0]);
        m_.assign(blob.begin() + 1, blob.begin() + 1 + std::ptrdiff_t(n_scalars));
        v_.assign(blob.begin() + 1 + std::ptrdiff_t(n_scalars), blob.end());
    }

private:
    std::vector<double> m_, v_;
    long long t_ = 0;
};

} // namespace tbgan::training
