/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/config.hpp
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

#include "core/json_util.hpp"

namespace tbgan::training {

/// WGAN-GP / AC-GAN training hyperparameters. Defaults follow the
/// progressive-growing recipe (adaptive moments with beta1 = 0).
struct TrainConfig {
    double lambda_gp = 10.0;   // gradient penalty weight
    int n_critic = 1;          // critic updates per generator update
    double learning_rate = 1e-3;
    double adam_beta1 = 0.0;
    double adam_beta2 = 0.99;
    double adam_eps = 1e-8;
    double class_weight = 1.0; // weight of the auxiliary classification terms
    // Whether the critic's classification loss includes generated samples.
    // With it on, the generator and critic can route the label through an
    // off-manifold signature instead of the data's own class cue; training
    // the classifier on real samples only forces the generator to express
    // the label the way the data does.
    bool classify_fakes = true;
    int batch_size = 8;
    long long total_images = 16000;
    long long fade_images = 8000;
    long long stable_images = 8000;
    std::uint64_t seed = 0;
    long long checkpoint_interval = 500; // steps; 0 disables periodic checkpoints
    bool ema_generator = false;          // reserved; not implemented at desk scale

    void validate() const;
    json to_json() const;
    static TrainConfig from_json(const json& doc);
};

/// Per-step loss decomposition. d_adv already includes the weighted gradient
/// penalty; gp_term is the raw penalty mean.
struct LossReport {
    double g_adv = 0.0;
    double d_adv = 0.0;
    double gp_term = 0.0;
    double g_class = 0.0;
    double d_class = 0.0;
    double wasserstein_estimate = 0.0;

    /// Throws numeric_divergence on non-finite terms or negative gp_term.
    void validate() const;
};

} // namespace tbgan::training
