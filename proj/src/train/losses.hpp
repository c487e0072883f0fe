/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/losses.hpp
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

#include "arch/expression_label.hpp"
#include "arch/graphs.hpp"
#include "core/rng.hpp"
#include "train/config.hpp"

#include <functional>
#include <span>

namespace tbgan::training {

/// Critic abstraction so the loss algebra can be exercised with hand-built
/// critics (linear forms, tiny networks) as well as the real discriminator.
template <typename T>
struct CriticOut {
    nn::Var score = -1;
    nn::Var logits = -1; // optional; -1 when the critic has no class head
};

template <typename T>
using Critic = std::function<CriticOut<T>(nn::Tape<T>&, const arch::BranchVars&)>;

/// One sample's raw maps, channel-planar (3, R*R) each, plus its label.
template <typename T>
struct PlanarSample {
    std::vector<T> texture, normals, shape;
    std::vector<T> label;
};

/// Critic built from a discriminator's graph at a growth state, sharing the
/// given parameter leaves.
template <typename T>
Critic<T> critic_from(const arch::Discriminator& d, const arch::TapeLeaves<T>* leaves,
                      const arch::GrowthState& growth);

/// Gradient-penalty node: per sample draws alpha ~ U[0,1], forms the mixed
/// input alpha*fake + (1-alpha)*real jointly over all nine channels,
/// differentiates the critic's score w.r.t. the mixed input and penalizes
/// (||grad||_2 - 1)^2; returns the batch mean as a tape node (differentiable
/// again w.r.t. the critic parameters).
template <typename T>
nn::Var gradient_penalty_node(nn::Tape<T>& tape, const Critic<T>& critic,
                              std::span<const PlanarSample<T>> real,
                              std::span<const PlanarSample<T>> fake, Rng& rng);

/// Scalar wrapper over gradient_penalty_node. Throws numeric_divergence on a
/// non-finite result.
double gradient_penalty(const arch::Discriminator& d, std::span<const PlanarSample<float>> real,
                        std::span<const PlanarSample<float>> fake, const arch::GrowthState& growth,
                        Rng& rng);

/// Full loss decomposition for a (real, fake) pair under an arbitrary critic:
/// g_adv = mean(-score(fake)), d_adv = mean(score(fake)) - mean(score(real))
/// + lambda * GP, classification terms via softmax cross entropy when the
/// critic has logits. Means throughout, so the report is invariant under
/// batch duplication.
template <typename T>
LossReport adversarial_report_with_critic(nn::Tape<T>& tape, const Critic<T>& critic,
                                          std::span<const PlanarSample<T>> real,
                                          std::span<const PlanarSample<T>> fake, double lambda_gp,
                                          Rng& rng);

/// The module-level op: fakes are generated from (z, p) with the given
/// generator at the growth state, then scored against the real batch.
LossReport adversarial_losses(const arch::Discriminator& d, const arch::Generator& g,
                              std::span<const PlanarSample<float>> real,
                              std::span<const std::vector<double>> z_batch,
                              std::span<const arch::ExpressionLabel> p_batch, double lambda_gp,
                              const arch::GrowthState& growth, Rng& rng);

/// Softmax cross entropy H(p, softmax(logits)) averaged over the batch:
/// d_class = mean over real + mean over fake, g_class = mean over fake
/// (negative-log-likelihood convention; both terms are added to the
/// respective minimized losses).
std::pair<double, double>
expression_condition_losses(const std::vector<std::vector<double>>& real_logits,
                            const std::vector<std::vector<double>>& fake_logits,
                            const std::vector<arch::ExpressionLabel>& labels);

/// Stable scalar cross entropy used by the public op and its tests.
double cross_entropy(const std::vector<double>& logits, const std::vector<double>& label);

} // namespace tbgan::training
