/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/loop.hpp
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

#include "arch/checkpoint.hpp"
#include "arch/inference.hpp"
#include "train/adam.hpp"
#include "train/losses.hpp"

#include <filesystem>
#include <functional>
#include <optional>

namespace tbgan::training {

/// One real sample prepared for the current growth state: channel-planar
/// float maps at the level resolution plus the conditioning label.
struct TrainingSample {
    PlanarSample<float> maps; // label filled in maps.label as well
    arch::ExpressionLabel label;
};

/// Mutable training session: both networks, optimizer states, the stream of
/// randomness, and progress counters. Single logical thread of control.
struct Trainer {
    arch::Generator generator;
    arch::Discriminator discriminator;
    TrainConfig config;
    Adam g_opt, d_opt;
    Rng rng;
    long long step = 0;
    long long images_seen = 0;

    static Trainer create(const arch::ArchConfig& arch_cfg, const TrainConfig& train_cfg);
};

/// One critic update: adversarial term, weighted gradient penalty and
/// classification on real + detached fakes. Touches only the discriminator's
/// parameters and optimizer state. Fills the d-side fields of the report.
void critic_update(Trainer& trainer, std::span<const TrainingSample> batch,
                   const arch::GrowthState& growth, LossReport& report);

/// One generator update through the frozen critic (adversarial +
/// classification). Touches only the generator's parameters and optimizer
/// state. Fills the g-side fields of the report.
void generator_update(Trainer& trainer, std::span<const TrainingSample> batch,
                      const arch::GrowthState& growth, LossReport& report);

/// One alternation: n_critic discriminator updates (adversarial + weighted
/// penalty + classification) followed by one generator update. Only the
/// network being updated changes in each phase. Deterministic given the
/// trainer's RNG state. Throws numeric_divergence when any loss goes
/// non-finite.
LossReport train_step(Trainer& trainer, std::span<const TrainingSample> batch,
                      const arch::GrowthState& growth);

/// Abstract source of real bundles (the data module provides one).
class BatchProvider {
public:
    virtual ~BatchProvider() = default;
    virtual std::size_t size() const = 0;
    virtual const uvcodec::ModalityBundle& bundle(std::size_t index) const = 0;
};

/// Downsamples a bundle to the growth level (repeated 2x2 averaging) and
/// applies the progressive fade to the real data (blend between the level
/// image and its own down-up resampling) so real and generated distributions
/// transition together.
TrainingSample prepare_sample(const uvcodec::ModalityBundle& bundle, const arch::ArchConfig& cfg,
                              const arch::GrowthState& growth);

struct RunResult {
    LossReport last_report;
    long long steps = 0;
    std::filesystem::path last_checkpoint;
    std::vector<std::pair<long long, double>> wasserstein_trace; // (step, estimate)
};

/// Full loop: growth schedule from images_seen, random batches from the
/// provider, CSV logging (step, level, blend, losses), periodic + final
/// checkpoints of both networks with optimizer state. On numeric divergence
/// the error message names the last good checkpoint.
RunResult run_training(Trainer& trainer, const BatchProvider& data, const std::filesystem::path& out_dir,
                       const std::function<void(long long, const LossReport&)>& on_step = {},
                       const std::filesystem::path& checkpoint_root = {});

} // namespace tbgan::training
