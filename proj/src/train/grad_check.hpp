/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/grad_check.hpp
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

#include "train/loop.hpp"

namespace tbgan::training {

/// A scalar function of a flat parameter vector with its analytic gradient.
struct DifferentiableScalar {
    std::function<double(std::span<const double>)> value;
    std::function<std::vector<double>(std::span<const double>)> gradient;
};

/// Verification harness: compares analytic directional derivatives against
/// central finite differences along n_directions random unit directions, all
/// in float64. Returns the worst relative error (denominator floored at the
/// gradient scale so a zero-gradient function reports the FD residual).
double grad_check(const DifferentiableScalar& fn, std::span<const double> params, int n_directions,
                  double step, Rng& rng);

/// Total generator loss (adversarial + weighted classification) as a float64
/// function of the generator's flat parameters; everything else (critic
/// parameters, z batch, labels, penalty mixing) is frozen from `seed`.
DifferentiableScalar generator_total_loss_fn(const arch::Generator& g, const arch::Discriminator& d,
                                             std::span<const TrainingSample> batch,
                                             const TrainConfig& cfg, const arch::GrowthState& growth,
                                             std::uint64_t seed);

/// Total discriminator loss (adversarial + weighted penalty + classification)
/// as a float64 function of the discriminator's flat parameters.
DifferentiableScalar discriminator_total_loss_fn(const arch::Generator& g, const arch::Discriminator& d,
                                                 std::span<const TrainingSample> batch,
                                                 const TrainConfig& cfg, const arch::GrowthState& growth,
                                                 std::uint64_t seed);

std::vector<double> flat_params(const arch::ParamStore& store);
void set_flat_params(arch::ParamStore& store, std::span<const double> flat);

} // namespace tbgan::training
