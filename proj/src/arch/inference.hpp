/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/inference.hpp
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
#include "uvcodec/modality.hpp"

namespace tbgan::arch {

/// Deterministic float32 generator evaluation at the growth state's
/// resolution. The returned bundle is made contract-clean for downstream
/// consumers: the mask is fully covered, shape values are clamped to [-1,1]
/// and normal pixels renormalized to unit length. Raw (unclamped) branch
/// outputs are what training sees via generator_graph.
uvcodec::ModalityBundle generator_forward(const Generator& g, const LatentCode& z,
                                          const ExpressionLabel& label, const GrowthState& growth);

struct DiscriminatorScore {
    double score = 0.0;
    std::vector<double> logits;
};

/// Deterministic float32 critic evaluation of a bundle at the growth state's
/// resolution.
DiscriminatorScore discriminator_forward(const Discriminator& d, const uvcodec::ModalityBundle& bundle,
                                         const GrowthState& growth);

/// (3, H*W) channel-planar view used by the network graphs.
template <typename T>
std::vector<T> map_to_planar(const uvcodec::ModalityMap& map);

/// Inverse of map_to_planar for generated maps (fully covered mask).
uvcodec::ModalityMap planar_to_map(const std::vector<float>& planar, int resolution,
                                   uvcodec::Modality modality);

} // namespace tbgan::arch
