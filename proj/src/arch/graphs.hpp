/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/graphs.hpp
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
#include "core/tape.hpp"

namespace tbgan::arch {

/// Parameter leaves of one tape, index-aligned with the ParamStore. Samples
/// of a batch share the leaves, so adjoints accumulate across the batch.
template <typename T>
struct TapeLeaves {
    std::vector<nn::Var> vars;
    nn::Var operator[](int idx) const { return vars[std::size_t(idx)]; }
};

template <typename T>
TapeLeaves<T> make_param_leaves(nn::Tape<T>& tape, const ParamStore& store);

/// One sample's three generated maps, each (3, R*R) channel-planar.
struct BranchVars {
    nn::Var texture = -1;
    nn::Var normals = -1;
    nn::Var shape = -1;
};

struct DiscVars {
    nn::Var score = -1;  // (1,1)
    nn::Var logits = -1; // (n_expressions, 1)
};

/// Builds the generator forward pass for one sample at the growth state's
/// resolution. `z` is (latent_dim, 1), `label` (n_expressions, 1).
template <typename T>
BranchVars generator_graph(nn::Tape<T>& tape, const Generator& g, const TapeLeaves<T>& leaves, nn::Var z,
                           nn::Var label, const GrowthState& growth);

/// Builds the discriminator forward pass for one sample whose three maps are
/// (3, R*R) at the growth state's resolution.
template <typename T>
DiscVars discriminator_graph(nn::Tape<T>& tape, const Discriminator& d, const TapeLeaves<T>& leaves,
                             const BranchVars& input, const GrowthState& growth);

} // namespace tbgan::arch
