/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/model.hpp
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

#include "arch/config.hpp"
#include "core/rng.hpp"

#include <map>
#include <string>
#include <vector>

namespace tbgan::arch {

/// One named parameter tensor. Weights carry the He constant applied at
/// runtime (equalized learning rate); master values live in float64 and are
/// cast to the compute precision when a graph is built.
struct Param {
    std::string name;
    int rows = 0;
    int cols = 0;
    double runtime_scale = 1.0;
    std::vector<double> value;
};

class ParamStore {
public:
    int add(std::string name, int rows, int cols, double runtime_scale, Rng& rng, bool zero_init);

    int index_of(const std::string& name) const;
    const Param& at(int idx) const { return params_[std::size_t(idx)]; }
    Param& at(int idx) { return params_[std::size_t(idx)]; }
    const Param& named(const std::string& name) const { return at(index_of(name)); }

    std::size_t count() const { return params_.size(); }
    std::size_t total_scalars() const;

    /// FNV over the raw value bytes; used by tests to prove phase isolation.
    std::uint64_t values_checksum() const;

private:
    std::vector<Param> params_;
    std::map<std::string, int> index_;
};

/// Trunk-branch generator: shared trunk of depth d from the (z | label)
/// input, then three branch stacks (texture, normals, shape) of L - d
/// upsampling stages; per-branch to-RGB heads exist at every level for
/// progressive fade-in.
struct Generator {
    ArchConfig config;
    ParamStore params;
};

/// Mirrored discriminator: per-modality branch encoders whose activations are
/// concatenated into a trunk of depth d, ending in a scalar score head and an
/// n_expressions-logit classification head.
struct Discriminator {
    ArchConfig config;
    ParamStore params;
};

/// Deterministic construction: identical (config, seed) gives bit-identical
/// parameters; the parameter set is a pure function of the config.
Generator build_generator(const ArchConfig& config, std::uint64_t seed);
Discriminator build_discriminator(const ArchConfig& config, std::uint64_t seed);

inline constexpr const char* kBranchNames[3] = {"texture", "normals", "shape"};

} // namespace tbgan::arch
