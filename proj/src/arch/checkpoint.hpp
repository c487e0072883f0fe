/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/checkpoint.hpp
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

#include <filesystem>
#include <map>

namespace tbgan::arch {

inline constexpr int kCheckpointFormatVersion = 1;

/// Checkpoint container: manifest.json plus one raw little-endian float64
/// blob per entry (parameters, optimizer state, ...). load(save(model))
/// reproduces bit-identical forward outputs.
struct Checkpoint {
    std::string kind; // "generator" or "discriminator"
    ArchConfig config;
    GrowthState growth;
    long long step = 0;
    long long images_seen = 0;
    std::map<std::string, std::vector<double>> blobs; // auxiliary state, e.g. optimizer moments
};

void save_checkpoint(const std::filesystem::path& dir, const Checkpoint& meta, const ParamStore& params);

/// Reads the manifest and parameter blob; the returned store is rebuilt from
/// the manifest's config and overwritten with the stored values.
Checkpoint load_checkpoint(const std::filesystem::path& dir, ParamStore& params_out);

Generator load_generator(const std::filesystem::path& dir, Checkpoint* meta_out = nullptr);
Discriminator load_discriminator(const std::filesystem::path& dir, Checkpoint* meta_out = nullptr);

} // namespace tbgan::arch
