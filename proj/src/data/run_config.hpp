/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/run_config.hpp
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
#include "train/config.hpp"

#include <filesystem>

namespace tbgan::data {

inline constexpr int kRunConfigSchemaVersion = 1;

/// One JSON document driving a run: architecture + training hyperparameters,
/// paths, and mode flags. Hashing goes through the normalized document, so it
/// is stable under key reordering and changes exactly when a semantic field
/// changes. TBGAN_DETERMINISTIC=1 in the environment forces deterministic
/// mode at load time.
struct RunConfig {
    arch::ArchConfig arch;
    training::TrainConfig train;
    std::filesystem::path dataset_dir;
    std::filesystem::path out_dir;
    std::filesystem::path checkpoint_dir;
    bool deterministic = true;
    bool float64_verify = false;

    json to_json() const;
    static RunConfig from_json(const json& doc);
    static RunConfig load(const std::filesystem::path& path);

    std::uint64_t hash() const { return json_hash(to_json()); }

    /// Referenced input paths must exist; output directories are created by
    /// the commands themselves.
    void validate_paths(bool need_dataset) const;
};

/// Writes out_dir/run.json: command, config hash, seed, build version,
/// timings and produced artifacts. Deterministic mode zeroes the wall-clock
/// field so seeded runs stay bit-identical.
void write_run_record(const std::filesystem::path& out_dir, const std::string& command,
                      std::uint64_t config_hash, std::uint64_t seed,
                      const std::vector<std::string>& outputs, double elapsed_ms, bool deterministic,
                      const json& extra = json::object());

} // namespace tbgan::data
