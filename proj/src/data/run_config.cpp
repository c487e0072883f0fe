/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/run_config.cpp
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
#include "data/run_config.hpp"

#include "core/error.hpp"

#include <cstdlib>

#ifndef TBGAN_BUILD_VERSION
#define TBGAN_BUILD_VERSION "unknown"
#endif

namespace tbgan::data {

json RunConfig::to_json() const {
    json doc;
    doc["schema_version"] = kRunConfigSchemaVersion;
    doc["arch"] = arch.to_json();
    doc["train"] = train.to_json();
    doc["paths"] = {{"dataset_dir", dataset_dir.string()},
                    {"out_dir", out_dir.string()},
                    {"checkpoint_dir", checkpoint_dir.string()}};
    doc["mode"] = {{"deterministic", deterministic}, {"float64_verify", float64_verify}};
    return doc;
}

RunConfig RunConfig::from_json(const json& doc) {
    require(json_field(doc, "schema_version", "run config") == kRunConfigSchemaVersion,
            errc::invalid_argument, "run config: unsupported schema version");
    RunConfig cfg;
    cfg.arch = arch::ArchConfig::from_json(json_field(doc, "arch", "run config"));
    cfg.train = training::TrainConfig::from_json(json_field(doc, "train", "run config"));
    const json& paths = json_field(doc, "paths", "run config");
    cfg.dataset_dir = json_field(paths, "dataset_dir", "run config paths").get<std::string>();
    cfg.out_dir = json_field(paths, "out_dir", "run config paths").get<std::string>();
    cfg.checkpoint_dir = paths.value("checkpoint_dir", (cfg.out_dir / "checkpoints").string());
    if (doc.contains("mode")) {
        cfg.deterministic = doc["mode"].value("deterministic", true);
        cfg.float64_verify = doc["mode"].value("float64_verify", false);
    }
    const char* env = std::getenv("TBGAN_DETERMINISTIC");
    if (env && std::string(env) == "1")
        cfg.deterministic = true;
    return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    return from_json(load_json(path));
}

void RunConfig::validate_paths(bool need_dataset) const {
    if (need_dataset)
        require(std::filesystem::exists(dataset_dir / "manifest.json"), errc::invalid_argument,
                "run config: dataset not found at " + dataset_dir.string());
}

void write_run_record(const std::filesystem::path& out_dir, const std::string& command,
                      std::uint64_t config_hash, std::uint64_t seed,
                      const std::vector<std::string>& outputs, double elapsed_ms, bool deterministic,
                      const json& extra) {
    std::filesystem::create_directories(out_dir);
    json doc;
    doc["command"] = command;
    doc["config_hash"] = hash_hex(config_hash);
    doc["seed"] = seed;
    doc["version"] = TBGAN_BUILD_VERSION;
    doc["deterministic"] = deterministic;
    doc["timings_ms"] = deterministic ? 0.0 : elapsed_ms;
    doc["outputs"] = outputs;
    for (const auto& [key, value] : extra.items())
        doc[key] = value;
    save_json(out_dir / "run.json", doc);
}

} // namespace tbgan::data
