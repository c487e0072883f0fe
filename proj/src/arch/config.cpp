/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/config.cpp
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
#include "arch/config.hpp"

#include "core/error.hpp"

#include <cmath>

namespace tbgan::arch {

void ArchConfig::validate() const {
    require(trunk_depth > 0 && trunk_depth < layers, errc::invalid_argument,
            "arch config: require 0 < trunk_depth < layers");
    require(base_resolution >= 2 && (base_resolution & (base_resolution - 1)) == 0, errc::invalid_argument,
            "arch config: base_resolution must be a power of two >= 2");
    require(latent_dim >= 1, errc::invalid_argument, "arch config: latent_dim must be >= 1");
    require(n_expressions >= 1, errc::invalid_argument, "arch config: n_expressions must be >= 1");
    require(int(channel_schedule.size()) == layers + 1, errc::invalid_argument,
            "arch config: channel_schedule needs layers+1 entries");
    for (int c : channel_schedule)
        require(c >= 1, errc::invalid_argument, "arch config: channel counts must be >= 1");
}

std::vector<int> ArchConfig::default_schedule(int layers, int max_channels, int floor_channels) {
    std::vector<int> schedule;
    for (int level = 0; level <= layers; ++level)
        schedule.push_back(std::max(floor_channels, max_channels >> level));
    return schedule;
}

json ArchConfig::to_json() const {
    json doc;
    doc["layers"] = layers;
    doc["trunk_depth"] = trunk_depth;
    doc["base_resolution"] = base_resolution;
    doc["latent_dim"] = latent_dim;
    doc["channel_schedule"] = channel_schedule;
    doc["n_expressions"] = n_expressions;
    doc["leaky_slope"] = leaky_slope;
    doc["use_wscale"] = use_wscale;
    doc["normalize_latents"] = normalize_latents;
    doc["pixelnorm_eps"] = pixelnorm_eps;
    doc["label_gain"] = label_gain;
    return doc;
}

ArchConfig ArchConfig::from_json(const json& doc) {
    ArchConfig c;
    c.layers = json_field(doc, "layers", "arch config");
    c.trunk_depth = json_field(doc, "trunk_depth", "arch config");
    c.base_resolution = doc.value("base_resolution", 4);
    c.latent_dim = json_field(doc, "latent_dim", "arch config");
    if (doc.contains("channel_schedule") && !doc["channel_schedule"].is_null())
        c.channel_schedule = doc["channel_schedule"].get<std::vector<int>>();
    else
        c.channel_schedule = default_schedule(c.layers, doc.value("max_channels", 256));
    c.n_expressions = doc.value("n_expressions", 7);
    c.leaky_slope = doc.value("leaky_slope", 0.2);
    c.use_wscale = doc.value("use_wscale", true);
    c.normalize_latents = doc.value("normalize_latents", true);
    c.pixelnorm_eps = doc.value("pixelnorm_eps", 1e-8);
    c.label_gain = doc.value("label_gain", 1.0);
    c.validate();
    return c;
}

GrowthState growth_schedule(long long images_seen, const ArchConfig& config, long long fade_images,
                            long long stable_images) {
    require(images_seen >= 0 && fade_images >= 0 && stable_images >= 0, errc::invalid_argument,
            "growth_schedule: counters must be non-negative");
    GrowthState state;
    long long pos = images_seen;
    for (int level = 0; level < config.layers; ++level) {
        if (pos < stable_images)
            return {level, 1.0};
        pos -= stable_images;
        if (pos < fade_images)
            return {level + 1, fade_images > 0 ? double(pos) / double(fade_images) : 1.0};
        pos -= fade_images;
    }
    return {config.layers, 1.0};
}

void LatentCode::validate() const {
    for (double v : z)
        require(std::isfinite(v), errc::invalid_argument, "latent code: non-finite value");
}

} // namespace tbgan::arch
