/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/config.hpp
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

#include "core/json_util.hpp"

#include <vector>

namespace tbgan::arch {

/// Network family parameters. A generator with `layers` = L upsampling stages
/// maps the latent to base_resolution * 2^L maps; the first `trunk_depth` = d
/// stages are shared, the last L - d belong to the per-modality branches.
struct ArchConfig {
    int layers = 8;      // L
    int trunk_depth = 6; // d
    int base_resolution = 4;
    int latent_dim = 256;
    std::vector<int> channel_schedule; // channels at levels 0..L (L+1 entries)
    int n_expressions = 7;

    // Block details; defaults follow the progressive-growing recipe.
    double leaky_slope = 0.2;
    bool use_wscale = true;       // runtime He scaling of N(0,1)-initialized weights
    bool normalize_latents = true;
    double pixelnorm_eps = 1e-8;
    double label_gain = 1.0;      // scales the one-hot conditioning at the trunk input

    int resolution_at(int level) const { return base_resolution << level; }
    int output_resolution() const { return resolution_at(layers); }
    int channels_at(int level) const { return channel_schedule[std::size_t(level)]; }

    void validate() const;

    /// Halves from max_channels per level with the given floor.
    static std::vector<int> default_schedule(int layers, int max_channels = 256, int floor_channels = 16);

    json to_json() const;
    static ArchConfig from_json(const json& doc);
};

/// Progressive-growing position: `level` is the newest enabled resolution
/// stage, `blend` its fade-in weight (1 = fully stable).
struct GrowthState {
    int level = 0;
    double blend = 1.0;

    bool terminal(const ArchConfig& c) const { return level == c.layers && blend >= 1.0; }
};

/// Schedule over images seen: stabilize for stable_images at each level, then
/// fade the next level in linearly over fade_images. Zero lengths collapse
/// their phase, so (0, 0) trains at the terminal level from the start.
/// (level, blend) is lexicographically non-decreasing in images_seen.
GrowthState growth_schedule(long long images_seen, const ArchConfig& config, long long fade_images,
                            long long stable_images);

/// Gaussian latent input; sampled from N(0, I) when produced by the library.
struct LatentCode {
    std::vector<double> z;
    void validate() const;
};

} // namespace tbgan::arch
