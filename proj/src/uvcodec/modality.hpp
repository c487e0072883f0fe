/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/modality.hpp
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
#include "core/error.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tbgan::uvcodec {

enum class Modality { texture, normals, shape };

const char* modality_name(Modality m);
Modality modality_from_name(const std::string& name);

/// Dense raster over the UV chart. `data` is H*W*C float32, row-major with
/// interleaved channels; row y spans v in [y/H, (y+1)/H). `mask` marks pixels
/// whose center is covered by a triangle; uncovered pixels hold dilated
/// values but stay false in the mask.
struct ModalityMap {
    int height = 0;
    int width = 0;
    int channels = 3;
    std::vector<float> data;
    std::vector<std::uint8_t> mask; // one byte per pixel in memory, bit-packed on disk
    Modality modality = Modality::texture;
    std::array<float, 2> value_range{-1.0f, 1.0f};

    float& at(int y, int x, int c) { return data[(std::size_t(y) * width + x) * channels + c]; }
    float at(int y, int x, int c) const { return data[(std::size_t(y) * width + x) * channels + c]; }
    bool covered(int y, int x) const { return mask[std::size_t(y) * width + x] != 0; }

    double coverage_fraction() const;

    /// Power-of-two dims, buffer sizes, nonzero coverage.
    void validate() const;
};

/// Three co-registered maps plus the optional conditioning label: one
/// training or generation sample.
struct ModalityBundle {
    ModalityMap texture;
    ModalityMap normals;
    ModalityMap shape;
    std::optional<arch::ExpressionLabel> expression;
    std::string topology_id;

    int height() const { return texture.height; }
    int width() const { return texture.width; }

    /// Shared mask/resolution, shape in [-1,1], unit normals within 1e-3 on
    /// covered pixels, valid expression label when present.
    void validate() const;
};

bool bit_equal(const ModalityMap& a, const ModalityMap& b);
bool bit_equal(const ModalityBundle& a, const ModalityBundle& b);

/// Channel concatenation in the fixed order [texture | normals | shape],
/// H*W*9 float32 interleaved.
std::vector<float> bundle_concat(const ModalityBundle& bundle);

/// Inverse of bundle_concat; mask, ranges, expression and topology come from
/// `like`. bundle_split(bundle_concat(b), b) == b bit-exact.
ModalityBundle bundle_split(const std::vector<float>& data, const ModalityBundle& like);

} // namespace tbgan::uvcodec
