/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/detail_normals.hpp
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

#include "uvcodec/modality.hpp"

namespace tbgan::uvcodec {

/// Tileable high-frequency perturbation map, (x, y) offsets in the first two
/// channels; the third channel is carried but ignored by compositing.
struct DetailMap {
    int height = 0;
    int width = 0;
    std::vector<float> data; // H*W*3 interleaved
};

/// Composites a tiled detail map onto a normals map. tile_factor copies of
/// the detail span each axis, so the map dimensions must equal detail size
/// times tile_factor. Per pixel with weight w > 0, the (x, y) detail
/// components scaled by w are added along the base normal's tangent frame and
/// the result is renormalized; pixels with weight exactly 0 are copied
/// bit-for-bit.
ModalityMap apply_detail_normals(const ModalityMap& normals, const DetailMap& detail,
                                 const std::vector<float>& weight, int tile_factor);

} // namespace tbgan::uvcodec
