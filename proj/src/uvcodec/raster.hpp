/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/raster.hpp
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

#include "geometry/mesh.hpp"
#include "geometry/unwrap.hpp"
#include "uvcodec/modality.hpp"

#include <Eigen/Core>

namespace tbgan::uvcodec {

/// Rasterizes per-vertex values (N x C) over the UV chart at the given
/// power-of-two resolution. Pixel centers sit at ((x+0.5)/W, (y+0.5)/H);
/// a pixel belongs to the lowest-index triangle whose closed UV image
/// contains its center, and receives the barycentric combination of that
/// triangle's vertex values. Uncovered pixels are filled afterwards by
/// iterative nearest-covered dilation (8-neighborhood means) with the mask
/// left false.
ModalityMap rasterize_to_uv(const Eigen::MatrixXd& values, const geometry::Mesh& mesh,
                            const geometry::UVLayout& layout, int resolution, Modality modality,
                            std::array<float, 2> value_range = {-1.0f, 1.0f});

/// Bilinear lookup of the map at every layout vertex (N x C). The dilated
/// background makes taps near mask borders well defined.
Eigen::MatrixXd sample_from_uv(const ModalityMap& map, const geometry::UVLayout& layout);

} // namespace tbgan::uvcodec
