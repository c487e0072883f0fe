/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/detail_normals.cpp
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
#include "uvcodec/detail_normals.hpp"

#include <Eigen/Geometry>

#include <cmath>

namespace tbgan::uvcodec {

ModalityMap apply_detail_normals(const ModalityMap& normals, const DetailMap& detail,
                                 const std::vector<float>& weight, int tile_factor) {
    require(normals.modality == Modality::normals, errc::invalid_argument,
            "apply_detail_normals: base map must be a normals map");
    require(normals.channels == 3, errc::invalid_argument, "apply_detail_normals: need 3 channels");
    require(tile_factor >= 1, errc::invalid_argument, "apply_detail_normals: tile_factor must be >= 1");
    require(detail.height > 0 && detail.width > 0 &&
                detail.data.size() == std::size_t(detail.height) * detail.width * 3,
            errc::invalid_argument, "apply_detail_normals: malformed detail map");
    require(normals.height == detail.height * tile_factor && normals.width == detail.width * tile_factor,
            errc::invalid_argument,
            "apply_detail_normals: map dimensions are not detail size times tile_factor");
    require(weight.size() == std::size_t(normals.height) * normals.width, errc::invalid_argument,
            "apply_detail_normals: weight size mismatch");

    ModalityMap out = normals;
    for (int y = 0; y < normals.height; ++y)
        for (int x = 0; x < normals.width; ++x) {
            const float w = weight[std::size_t(y) * normals.width + x];
            require(w >= 0.0f && w <= 1.0f, errc::invalid_argument,
                    "apply_detail_normals: weight outside [0,1]");
            if (w == 0.0f)
                continue; // bit-identical passthrough

            Eigen::Vector3d n(normals.at(y, x, 0), normals.at(y, x, 1), normals.at(y, x, 2));
            const double len = n.norm();
            n = len > 1e-12 ? Eigen::Vector3d(n / len) : Eigen::Vector3d(0, 0, 1);

            const Eigen::Vector3d up = std::abs(n.y()) < 0.9 ? Eigen::Vector3d(0, 1, 0)
                                                             : Eigen::Vector3d(1, 0, 0);
            const Eigen::Vector3d tangent = up.cross(n).normalized();
            const Eigen::Vector3d bitangent = n.cross(tangent);

            const int dy = y % detail.height, dx = x % detail.width;
            const double ox = detail.data[(std::size_t(dy) * detail.width + dx) * 3 + 0];
            const double oy = detail.data[(std::size_t(dy) * detail.width + dx) * 3 + 1];

            const Eigen::Vector3d perturbed = (n + double(w) * (ox * tangent + oy * bitangent)).normalized();
            for (int c = 0; c < 3; ++c)
                out.at(y, x, c) = float(perturbed(c));
        }
    return out;
}

} // namespace tbgan::uvcodec
