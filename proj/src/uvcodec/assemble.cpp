/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/assemble.cpp
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
#include "uvcodec/assemble.hpp"

#include "geometry/normals.hpp"
#include "uvcodec/raster.hpp"

#include <cmath>

namespace tbgan::uvcodec {

namespace {

void renormalize_normal_pixels(ModalityMap& map) {
    for (int y = 0; y < map.height; ++y)
        for (int x = 0; x < map.width; ++x) {
            double sq = 0.0;
            for (int c = 0; c < 3; ++c)
                sq += double(map.at(y, x, c)) * map.at(y, x, c);
            const double len = std::sqrt(sq);
            if (len > 1e-12) {
                for (int c = 0; c < 3; ++c)
                    map.at(y, x, c) = float(map.at(y, x, c) / len);
            } else {
                map.at(y, x, 0) = 0.0f;
                map.at(y, x, 1) = 0.0f;
                map.at(y, x, 2) = 1.0f;
            }
        }
}

} // namespace

ModalityBundle assemble_bundle(const geometry::Mesh& normalized_mesh, const geometry::UVLayout& layout,
                               const std::vector<Eigen::Vector3d>& vertex_colors, int resolution,
                               std::optional<arch::ExpressionLabel> expression) {
    const int n = normalized_mesh.vertex_count();
    require(int(vertex_colors.size()) == n, errc::invalid_argument,
            "assemble_bundle: color count mismatch");
    require(layout.topology_id == normalized_mesh.topology_id, errc::contract_violation,
            "assemble_bundle: layout/mesh topology mismatch");

    Eigen::MatrixXd shape_values(n, 3), color_values(n, 3), normal_values(n, 3);
    const auto vn = geometry::compute_vertex_normals(normalized_mesh);
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) {
            shape_values(i, c) = normalized_mesh.vertices[std::size_t(i)](c);
            color_values(i, c) = vertex_colors[std::size_t(i)](c);
            normal_values(i, c) = vn.normals[std::size_t(i)](c);
        }

    ModalityBundle bundle;
    bundle.topology_id = normalized_mesh.topology_id;
    bundle.texture = rasterize_to_uv(color_values, normalized_mesh, layout, resolution, Modality::texture);
    bundle.normals = rasterize_to_uv(normal_values, normalized_mesh, layout, resolution, Modality::normals);
    bundle.shape = rasterize_to_uv(shape_values, normalized_mesh, layout, resolution, Modality::shape);
    renormalize_normal_pixels(bundle.normals);
    bundle.expression = std::move(expression);
    bundle.validate();
    return bundle;
}

} // namespace tbgan::uvcodec
