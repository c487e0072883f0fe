/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/normals.cpp
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
#include "geometry/normals.hpp"

#include <Eigen/Geometry>

namespace tbgan::geometry {

VertexNormals compute_vertex_normals(const Mesh& mesh) {
    VertexNormals out;
    out.normals.assign(mesh.vertices.size(), Eigen::Vector3d::Zero());

    // The raw cross product of two triangle edges has magnitude 2*area, so
    // accumulating it directly is the area weighting.
    for (const auto& f : mesh.faces) {
        const Eigen::Vector3d& a = mesh.vertices[std::size_t(f[0])];
        const Eigen::Vector3d& b = mesh.vertices[std::size_t(f[1])];
        const Eigen::Vector3d& c = mesh.vertices[std::size_t(f[2])];
        const Eigen::Vector3d fn = (b - a).cross(c - a);
        for (int k = 0; k < 3; ++k)
            out.normals[std::size_t(f[std::size_t(k)])] += fn;
    }

    for (auto& n : out.normals) {
        const double len = n.norm();
        if (len > 1e-20) {
            n /= len;
        } else {
            n = Eigen::Vector3d(0.0, 0.0, 1.0);
            ++out.fallback_count;
        }
    }
    return out;
}

} // namespace tbgan::geometry
