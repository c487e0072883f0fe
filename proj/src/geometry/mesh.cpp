/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/mesh.cpp
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
#include "geometry/mesh.hpp"

#include "core/error.hpp"

#include <Eigen/Geometry>

#include <sstream>

namespace tbgan::geometry {

Eigen::Vector3d Mesh::centroid() const {
    Eigen::Vector3d c = Eigen::Vector3d::Zero();
    for (const auto& v : vertices)
        c += v;
    return vertices.empty() ? c : Eigen::Vector3d(c / double(vertices.size()));
}

void Mesh::validate(bool require_nonzero_areas) const {
    const int n = vertex_count();
    for (const auto& f : faces) {
        for (int idx : f)
            require(idx >= 0 && idx < n, errc::contract_violation,
                    "face index " + std::to_string(idx) + " outside [0, " + std::to_string(n) + ")");
        if (require_nonzero_areas) {
            const Eigen::Vector3d e1 = vertices[std::size_t(f[1])] - vertices[std::size_t(f[0])];
            const Eigen::Vector3d e2 = vertices[std::size_t(f[2])] - vertices[std::size_t(f[0])];
            require(e1.cross(e2).norm() > 0.0, errc::degenerate_input, "template face with zero area");
        }
    }
}

bool Mesh::same_topology(const Mesh& other) const {
    return topology_id == other.topology_id && vertex_count() == other.vertex_count() &&
           faces == other.faces;
}

std::string derive_topology_id(int vertex_count, const std::vector<std::array<int, 3>>& faces) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffu;
            h *= 0x100000001b3ULL;
        }
    };
    mix(std::uint64_t(vertex_count));
    for (const auto& f : faces)
        for (int idx : f)
            mix(std::uint64_t(idx));
    std::ostringstream os;
    os << "topo-" << std::hex << h;
    return os.str();
}

void ensure_topology_id(Mesh& mesh) {
    if (mesh.topology_id.empty())
        mesh.topology_id = derive_topology_id(mesh.vertex_count(), mesh.faces);
}

} // namespace tbgan::geometry
