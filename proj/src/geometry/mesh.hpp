/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/mesh.hpp
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

#include <Eigen/Core>

#include <array>
#include <string>
#include <vector>

namespace tbgan::geometry {

/// Triangle mesh in dense correspondence: every mesh sharing a topology_id has
/// the same vertex count and face array, so vertex i means the same anatomical
/// point across the corpus.
struct Mesh {
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 3>> faces; // counter-clockwise winding
    std::string topology_id;

    int vertex_count() const { return int(vertices.size()); }
    int face_count() const { return int(faces.size()); }

    Eigen::Vector3d centroid() const;

    /// Face-index bounds, nonzero template face areas, shared-topology checks.
    void validate(bool require_nonzero_areas = false) const;

    bool same_topology(const Mesh& other) const;
};

/// Stable id derived from the face array and vertex count; meshes built from
/// the same template automatically agree.
std::string derive_topology_id(int vertex_count, const std::vector<std::array<int, 3>>& faces);

/// Assigns derive_topology_id if the mesh has none.
void ensure_topology_id(Mesh& mesh);

} // namespace tbgan::geometry
