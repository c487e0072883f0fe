/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/normals.hpp
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

namespace tbgan::geometry {

struct VertexNormals {
    std::vector<Eigen::Vector3d> normals; // unit length
    int fallback_count = 0;               // vertices with zero accumulation, assigned +z
};

/// Area-weighted vertex normals: per vertex, the normalized sum of incident
/// face normals weighted by face area (i.e. the summed edge cross products).
/// Vertices with no usable accumulation fall back to +z and are counted.
VertexNormals compute_vertex_normals(const Mesh& mesh);

} // namespace tbgan::geometry
