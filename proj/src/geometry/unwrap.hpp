/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/unwrap.hpp
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

/// Per-vertex UV coordinates for one mesh topology, both in [0,1].
struct UVLayout {
    std::vector<std::array<double, 2>> uv;
    std::string topology_id;

    int vertex_count() const { return int(uv.size()); }
    void validate() const;
};

/// Cylindrical unwrap of the topology's canonical (GPA-aligned) template.
/// Conventions: the cylinder axis is +y through the template centroid, the
/// face front (+z) maps to u = 0.5 and the seam sits at the back (-z);
/// v grows with y. The whole chart is inset by `margin` on each side so every
/// coordinate lands strictly inside [0,1]^2 and triangle interiors survive
/// rasterization at the chart border. Radius does not affect (u,v).
/// Throws unwrap_fold if any triangle spans the back seam (u width > 0.5).
UVLayout cylindrical_unwrap(const Mesh& tmpl, double margin = 1.0 / 32.0);

} // namespace tbgan::geometry
