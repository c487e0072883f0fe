/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/obj_io.hpp
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

#include <filesystem>
#include <optional>

namespace tbgan::geometry {

struct ObjContents {
    Mesh mesh;
    std::vector<Eigen::Vector3d> colors;  // empty unless 6-component `v` lines were present
    std::optional<UVLayout> layout;       // present when per-vertex `vt` records align with `v`
};

/// Wavefront OBJ reader for `v` (3 or 6 floats), `vt` and `f` records.
/// Faces must be triangles; polygonal faces are rejected. Indices are
/// 1-based positive. Other record types are ignored.
ObjContents load_obj(const std::filesystem::path& path);

/// Writes `v` (with RGB when colors given), `vt` from the layout, and `f`
/// with texture indices when a layout is present. Coordinates use 8
/// significant digits.
void save_obj(const std::filesystem::path& path, const Mesh& mesh, const UVLayout* layout = nullptr,
              const std::vector<Eigen::Vector3d>* colors = nullptr);

} // namespace tbgan::geometry
