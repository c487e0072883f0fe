/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/assemble.hpp
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

namespace tbgan::uvcodec {

/// Rasterizes one GPA-aligned, [-1,1]-normalized mesh into a full bundle:
/// shape from vertex positions, normals from area-weighted vertex normals
/// (renormalized per pixel after barycentric mixing), texture from per-vertex
/// colors in [-1,1]. All three maps share one mask by construction.
ModalityBundle assemble_bundle(const geometry::Mesh& normalized_mesh, const geometry::UVLayout& layout,
                               const std::vector<Eigen::Vector3d>& vertex_colors, int resolution,
                               std::optional<arch::ExpressionLabel> expression = std::nullopt);

} // namespace tbgan::uvcodec
