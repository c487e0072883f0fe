/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/synthesis/synthesis.hpp
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

#include "arch/inference.hpp"
#include "geometry/obj_io.hpp"

namespace tbgan::synthesis {

struct GeneratedFace {
    arch::LatentCode code;
    uvcodec::ModalityBundle bundle;
};

/// Draws n latents i.i.d. from N(0, I) with the given seed and evaluates the
/// generator at terminal growth. Expressions: one shared label, or one per
/// sample. Codes are returned alongside bundles for reproducibility.
std::vector<GeneratedFace> sample_faces(const arch::Generator& g, int n,
                                        const std::vector<arch::ExpressionLabel>& expressions,
                                        std::uint64_t seed);

/// Evenly spaced linear interpolation z_k = z1 + (k/(steps-1))(z2 - z1);
/// endpoints are bit-identical to direct generation from z1 and z2.
std::vector<uvcodec::ModalityBundle> interpolate_identities(const arch::Generator& g,
                                                            const arch::LatentCode& z1,
                                                            const arch::LatentCode& z2, int steps,
                                                            const arch::ExpressionLabel& p);

struct FaceMesh {
    geometry::Mesh mesh;
    std::vector<Eigen::Vector3d> vertex_normals; // unit length
    std::vector<Eigen::Vector3d> vertex_colors;
};

/// Inverse of the UV extraction: samples the shape map at each vertex's UV
/// coordinate, rescales by 1/scale_factor back to model units and assembles
/// the template's face array; normals are sampled and renormalized, texture
/// sampled as vertex colors. The face array is never altered.
FaceMesh bundle_to_mesh(const uvcodec::ModalityBundle& bundle, const geometry::UVLayout& layout,
                        const geometry::Mesh& tmpl, double scale_factor);

} // namespace tbgan::synthesis
