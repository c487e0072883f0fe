/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/synthesis/synthesis.cpp
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
#include "synthesis/synthesis.hpp"

#include "core/rng.hpp"
#include "uvcodec/raster.hpp"

#include <cmath>

namespace tbgan::synthesis {

std::vector<GeneratedFace> sample_faces(const arch::Generator& g, int n,
                                        const std::vector<arch::ExpressionLabel>& expressions,
                                        std::uint64_t seed) {
    require(n >= 0, errc::invalid_argument, "sample_faces: n must be >= 0");
    require(expressions.size() == 1 || expressions.size() == std::size_t(n), errc::invalid_argument,
            "sample_faces: provide one shared expression or one per sample");
    for (const auto& e : expressions)
        e.validate();

    const arch::GrowthState terminal{g.config.layers, 1.0};
    Rng rng(seed);
    std::vector<GeneratedFace> out;
    out.reserve(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        GeneratedFace face;
        face.code.z.resize(std::size_t(g.config.latent_dim));
        for (auto& v : face.code.z)
            v = rng.normal();
        const auto& label = expressions.size() == 1 ? expressions[0] : expressions[std::size_t(i)];
        face.bundle = arch::generator_forward(g, face.code, label, terminal);
        out.push_back(std::move(face));
    }
    return out;
}

std::vector<uvcodec::ModalityBundle> interpolate_identities(const arch::Generator& g,
                                                            const arch::LatentCode& z1,
                                                            const arch::LatentCode& z2, int steps,
                                                            const arch::ExpressionLabel& p) {
    require(steps >= 2, errc::invalid_argument, "interpolate_identities: steps must be >= 2");
    require(z1.z.size() == z2.z.size() && int(z1.z.size()) == g.config.latent_dim,
            errc::contract_violation, "interpolate_identities: latent dimension mismatch");
    const arch::GrowthState terminal{g.config.layers, 1.0};

    std::vector<uvcodec::ModalityBundle> out;
    out.reserve(std::size_t(steps));
    for (int k = 0; k < steps; ++k) {
        arch::LatentCode zk;
        if (k == 0) {
            zk = z1; // endpoints evaluate the exact input latents
        } else if (k == steps - 1) {
            zk = z2;
        } else {
            const double t = double(k) / double(steps - 1);
            zk.z.resize(z1.z.size());
            for (std::size_t i = 0; i < z1.z.size(); ++i)
                zk.z[i] = z1.z[i] + t * (z2.z[i] - z1.z[i]);
        }
        out.push_back(arch::generator_forward(g, zk, p, terminal));
    }
    return out;
}

FaceMesh bundle_to_mesh(const uvcodec::ModalityBundle& bundle, const geometry::UVLayout& layout,
                        const geometry::Mesh& tmpl, double scale_factor) {
    require(layout.topology_id == tmpl.topology_id, errc::contract_violation,
            "bundle_to_mesh: layout/template topology mismatch");
    require(layout.vertex_count() == tmpl.vertex_count(), errc::contract_violation,
            "bundle_to_mesh: layout/template vertex count mismatch");
    require(scale_factor > 0.0, errc::invalid_argument, "bundle_to_mesh: scale_factor must be positive");

    const Eigen::MatrixXd shape = uvcodec::sample_from_uv(bundle.shape, layout);
    const Eigen::MatrixXd normals = uvcodec::sample_from_uv(bundle.normals, layout);
    const Eigen::MatrixXd colors = uvcodec::sample_from_uv(bundle.texture, layout);

    FaceMesh out;
    out.mesh = tmpl; // topology preserved; vertices replaced below
    const int n = tmpl.vertex_count();
    out.vertex_normals.resize(std::size_t(n));
    out.vertex_colors.resize(std::size_t(n));
    for (int i = 0; i < n; ++i) {
        out.mesh.vertices[std::size_t(i)] =
            Eigen::Vector3d(shape(i, 0), shape(i, 1), shape(i, 2)) / scale_factor;
        Eigen::Vector3d nrm(normals(i, 0), normals(i, 1), normals(i, 2));
        const double len = nrm.norm();
        out.vertex_normals[std::size_t(i)] = len > 1e-12 ? Eigen::Vector3d(nrm / len)
                                                         : Eigen::Vector3d(0, 0, 1);
        out.vertex_colors[std::size_t(i)] = Eigen::Vector3d(colors(i, 0), colors(i, 1), colors(i, 2));
    }
    return out;
}

} // namespace tbgan::synthesis
