/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/regression.cpp
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
#include "headmodel/regression.hpp"

#include "core/error.hpp"

#include <Eigen/QR>

namespace tbgan::headmodel {

RegressionMap fit_head_regression(const Eigen::MatrixXd& face_latents,
                                  const Eigen::MatrixXd& head_latents) {
    const int n = int(face_latents.rows());
    const int k_face = int(face_latents.cols());
    require(head_latents.rows() == n && n >= 1, errc::invalid_argument,
            "fit_head_regression: latent row counts differ or empty");

    // Augmented design [F | 1] absorbs the bias column.
    Eigen::MatrixXd design(n, k_face + 1);
    design.leftCols(k_face) = face_latents;
    design.col(k_face).setOnes();

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    const Eigen::MatrixXd solution = cod.solve(head_latents); // (k_face+1) x k_head, minimum-norm

    RegressionMap reg;
    reg.weights = solution.topRows(k_face).transpose();
    reg.bias = solution.row(k_face).transpose();
    reg.rank = int(cod.rank());
    reg.rank_deficient = reg.rank < k_face + 1;
    require(reg.weights.allFinite() && reg.bias.allFinite(), errc::numeric_divergence,
            "fit_head_regression: non-finite solution");
    return reg;
}

double regression_objective(const RegressionMap& reg, const Eigen::MatrixXd& face_latents,
                            const Eigen::MatrixXd& head_latents) {
    double acc = 0.0;
    for (int i = 0; i < face_latents.rows(); ++i)
        acc += (reg.apply(face_latents.row(i).transpose()) - head_latents.row(i).transpose()).squaredNorm();
    return acc;
}

Eigen::VectorXd flatten_vertices(const geometry::Mesh& mesh) {
    Eigen::VectorXd flat(3 * mesh.vertex_count());
    for (int i = 0; i < mesh.vertex_count(); ++i)
        for (int c = 0; c < 3; ++c)
            flat(3 * i + c) = mesh.vertices[std::size_t(i)](c);
    return flat;
}

void unflatten_vertices(const Eigen::VectorXd& flat, geometry::Mesh& mesh) {
    require(flat.size() == 3 * mesh.vertex_count(), errc::contract_violation,
            "unflatten_vertices: dimension mismatch");
    for (int i = 0; i < mesh.vertex_count(); ++i)
        for (int c = 0; c < 3; ++c)
            mesh.vertices[std::size_t(i)](c) = flat(3 * i + c);
}

HeadCompletion complete_head(const geometry::Mesh& face_mesh, const PCAModel& face_pca,
                             const PCAModel& head_pca, const RegressionMap& reg,
                             const geometry::Mesh& head_template,
                             const std::vector<int>* face_to_head_vertex) {
    require(3 * face_mesh.vertex_count() == face_pca.dimension(), errc::contract_violation,
            "complete_head: face mesh does not match the face model dimension");
    require(3 * head_template.vertex_count() == head_pca.dimension(), errc::contract_violation,
            "complete_head: head template does not match the head model dimension");
    require(reg.weights.cols() == face_pca.rank() && reg.weights.rows() == head_pca.rank(),
            errc::contract_violation, "complete_head: regression does not bridge the two models");

    const auto projection = pca_project_reconstruct(face_pca, flatten_vertices(face_mesh));
    HeadCompletion out;
    out.head_latent = reg.apply(projection.latent);
    out.head = head_template;
    unflatten_vertices(head_pca.mean + head_pca.components * out.head_latent, out.head);

    if (face_to_head_vertex) {
        require(int(face_to_head_vertex->size()) == face_mesh.vertex_count(), errc::invalid_argument,
                "complete_head: face-to-head map size mismatch");
        double acc = 0.0;
        for (int i = 0; i < face_mesh.vertex_count(); ++i) {
            const int j = (*face_to_head_vertex)[std::size_t(i)];
            require(j >= 0 && j < out.head.vertex_count(), errc::invalid_argument,
                    "complete_head: face-to-head map index out of range");
            acc += (out.head.vertices[std::size_t(j)] - face_mesh.vertices[std::size_t(i)]).squaredNorm();
        }
        out.face_region_rmse = std::sqrt(acc / double(face_mesh.vertex_count()));
    }
    return out;
}

} // namespace tbgan::headmodel
