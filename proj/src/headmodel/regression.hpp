/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/regression.hpp
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
#include "headmodel/pca.hpp"

namespace tbgan::headmodel {

/// Affine map from face-shape latents to head-shape latents.
struct RegressionMap {
    Eigen::MatrixXd weights; // k_head x k_face
    Eigen::VectorXd bias;    // k_head
    int rank = 0;            // numerical rank of the augmented design
    bool rank_deficient = false;

    Eigen::VectorXd apply(const Eigen::VectorXd& face_latent) const {
        return weights * face_latent + bias;
    }
};

/// Least squares fit of (W, b) minimizing sum ||W f_i + b - h_i||^2 via a
/// complete orthogonal decomposition; rank-deficient designs get the
/// minimum-norm solution and set the rank_deficient flag.
RegressionMap fit_head_regression(const Eigen::MatrixXd& face_latents,
                                  const Eigen::MatrixXd& head_latents);

/// Sum of squared residuals of the fit on a dataset.
double regression_objective(const RegressionMap& reg, const Eigen::MatrixXd& face_latents,
                            const Eigen::MatrixXd& head_latents);

struct HeadCompletion {
    geometry::Mesh head;
    Eigen::VectorXd head_latent;
    double face_region_rmse = -1.0; // reported when a face->head vertex map is given
};

/// Face latent via projection, head latent via the regression, head mesh via
/// the head model's reconstruction on the head template topology. When
/// face_to_head_vertex maps face vertex i to a head vertex, the RMS distance
/// between the input face and the completed head over that region is
/// reported (not enforced).
HeadCompletion complete_head(const geometry::Mesh& face_mesh, const PCAModel& face_pca,
                             const PCAModel& head_pca, const RegressionMap& reg,
                             const geometry::Mesh& head_template,
                             const std::vector<int>* face_to_head_vertex = nullptr);

/// Flattens mesh vertices to the (3N) layout the PCA models use.
Eigen::VectorXd flatten_vertices(const geometry::Mesh& mesh);
void unflatten_vertices(const Eigen::VectorXd& flat, geometry::Mesh& mesh);

} // namespace tbgan::headmodel
