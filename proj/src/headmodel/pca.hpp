/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/pca.hpp
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

#include <optional>

namespace tbgan::headmodel {

/// Linear shape model: orthonormal components over mean-centered data with
/// population-covariance eigenvalues sorted descending. Component signs are
/// fixed (largest-magnitude entry positive) so rebuilds are reproducible.
struct PCAModel {
    Eigen::VectorXd mean;        // D
    Eigen::MatrixXd components;  // D x k, orthonormal columns
    Eigen::VectorXd eigenvalues; // k, non-negative, descending

    int dimension() const { return int(mean.size()); }
    int rank() const { return int(components.cols()); }

    /// Orthonormality within 1e-8, descending non-negative eigenvalues.
    void validate() const;
};

/// Builds the model from rows of samples. Exactly one of `k` /
/// `variance_fraction` selects the rank: a fixed count, or the smallest count
/// capturing that fraction of total variance.
PCAModel pca_build(const Eigen::MatrixXd& data, std::optional<int> k,
                   std::optional<double> variance_fraction = std::nullopt);

struct Projection {
    Eigen::VectorXd latent;
    Eigen::VectorXd reconstruction;
};

/// latent = components^T (sample - mean); reconstruction = mean + components
/// * latent. The residual is orthogonal to the span.
Projection pca_project_reconstruct(const PCAModel& model, const Eigen::VectorXd& sample);

} // namespace tbgan::headmodel
