/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/pca.cpp
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
#include "headmodel/pca.hpp"

#include "core/error.hpp"

#include <Eigen/SVD>

namespace tbgan::headmodel {

void PCAModel::validate() const {
    require(components.rows() == mean.size() && components.cols() == eigenvalues.size(),
            errc::contract_violation, "pca model: inconsistent dimensions");
    const Eigen::MatrixXd gram = components.transpose() * components;
    require((gram - Eigen::MatrixXd::Identity(rank(), rank())).cwiseAbs().maxCoeff() < 1e-8,
            errc::contract_violation, "pca model: components not orthonormal within 1e-8");
    for (int i = 0; i < rank(); ++i) {
        require(eigenvalues(i) >= -1e-12, errc::contract_violation, "pca model: negative eigenvalue");
        if (i > 0)
            require(eigenvalues(i) <= eigenvalues(i - 1) + 1e-12, errc::contract_violation,
                    "pca model: eigenvalues not descending");
    }
}

PCAModel pca_build(const Eigen::MatrixXd& data, std::optional<int> k,
                   std::optional<double> variance_fraction) {
    const int n = int(data.rows());
    const int dim = int(data.cols());
    require(n >= 2, errc::invalid_argument, "pca_build: need at least 2 samples");
    require(k.has_value() != variance_fraction.has_value(), errc::invalid_argument,
            "pca_build: specify exactly one of k / variance_fraction");

    PCAModel model;
    model.mean = data.colwise().mean();
    Eigen::MatrixXd centered = data.rowwise() - model.mean.transpose();

    // Thin SVD of the centered data; population covariance eigenvalues are
    // singular values squared over n (duplicating every row then leaves the
    // model unchanged).
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd sv = svd.singularValues();
    const int max_rank = int(sv.size());

    int rank = 0;
    if (k) {
        require(*k >= 1 && *k <= std::min(n - 1, dim), errc::invalid_argument,
                "pca_build: k outside [1, min(n-1, D)]");
        rank = *k;
    } else {
        require(*variance_fraction > 0.0 && *variance_fraction <= 1.0, errc::invalid_argument,
                "pca_build: variance_fraction outside (0, 1]");
        double total = 0.0;
        for (int i = 0; i < max_rank; ++i)
            total += sv(i) * sv(i);
        require(total > 0.0, errc::degenerate_input, "pca_build: zero-variance data");
        double acc = 0.0;
        rank = max_rank;
        for (int i = 0; i < max_rank; ++i) {
            acc += sv(i) * sv(i);
            if (acc >= *variance_fraction * total - 1e-15) {
                rank = i + 1;
                break;
            }
        }
        rank = std::min(rank, std::min(n - 1, dim));
        rank = std::max(rank, 1);
    }

    model.components = svd.matrixV().leftCols(rank);
    model.eigenvalues.resize(rank);
    for (int i = 0; i < rank; ++i)
        model.eigenvalues(i) = sv(i) * sv(i) / double(n);

    // Deterministic sign: the entry of largest magnitude (lowest index on
    // ties) is made positive.
    for (int c = 0; c < rank; ++c) {
        int arg = 0;
        double best = -1.0;
        for (int r = 0; r < dim; ++r)
            if (std::abs(model.components(r, c)) > best) {
                best = std::abs(model.components(r, c));
                arg = r;
            }
        if (model.components(arg, c) < 0.0)
            model.components.col(c) = -model.components.col(c);
    }
    model.validate();
    return model;
}

Projection pca_project_reconstruct(const PCAModel& model, const Eigen::VectorXd& sample) {
    require(sample.size() == model.mean.size(), errc::invalid_argument,
            "pca_project_reconstruct: dimension mismatch");
    Projection out;
    out.latent = model.components.transpose() * (sample - model.mean);
    out.reconstruction = model.mean + model.components * out.latent;
    return out;
}

} // namespace tbgan::headmodel
