/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/unit/headmodel_test.cpp
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
#include <doctest.h>

#include "core/rng.hpp"
#include "headmodel/head_io.hpp"
#include "support/meshes.hpp"

#include <Eigen/Eigenvalues>

#include <filesystem>

using namespace tbgan;
using namespace tbgan::headmodel;

namespace {

Eigen::MatrixXd random_matrix(Rng& rng, int rows, int cols, double scale = 1.0) {
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = scale * rng.normal();
    return m;
}

} // namespace

TEST_CASE("pca: exact k-dimensional affine data reconstructs exactly") {
    Rng rng(1);
    const int n = 40, dim = 20, true_k = 4;
    Eigen::MatrixXd basis = random_matrix(rng, dim, true_k);
    Eigen::MatrixXd coords = random_matrix(rng, n, true_k);
    Eigen::VectorXd offset = random_matrix(rng, dim, 1);
    Eigen::MatrixXd data = coords * basis.transpose();
    data.rowwise() += offset.transpose();

    auto model = pca_build(data, true_k);
    for (int i = true_k; i < model.rank(); ++i)
        CHECK(model.eigenvalues(i) < 1e-16);
    for (int i = 0; i < n; ++i) {
        auto pr = pca_project_reconstruct(model, data.row(i).transpose());
        CHECK((pr.reconstruction - data.row(i).transpose()).norm() < 1e-8);
    }

    // Rank selection by variance fraction finds the true subspace size.
    auto by_fraction = pca_build(data, std::nullopt, 0.999);
    CHECK(by_fraction.rank() == true_k);
}

TEST_CASE("pca: duplicating every row leaves the model identical") {
    Rng rng(2);
    Eigen::MatrixXd data = random_matrix(rng, 25, 12);
    Eigen::MatrixXd doubled(50, 12);
    doubled << data, data;
    auto a = pca_build(data, 6);
    auto b = pca_build(doubled, 6);
    CHECK((a.mean - b.mean).norm() < 1e-12);
    CHECK((a.components - b.components).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("pca: eigenvalues match a dense covariance eigensolver oracle") {
    Rng rng(3);
    Eigen::MatrixXd data = random_matrix(rng, 100, 50);
    auto model = pca_build(data, 30);

    Eigen::MatrixXd centered = data.rowwise() - data.colwise().mean();
    Eigen::MatrixXd cov = centered.transpose() * centered / double(data.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    Eigen::VectorXd descending = eig.eigenvalues().reverse();

    for (int i = 0; i < model.rank(); ++i)
        CHECK(std::abs(model.eigenvalues(i) - descending(i)) <= 1e-8 * std::max(1.0, descending(i)));
}

TEST_CASE("pca: projection basics and orthogonal residuals") {
    Rng rng(4);
    Eigen::MatrixXd data = random_matrix(rng, 30, 15);
    auto model = pca_build(data, 5);

    auto at_mean = pca_project_reconstruct(model, model.mean);
    CHECK(at_mean.latent.norm() < 1e-10);
    CHECK((at_mean.reconstruction - model.mean).norm() < 1e-10);

    Eigen::VectorXd in_span = model.mean + model.components * random_matrix(rng, 5, 1);
    auto span_proj = pca_project_reconstruct(model, in_span);
    CHECK((span_proj.reconstruction - in_span).norm() < 1e-8);

    Eigen::VectorXd sample = random_matrix(rng, 15, 1);
    auto pr = pca_project_reconstruct(model, sample);
    Eigen::VectorXd residual = sample - pr.reconstruction;
    for (int c = 0; c < model.rank(); ++c)
        CHECK(std::abs(residual.dot(model.components.col(c))) < 1e-8);
}

TEST_CASE("pca: reconstruction error is non-increasing in k") {
    Rng rng(5);
    Eigen::MatrixXd data = random_matrix(rng, 40, 20);
    double prev = 1e300;
    for (int k = 1; k <= 10; ++k) {
        auto model = pca_build(data, k);
        double err = 0.0;
        for (int i = 0; i < data.rows(); ++i) {
            auto pr = pca_project_reconstruct(model, data.row(i).transpose());
            err += (pr.reconstruction - data.row(i).transpose()).squaredNorm();
        }
        CHECK(err <= prev + 1e-9);
        prev = err;
    }
}

TEST_CASE("regression: exact linear relation is recovered") {
    Rng rng(6);
    const int n = 50, k_face = 6, k_head = 4;
    Eigen::MatrixXd face = random_matrix(rng, n, k_face);
    Eigen::MatrixXd w_true = random_matrix(rng, k_head, k_face);
    Eigen::VectorXd b_true = random_matrix(rng, k_head, 1);
    Eigen::MatrixXd head = face * w_true.transpose();
    head.rowwise() += b_true.transpose();

    auto reg = fit_head_regression(face, head);
    CHECK_FALSE(reg.rank_deficient);
    CHECK(regression_objective(reg, face, head) < 1e-8);
    CHECK((reg.weights - w_true).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((reg.bias - b_true).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("regression: identity data gives identity map with zero bias") {
    Rng rng(7);
    Eigen::MatrixXd face = random_matrix(rng, 30, 5);
    auto reg = fit_head_regression(face, face);
    CHECK((reg.weights - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-8);
    CHECK(reg.bias.cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("regression: objective matches the normal-equations oracle and beats random maps") {
    Rng rng(8);
    const int n = 60, k_face = 5, k_head = 3;
    Eigen::MatrixXd face = random_matrix(rng, n, k_face);
    Eigen::MatrixXd head = face * random_matrix(rng, k_head, k_face).transpose() +
                           0.3 * random_matrix(rng, n, k_head);

    auto reg = fit_head_regression(face, head);
    const double objective = regression_objective(reg, face, head);

    // Oracle: explicit normal equations in float64.
    Eigen::MatrixXd design(n, k_face + 1);
    design.leftCols(k_face) = face;
    design.col(k_face).setOnes();
    Eigen::MatrixXd solution =
        (design.transpose() * design).ldlt().solve(design.transpose() * head);
    const double oracle = (design * solution - head).squaredNorm();
    CHECK(std::abs(objective - oracle) <= 1e-6 * std::max(1.0, oracle));

    // Global-optimum spot check against 100 random candidates.
    for (int trial = 0; trial < 100; ++trial) {
        RegressionMap candidate;
        candidate.weights = reg.weights + 0.1 * random_matrix(rng, k_head, k_face);
        candidate.bias = reg.bias + 0.1 * random_matrix(rng, k_head, 1);
        CHECK(regression_objective(candidate, face, head) >= objective - 1e-9);
    }
}

TEST_CASE("regression: zero-variance face latents return the minimum-norm solution with a warning") {
    Eigen::MatrixXd face = Eigen::MatrixXd::Zero(10, 3);
    Eigen::MatrixXd head = Eigen::MatrixXd::Constant(10, 2, 1.5);
    auto reg = fit_head_regression(face, head);
    CHECK(reg.rank_deficient);
    CHECK(reg.weights.cwiseAbs().maxCoeff() < 1e-9); // minimum-norm: all fit lands in the bias
    CHECK((reg.bias - Eigen::Vector2d(1.5, 1.5)).norm() < 1e-9);
}

TEST_CASE("complete_head: exact linear face->head corpus reproduces ground truth") {
    Rng rng(9);
    // Face = open patch; head = face plus a back extension whose vertices are
    // an exact linear function of the face vertices.
    geometry::Mesh face_tmpl = testing::spherical_patch(8, 6);
    const int nf = face_tmpl.vertex_count();
    const int extra = 20;
    Eigen::MatrixXd extension = random_matrix(rng, 3 * extra, 3 * nf, 0.01);

    auto make_head = [&](const geometry::Mesh& face) {
        geometry::Mesh head = face; // face region first, extension appended
        Eigen::VectorXd flat = flatten_vertices(face);
        Eigen::VectorXd tail = extension * flat;
        for (int i = 0; i < extra; ++i)
            head.vertices.emplace_back(tail(3 * i), tail(3 * i + 1), tail(3 * i + 2));
        head.topology_id = "head-" + face.topology_id;
        return head;
    };

    // Identity variation spans a fixed low-dimensional subspace so the PCA
    // models capture the corpus exactly and the only approximation left is
    // the linear map itself (which is exact by construction).
    const int n_ident = 24, k = 8, k_true = 6;
    Eigen::MatrixXd face_basis = random_matrix(rng, 3 * nf, k_true, 0.05);
    std::vector<geometry::Mesh> faces;
    Eigen::MatrixXd face_rows(n_ident, 3 * nf), head_rows(n_ident, 3 * (nf + extra));
    for (int s = 0; s < n_ident; ++s) {
        geometry::Mesh face = face_tmpl;
        Eigen::VectorXd flat = flatten_vertices(face) + face_basis * random_matrix(rng, k_true, 1);
        unflatten_vertices(flat, face);
        geometry::Mesh head = make_head(face);
        face_rows.row(s) = flatten_vertices(face).transpose();
        head_rows.row(s) = flatten_vertices(head).transpose();
        faces.push_back(std::move(face));
    }

    auto face_pca = pca_build(face_rows, k);
    auto head_pca = pca_build(head_rows, k);
    Eigen::MatrixXd face_lat(n_ident, k), head_lat(n_ident, k);
    for (int s = 0; s < n_ident; ++s) {
        face_lat.row(s) = pca_project_reconstruct(face_pca, face_rows.row(s).transpose()).latent.transpose();
        head_lat.row(s) = pca_project_reconstruct(head_pca, head_rows.row(s).transpose()).latent.transpose();
    }
    auto reg = fit_head_regression(face_lat, head_lat);

    geometry::Mesh head_tmpl = make_head(face_tmpl);
    std::vector<int> face_map(std::size_t(nf), 0);
    for (int i = 0; i < nf; ++i)
        face_map[std::size_t(i)] = i;

    for (int s = 0; s < 4; ++s) {
        auto completion = complete_head(faces[std::size_t(s)], face_pca, head_pca, reg, head_tmpl, &face_map);
        const geometry::Mesh want = make_head(faces[std::size_t(s)]);
        for (int i = 0; i < want.vertex_count(); ++i)
            CHECK((completion.head.vertices[std::size_t(i)] - want.vertices[std::size_t(i)]).norm() < 1e-6);
        CHECK(completion.face_region_rmse < 1e-6);

        // Projection idempotence: completing the face region of the completed
        // head gives the same head latent.
        geometry::Mesh refaced = faces[std::size_t(s)];
        for (int i = 0; i < nf; ++i)
            refaced.vertices[std::size_t(i)] = completion.head.vertices[std::size_t(i)];
        auto again = complete_head(refaced, face_pca, head_pca, reg, head_tmpl, nullptr);
        CHECK((again.head_latent - completion.head_latent).cwiseAbs().maxCoeff() < 1e-8);
    }

    // Face model mean with an identity latent regression lands on the head mean.
    RegressionMap identity_reg;
    identity_reg.weights = Eigen::MatrixXd::Identity(k, k);
    identity_reg.bias = Eigen::VectorXd::Zero(k);
    geometry::Mesh mean_face = face_tmpl;
    unflatten_vertices(face_pca.mean, mean_face);
    auto mean_completion = complete_head(mean_face, face_pca, head_pca, identity_reg, head_tmpl, nullptr);
    CHECK((flatten_vertices(mean_completion.head) - head_pca.mean).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("headmodel io: pca and regression containers round trip bit-exact") {
    Rng rng(10);
    Eigen::MatrixXd data = random_matrix(rng, 30, 18);
    auto model = pca_build(data, 7);
    auto reg = fit_head_regression(random_matrix(rng, 25, 7), random_matrix(rng, 25, 5));

    const auto dir = std::filesystem::temp_directory_path() / "tbgan_headmodel_rt";
    std::filesystem::remove_all(dir);
    save_pca(model, dir / "pca");
    save_regression(reg, dir / "reg");
    auto model2 = load_pca(dir / "pca");
    auto reg2 = load_regression(dir / "reg");

    CHECK(model2.mean == model.mean);
    CHECK(model2.components == model.components);
    CHECK(model2.eigenvalues == model.eigenvalues);
    CHECK(reg2.weights == reg.weights);
    CHECK(reg2.bias == reg.bias);
    CHECK(reg2.rank == reg.rank);
    std::filesystem::remove_all(dir);
}
