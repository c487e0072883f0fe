/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/procrustes.cpp
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
#include "geometry/procrustes.hpp"

#include "core/error.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace tbgan::geometry {

SimilarityTransform SimilarityTransform::compose(const SimilarityTransform& other) const {
    SimilarityTransform out;
    out.scale = scale * other.scale;
    out.rotation = rotation * other.rotation;
    out.translation = scale * (rotation * other.translation) + translation;
    return out;
}

void SimilarityTransform::validate() const {
    require(scale > 0.0, errc::contract_violation, "similarity transform: non-positive scale");
    const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).norm();
    require(ortho < 1e-9, errc::contract_violation, "similarity transform: rotation not orthonormal");
    require(std::abs(rotation.determinant() - 1.0) < 1e-9, errc::contract_violation,
            "similarity transform: determinant != +1");
}

Mesh apply_transform(const Mesh& mesh, const SimilarityTransform& t) {
    Mesh out = mesh;
    for (auto& v : out.vertices)
        v = t.apply(v);
    return out;
}

PairAlignment similarity_align_pair(const Mesh& source, const Mesh& reference) {
    require(source.same_topology(reference), errc::contract_violation,
            "similarity_align_pair: meshes do not share a topology");
    const int n = source.vertex_count();
    require(n >= 3, errc::invalid_argument, "similarity_align_pair: need at least 3 vertices");

    const Eigen::Vector3d mu_src = source.centroid();
    const Eigen::Vector3d mu_ref = reference.centroid();

    double var_src = 0.0;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int i = 0; i < n; ++i) {
        const Eigen::Vector3d s = source.vertices[std::size_t(i)] - mu_src;
        const Eigen::Vector3d r = reference.vertices[std::size_t(i)] - mu_ref;
        var_src += s.squaredNorm();
        cov += r * s.transpose();
    }
    var_src /= double(n);
    cov /= double(n);

    // Coincident or collinear sources leave the rotation underdetermined.
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Vector3d sv = svd.singularValues();
    require(var_src > 1e-24 && sv(1) > 1e-12 * std::max(sv(0), 1e-300), errc::degenerate_input,
            "similarity_align_pair: degenerate source geometry");

    Eigen::Vector3d sign_fix = Eigen::Vector3d::Ones();
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0)
        sign_fix(2) = -1.0;

    SimilarityTransform t;
    t.rotation = svd.matrixU() * sign_fix.asDiagonal() * svd.matrixV().transpose();
    t.scale = sv.dot(sign_fix) / var_src;
    require(t.scale > 0.0, errc::degenerate_input, "similarity_align_pair: non-positive optimal scale");
    t.translation = mu_ref - t.scale * (t.rotation * mu_src);

    PairAlignment out;
    out.transform = t;
    out.aligned = apply_transform(source, t);
    for (int i = 0; i < n; ++i)
        out.residual += (out.aligned.vertices[std::size_t(i)] - reference.vertices[std::size_t(i)]).squaredNorm();
    return out;
}

namespace {

double total_residual(const std::vector<Mesh>& meshes, const Mesh& consensus) {
    double r = 0.0;
    for (const auto& m : meshes)
        for (int i = 0; i < m.vertex_count(); ++i)
            r += (m.vertices[std::size_t(i)] - consensus.vertices[std::size_t(i)]).squaredNorm();
    return r;
}

Mesh vertex_mean(const std::vector<Mesh>& meshes) {
    Mesh mean = meshes.front();
    for (int i = 0; i < mean.vertex_count(); ++i) {
        Eigen::Vector3d acc = Eigen::Vector3d::Zero();
        for (const auto& m : meshes)
            acc += m.vertices[std::size_t(i)];
        mean.vertices[std::size_t(i)] = acc / double(meshes.size());
    }
    return mean;
}

double centered_size(const Mesh& m) {
    const Eigen::Vector3d c = m.centroid();
    double s = 0.0;
    for (const auto& v : m.vertices)
        s += (v - c).squaredNorm();
    return std::sqrt(s);
}

// Projects the mean onto the fixed-size constraint set. Free-scale alignment
// shrinks every mesh onto the consensus, so an unconstrained mean consensus
// decays geometrically and the alternation has no fixed point; constraining
// the consensus size makes each consensus update the exact minimizer over the
// constraint set, which keeps the residual provably non-increasing.
Mesh pin_consensus_size(Mesh mean, double target_size) {
    const Eigen::Vector3d c = mean.centroid();
    const double size = centered_size(mean);
    require(size > 0.0, errc::degenerate_input, "gpa_align: consensus collapsed to a point");
    const double sigma = target_size / size;
    for (auto& v : mean.vertices)
        v = c + sigma * (v - c);
    return mean;
}

} // namespace

GpaResult gpa_align(const std::vector<Mesh>& meshes, int max_iters, double tol) {
    require(meshes.size() >= 2, errc::invalid_argument, "gpa_align: need at least 2 meshes");
    for (const auto& m : meshes)
        require(m.same_topology(meshes.front()), errc::invalid_argument, "gpa_align: mixed topologies");

    GpaResult out;
    out.aligned = meshes;
    out.transforms.assign(meshes.size(), SimilarityTransform{});
    out.consensus = meshes.front();

    const double target_size = centered_size(out.consensus);
    require(target_size > 0.0, errc::degenerate_input, "gpa_align: degenerate initial consensus");

    const double denom = std::sqrt(double(meshes.front().vertex_count()));
    for (int iter = 0; iter < max_iters; ++iter) {
        for (std::size_t i = 0; i < meshes.size(); ++i) {
            PairAlignment pa = similarity_align_pair(out.aligned[i], out.consensus);
            out.aligned[i] = std::move(pa.aligned);
            out.transforms[i] = pa.transform.compose(out.transforms[i]);
        }
        Mesh next = pin_consensus_size(vertex_mean(out.aligned), target_size);
        double movement = 0.0;
        for (int i = 0; i < next.vertex_count(); ++i)
            movement += (next.vertices[std::size_t(i)] - out.consensus.vertices[std::size_t(i)]).squaredNorm();
        movement = std::sqrt(movement) / denom;
        out.consensus = std::move(next);
        out.residual_history.push_back(total_residual(out.aligned, out.consensus));
        out.iterations = iter + 1;
        if (movement < tol)
            break;
    }
    return out;
}

ScaledCorpus normalize_corpus_scale(const std::vector<Mesh>& meshes) {
    require(!meshes.empty(), errc::invalid_argument, "normalize_corpus_scale: empty corpus");
    double max_abs = 0.0;
    for (const auto& m : meshes)
        for (const auto& v : m.vertices)
            max_abs = std::max(max_abs, v.cwiseAbs().maxCoeff());
    require(max_abs > 0.0, errc::degenerate_input, "normalize_corpus_scale: all-zero corpus");

    ScaledCorpus out;
    out.scale_factor = 1.0 / max_abs;
    out.meshes = meshes;
    if (max_abs != 1.0)
        for (auto& m : out.meshes)
            for (auto& v : m.vertices)
                v /= max_abs;
    else
        out.scale_factor = 1.0;
    return out;
}

} // namespace tbgan::geometry
