/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/procrustes.hpp
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

#include <vector>

namespace tbgan::geometry {

/// Similarity transform x -> scale * rotation * x + translation.
struct SimilarityTransform {
    double scale = 1.0;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return scale * (rotation * p) + translation; }

    /// this ∘ other: apply `other` first, then this.
    SimilarityTransform compose(const SimilarityTransform& other) const;

    /// Orthonormality (1e-9), det = +1 (1e-9), scale > 0.
    void validate() const;
};

Mesh apply_transform(const Mesh& mesh, const SimilarityTransform& t);

struct PairAlignment {
    SimilarityTransform transform;
    Mesh aligned;
    double residual = 0.0; // sum of squared vertex distances after alignment
};

/// Closed-form similarity Procrustes: minimizes sum_i ||s R v_i + t - r_i||^2.
/// Throws degenerate_input when the source vertices are coincident/collinear.
PairAlignment similarity_align_pair(const Mesh& source, const Mesh& reference);

struct GpaResult {
    std::vector<Mesh> aligned;
    std::vector<SimilarityTransform> transforms; // original mesh -> aligned mesh
    Mesh consensus;
    std::vector<double> residual_history; // total residual after each iteration
    int iterations = 0;
};

/// Generalized Procrustes Analysis: aligns every mesh to the running consensus
/// and recomputes the consensus as the vertex-wise mean, rescaled about its
/// centroid to the initial consensus size (free-scale alignment would
/// otherwise contract the corpus without ever reaching a fixed point).
/// Stops once the consensus moves less than `tol` (RMS per vertex) or after
/// `max_iters` iterations. The recorded residual history is non-increasing.
GpaResult gpa_align(const std::vector<Mesh>& meshes, int max_iters = 100, double tol = 1e-7);

struct ScaledCorpus {
    std::vector<Mesh> meshes;
    double scale_factor = 1.0; // multiplier already applied to every coordinate
};

/// One global factor so the largest |coordinate| over the corpus becomes 1;
/// relative sizes across identities are preserved.
ScaledCorpus normalize_corpus_scale(const std::vector<Mesh>& meshes);

} // namespace tbgan::geometry
