/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/synthetic.hpp
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

#include "data/manifest.hpp"
#include "headmodel/head_io.hpp"

namespace tbgan::data {

/// A raw corpus before UV extraction: dense-correspondence meshes with
/// per-vertex colors, one label and identity tag per mesh.
struct Corpus {
    std::vector<geometry::Mesh> meshes;
    std::vector<std::vector<Eigen::Vector3d>> colors;
    std::vector<arch::ExpressionLabel> labels;
    std::vector<std::string> identities;
};

/// The full extraction pipeline: GPA alignment, corpus-global [-1,1] scaling,
/// cylindrical unwrap of the consensus template, per-mesh rasterization into
/// bundles, and the manifest + template container in out_dir.
DatasetManifest build_dataset_from_corpus(const Corpus& corpus, int resolution,
                                          const std::filesystem::path& out_dir);

/// Procedural desk-scale stand-in for a scan corpus: parameterized face-like
/// patches with smooth per-identity deformation fields, expression-dependent
/// localized deformations, and synthetic color gradients. Sample j of an
/// identity carries expression j mod 7 (one-hot label); the expression also
/// applies a fixed strong color tint, so the label controls a measurable map
/// statistic (the masked mean color) by construction. Byte-identical output
/// for equal seeds.
DatasetManifest make_synthetic_dataset(int n_identities, int per_identity, int resolution,
                                       std::uint64_t seed, const std::filesystem::path& out_dir);

/// The tint applied to expression e's texture, the signal the probe reads.
Eigen::Vector3d expression_tint(int expression);

/// Desk-scale stand-in for a full-head statistical model: a synthetic corpus
/// of face patches whose identity variation spans a low-dimensional field,
/// with full heads extending each face by a smooth closure that is an exact
/// linear function of the face vertices. Face and head PCA models plus the
/// face->head latent regression are fit with the standard protocol.
headmodel::HeadModelSet build_synthetic_head_models(int n_identities, int latent_rank,
                                                    std::uint64_t seed);

} // namespace tbgan::data
