/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/head_io.hpp
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
#include "headmodel/regression.hpp"

#include <filesystem>

namespace tbgan::headmodel {

inline constexpr int kHeadModelFormatVersion = 1;

/// meta.json + raw little-endian float64 arrays; read(write(m)) bit-exact.
void save_pca(const PCAModel& model, const std::filesystem::path& dir);
PCAModel load_pca(const std::filesystem::path& dir);

void save_regression(const RegressionMap& reg, const std::filesystem::path& dir);
RegressionMap load_regression(const std::filesystem::path& dir);

/// Everything the completion op needs, persisted as one directory:
/// face_pca/, head_pca/, regression/, the two templates, and the face-region
/// vertex map.
struct HeadModelSet {
    PCAModel face_pca;
    PCAModel head_pca;
    RegressionMap regression;
    geometry::Mesh face_template;
    geometry::Mesh head_template;
    std::vector<int> face_to_head_vertex;
};

void save_head_model_set(const HeadModelSet& set, const std::filesystem::path& dir);
HeadModelSet load_head_model_set(const std::filesystem::path& dir);

} // namespace tbgan::headmodel
