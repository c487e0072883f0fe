/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/uv_extract.hpp
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

#include <optional>

namespace tbgan::data {

/// Converts a directory of dense-correspondence OBJ meshes into a bundle
/// dataset (GPA, [-1,1] scaling, consensus unwrap, rasterization). Vertex
/// colors come from 6-component `v` records when present, otherwise zero.
/// labels_json, when given, maps "<filename>" to either an expression index
/// or a 7-vector; meshes without an entry get the neutral one-hot 0.
/// Files are processed in name order, so output is deterministic.
DatasetManifest uv_extract(const std::filesystem::path& mesh_dir, const std::filesystem::path& out_dir,
                           int resolution,
                           const std::optional<std::filesystem::path>& labels_json = std::nullopt);

} // namespace tbgan::data
