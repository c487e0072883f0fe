/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/manifest.hpp
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

#include "arch/expression_label.hpp"
#include "geometry/mesh.hpp"
#include "geometry/unwrap.hpp"
#include "train/loop.hpp"
#include "uvcodec/modality.hpp"

#include <filesystem>

namespace tbgan::data {

inline constexpr int kDatasetSchemaVersion = 1;

struct DatasetItem {
    std::string bundle_path; // relative to the dataset root
    arch::ExpressionLabel expression;
    std::string identity;
};

/// Index of a bundle dataset: items plus the shared topology, resolution,
/// corpus scale factor and the unwrapped template used to build the maps.
struct DatasetManifest {
    std::string topology_id;
    int resolution = 0;
    double scale_factor = 1.0;
    std::string template_obj = "template/template.obj";
    std::vector<DatasetItem> items;

    void validate() const;
};

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& dataset_dir);
DatasetManifest load_manifest(const std::filesystem::path& dataset_dir);

/// In-memory dataset; all bundles are loaded and validated against the
/// manifest (shared resolution and topology, labels on the simplex).
class LoadedDataset : public training::BatchProvider {
public:
    explicit LoadedDataset(const std::filesystem::path& dataset_dir);

    std::size_t size() const override { return bundles_.size(); }
    const uvcodec::ModalityBundle& bundle(std::size_t index) const override { return bundles_[index]; }

    const DatasetManifest& manifest() const { return manifest_; }
    const geometry::Mesh& face_template() const { return template_mesh_; }
    const geometry::UVLayout& layout() const { return layout_; }
    double scale_factor() const { return manifest_.scale_factor; }

private:
    DatasetManifest manifest_;
    std::vector<uvcodec::ModalityBundle> bundles_;
    geometry::Mesh template_mesh_;
    geometry::UVLayout layout_;
};

} // namespace tbgan::data
