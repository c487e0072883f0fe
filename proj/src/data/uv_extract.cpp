/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/uv_extract.cpp
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
#include "data/uv_extract.hpp"

#include "core/error.hpp"
#include "core/json_util.hpp"
#include "data/synthetic.hpp"
#include "geometry/obj_io.hpp"

#include <algorithm>

namespace tbgan::data {

namespace {

arch::ExpressionLabel label_from_entry(const json& entry, int n_expressions) {
    arch::ExpressionLabel label;
    if (entry.is_number_integer()) {
        label = arch::ExpressionLabel::one_hot(entry.get<int>(), n_expressions);
    } else {
        label.p = entry.get<std::vector<double>>();
        label.validate();
    }
    return label;
}

} // namespace

DatasetManifest uv_extract(const std::filesystem::path& mesh_dir, const std::filesystem::path& out_dir,
                           int resolution, const std::optional<std::filesystem::path>& labels_json) {
    require(std::filesystem::is_directory(mesh_dir), errc::invalid_argument,
            "uv_extract: not a directory: " + mesh_dir.string());

    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(mesh_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".obj")
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    require(files.size() >= 2, errc::invalid_argument,
            "uv_extract: need at least 2 .obj meshes in " + mesh_dir.string());

    json labels = json::object();
    if (labels_json)
        labels = load_json(*labels_json);

    Corpus corpus;
    for (const auto& file : files) {
        auto contents = geometry::load_obj(file);
        const int n = contents.mesh.vertex_count();
        corpus.meshes.push_back(std::move(contents.mesh));
        if (contents.colors.empty())
            corpus.colors.emplace_back(std::size_t(n), Eigen::Vector3d::Zero());
        else
            corpus.colors.push_back(std::move(contents.colors));
        const std::string name = file.filename().string();
        corpus.labels.push_back(labels.contains(name) ? label_from_entry(labels.at(name), 7)
                                                      : arch::ExpressionLabel::one_hot(0, 7));
        corpus.identities.push_back(file.stem().string());
    }
    return build_dataset_from_corpus(corpus, resolution, out_dir);
}

} // namespace tbgan::data
