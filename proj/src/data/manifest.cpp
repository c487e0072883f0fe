/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/manifest.cpp
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
#include "data/manifest.hpp"

#include "core/error.hpp"
#include "core/json_util.hpp"
#include "geometry/obj_io.hpp"
#include "uvcodec/bundle_io.hpp"

namespace tbgan::data {

void DatasetManifest::validate() const {
    require(!topology_id.empty(), errc::format_error, "dataset manifest: empty topology id");
    require(resolution >= 4, errc::format_error, "dataset manifest: bad resolution");
    require(scale_factor > 0.0, errc::format_error, "dataset manifest: bad scale factor");
    require(!items.empty(), errc::format_error, "dataset manifest: no items");
    for (const auto& item : items)
        item.expression.validate();
}

void save_manifest(const DatasetManifest& manifest, const std::filesystem::path& dataset_dir) {
    manifest.validate();
    json doc;
    doc["schema_version"] = kDatasetSchemaVersion;
    doc["topology_id"] = manifest.topology_id;
    doc["resolution"] = manifest.resolution;
    doc["scale_factor"] = manifest.scale_factor;
    doc["template_obj"] = manifest.template_obj;
    json items = json::array();
    for (const auto& item : manifest.items)
        items.push_back({{"bundle", item.bundle_path},
                         {"expression", item.expression.p},
                         {"identity", item.identity}});
    doc["items"] = std::move(items);
    save_json(dataset_dir / "manifest.json", doc);
}

DatasetManifest load_manifest(const std::filesystem::path& dataset_dir) {
    const json doc = load_json(dataset_dir / "manifest.json");
    require(json_field(doc, "schema_version", "dataset manifest") == kDatasetSchemaVersion,
            errc::format_error, dataset_dir.string() + ": unsupported dataset schema version");
    DatasetManifest m;
    m.topology_id = json_field(doc, "topology_id", "dataset manifest").get<std::string>();
    m.resolution = json_field(doc, "resolution", "dataset manifest");
    m.scale_factor = json_field(doc, "scale_factor", "dataset manifest");
    m.template_obj = json_field(doc, "template_obj", "dataset manifest").get<std::string>();
    for (const auto& entry : json_field(doc, "items", "dataset manifest")) {
        DatasetItem item;
        item.bundle_path = json_field(entry, "bundle", "dataset item").get<std::string>();
        item.expression.p = json_field(entry, "expression", "dataset item").get<std::vector<double>>();
        item.identity = json_field(entry, "identity", "dataset item").get<std::string>();
        m.items.push_back(std::move(item));
    }
    m.validate();
    return m;
}

LoadedDataset::LoadedDataset(const std::filesystem::path& dataset_dir)
    : manifest_(load_manifest(dataset_dir)) {
    auto contents = geometry::load_obj(dataset_dir / manifest_.template_obj);
    require(contents.layout.has_value(), errc::format_error,
            dataset_dir.string() + ": dataset template carries no UV layout");
    template_mesh_ = std::move(contents.mesh);
    require(template_mesh_.topology_id == manifest_.topology_id, errc::contract_violation,
            dataset_dir.string() + ": template topology does not match the manifest");
    layout_ = std::move(*contents.layout);

    bundles_.reserve(manifest_.items.size());
    for (const auto& item : manifest_.items) {
        uvcodec::ModalityBundle bundle = uvcodec::read_bundle(dataset_dir / item.bundle_path);
        require(bundle.height() == manifest_.resolution && bundle.width() == manifest_.resolution,
                errc::contract_violation, item.bundle_path + ": resolution differs from the manifest");
        require(bundle.topology_id == manifest_.topology_id, errc::contract_violation,
                item.bundle_path + ": topology differs from the manifest");
        require(bundle.expression.has_value(), errc::contract_violation,
                item.bundle_path + ": training bundle without an expression label");
        bundles_.push_back(std::move(bundle));
    }
}

} // namespace tbgan::data
