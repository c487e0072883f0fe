/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/checkpoint.cpp
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
#include "arch/checkpoint.hpp"

#include "core/binio.hpp"
#include "core/error.hpp"
#include "core/json_util.hpp"

namespace tbgan::arch {

void save_checkpoint(const std::filesystem::path& dir, const Checkpoint& meta, const ParamStore& params) {
    require(meta.kind == "generator" || meta.kind == "discriminator", errc::invalid_argument,
            "save_checkpoint: kind must be generator or discriminator");
    std::filesystem::create_directories(dir);

    std::vector<double> flat;
    flat.reserve(params.total_scalars());
    json names = json::array();
    for (std::size_t i = 0; i < params.count(); ++i) {
        const Param& p = params.at(int(i));
        names.push_back({{"name", p.name}, {"rows", p.rows}, {"cols", p.cols}});
        flat.insert(flat.end(), p.value.begin(), p.value.end());
    }
    const auto bytes = as_bytes_of(flat);
    write_file_atomic(dir / "params.f64", bytes);

    json doc;
    doc["format_version"] = kCheckpointFormatVersion;
    doc["kind"] = meta.kind;
    doc["arch"] = meta.config.to_json();
    doc["growth"] = {{"level", meta.growth.level}, {"blend", meta.growth.blend}};
    doc["step"] = meta.step;
    doc["images_seen"] = meta.images_seen;
    doc["params"] = {{"file", "params.f64"}, {"entries", names}, {"crc32", crc32(bytes)}};
    json blob_index = json::object();
    for (const auto& [name, values] : meta.blobs) {
        const std::string file = "blob_" + name + ".f64";
        const auto blob_bytes = as_bytes_of(values);
        write_file_atomic(dir / file, blob_bytes);
        blob_index[name] = {{"file", file}, {"count", values.size()}, {"crc32", crc32(blob_bytes)}};
    }
    doc["blobs"] = std::move(blob_index);
    save_json(dir / "manifest.json", doc);
}

Checkpoint load_checkpoint(const std::filesystem::path& dir, ParamStore& params_out) {
    const json doc = load_json(dir / "manifest.json");
    const int version = json_field(doc, "format_version", "checkpoint manifest");
    require(version == kCheckpointFormatVersion, errc::format_error,
            dir.string() + ": unsupported checkpoint format version " + std::to_string(version));

    Checkpoint meta;
    meta.kind = json_field(doc, "kind", "checkpoint manifest").get<std::string>();
    meta.config = ArchConfig::from_json(json_field(doc, "arch", "checkpoint manifest"));
    const json& growth = json_field(doc, "growth", "checkpoint manifest");
    meta.growth.level = json_field(growth, "level", "checkpoint growth");
    meta.growth.blend = json_field(growth, "blend", "checkpoint growth");
    meta.step = doc.value("step", 0LL);
    meta.images_seen = doc.value("images_seen", 0LL);

    // Rebuild the store so names/shapes come from the architecture, then
    // overwrite every value from the blob in manifest order.
    if (meta.kind == "generator")
        params_out = build_generator(meta.config, 0).params;
    else
        params_out = build_discriminator(meta.config, 0).params;

    const json& pmeta = json_field(doc, "params", "checkpoint manifest");
    const std::string file = json_field(pmeta, "file", "checkpoint params");
    const auto bytes = read_file(dir / file, std::int64_t(params_out.total_scalars() * sizeof(double)));
    require(crc32(bytes) == std::uint32_t(json_field(pmeta, "crc32", "checkpoint params")),
            errc::checksum_mismatch, (dir / file).string() + ": parameter blob corrupt");
    const auto flat = from_bytes_of<double>(bytes);

    const json& entries = json_field(pmeta, "entries", "checkpoint params");
    require(entries.size() == params_out.count(), errc::format_error,
            dir.string() + ": parameter entry count mismatch");
    std::size_t offset = 0;
    for (std::size_t i = 0; i < params_out.count(); ++i) {
        Param& p = params_out.at(int(i));
        const json& e = entries[i];
        require(e.at("name") == p.name && e.at("rows") == p.rows && e.at("cols") == p.cols,
                errc::format_error, dir.string() + ": parameter layout mismatch at '" + p.name + "'");
        std::copy(flat.begin() + std::ptrdiff_t(offset), flat.begin() + std::ptrdiff_t(offset + p.value.size()),
                  p.value.begin());
        offset += p.value.size();
    }

    for (const auto& [name, entry] : json_field(doc, "blobs", "checkpoint manifest").items()) {
        const std::string bfile = json_field(entry, "file", "checkpoint blob");
        const std::size_t count = json_field(entry, "count", "checkpoint blob");
        const auto bbytes = read_file(dir / bfile, std::int64_t(count * sizeof(double)));
        require(crc32(bbytes) == std::uint32_t(json_field(entry, "crc32", "checkpoint blob")),
                errc::checksum_mismatch, (dir / bfile).string() + ": blob corrupt");
        meta.blobs[name] = from_bytes_of<double>(bbytes);
    }
    return meta;
}

Generator load_generator(const std::filesystem::path& dir, Checkpoint* meta_out) {
    ParamStore store;
    Checkpoint meta = load_checkpoint(dir, store);
    require(meta.kind == "generator", errc::format_error, dir.string() + ": not a generator checkpoint");
    Generator g;
    g.config = meta.config;
    g.params = std::move(store);
    if (meta_out)
        *meta_out = std::move(meta);
    return g;
}

Discriminator load_discriminator(const std::filesystem::path& dir, Checkpoint* meta_out) {
    ParamStore store;
    Checkpoint meta = load_checkpoint(dir, store);
    require(meta.kind == "discriminator", errc::format_error,
            dir.string() + ": not a discriminator checkpoint");
    Discriminator d;
    d.config = meta.config;
    d.params = std::move(store);
    if (meta_out)
        *meta_out = std::move(meta);
    return d;
}

} // namespace tbgan::arch
