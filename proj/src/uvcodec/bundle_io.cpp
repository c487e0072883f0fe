/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/bundle_io.cpp
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
#include "uvcodec/bundle_io.hpp"

#include "core/binio.hpp"
#include "core/json_util.hpp"

namespace tbgan::uvcodec {

namespace {

std::vector<std::uint8_t> pack_mask(const std::vector<std::uint8_t>& mask) {
    std::vector<std::uint8_t> packed((mask.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i])
            packed[i / 8] |= std::uint8_t(1u << (i % 8));
    return packed;
}

std::vector<std::uint8_t> unpack_mask(const std::vector<std::uint8_t>& packed, std::size_t pixels) {
    std::vector<std::uint8_t> mask(pixels, 0);
    for (std::size_t i = 0; i < pixels; ++i)
        mask[i] = (packed[i / 8] >> (i % 8)) & 1u;
    return mask;
}

void write_map_payload(const std::filesystem::path& dir, const std::string& file,
                       const ModalityMap& map, json& entry) {
    const auto bytes = as_bytes_of(map.data);
    write_file_atomic(dir / file, bytes);
    entry["file"] = file;
    entry["channels"] = map.channels;
    entry["value_range"] = {map.value_range[0], map.value_range[1]};
    entry["crc32"] = crc32(bytes);
}

ModalityMap read_map_payload(const std::filesystem::path& dir, const json& meta, const std::string& name,
                             int height, int width, const std::vector<std::uint8_t>& mask) {
    const json& modalities = json_field(meta, "modalities", "bundle meta");
    const json& entry = json_field(modalities, name, "bundle meta modalities");
    const std::string file = json_field(entry, "file", "bundle modality entry");
    const int channels = json_field(entry, "channels", "bundle modality entry");
    const auto range = json_field(entry, "value_range", "bundle modality entry");
    const std::uint32_t want_crc = json_field(entry, "crc32", "bundle modality entry");

    const std::int64_t expected = std::int64_t(height) * width * channels * 4;
    const auto bytes = read_file(dir / file, expected);
    require(crc32(bytes) == want_crc, errc::checksum_mismatch,
            (dir / file).string() + ": payload does not match recorded crc32");

    ModalityMap map;
    map.height = height;
    map.width = width;
    map.channels = channels;
    map.modality = modality_from_name(name);
    map.value_range = {range.at(0).get<float>(), range.at(1).get<float>()};
    map.data = from_bytes_of<float>(bytes);
    map.mask = mask;
    return map;
}

} // namespace

void write_bundle(const ModalityBundle& bundle, const std::filesystem::path& dir) {
    bundle.validate();
    std::filesystem::create_directories(dir);

    json meta;
    meta["format_version"] = kBundleFormatVersion;
    meta["resolution"] = {bundle.height(), bundle.width()};
    meta["channel_order"] = {"texture", "normals", "shape"};
    meta["topology_id"] = bundle.topology_id;
    if (bundle.expression)
        meta["expression"] = bundle.expression->p;
    else
        meta["expression"] = nullptr;

    json modalities;
    write_map_payload(dir, "texture.f32", bundle.texture, modalities["texture"]);
    write_map_payload(dir, "normals.f32", bundle.normals, modalities["normals"]);
    write_map_payload(dir, "shape.f32", bundle.shape, modalities["shape"]);
    meta["modalities"] = std::move(modalities);

    const auto packed = pack_mask(bundle.texture.mask);
    write_file_atomic(dir / "mask.bin", packed);
    meta["mask"] = {{"file", "mask.bin"}, {"crc32", crc32(packed)}, {"packing", "row-major, LSB-first"}};

    save_json(dir / "meta.json", meta);
}

ModalityBundle read_bundle(const std::filesystem::path& dir) {
    const json meta = load_json(dir / "meta.json");
    const int version = json_field(meta, "format_version", "bundle meta");
    require(version == kBundleFormatVersion, errc::format_error,
            dir.string() + ": unsupported bundle format version " + std::to_string(version));

    const auto& res = json_field(meta, "resolution", "bundle meta");
    const int height = res.at(0), width = res.at(1);
    const std::size_t pixels = std::size_t(height) * width;

    const json& mask_meta = json_field(meta, "mask", "bundle meta");
    const std::string mask_file = json_field(mask_meta, "file", "bundle mask entry");
    const std::uint32_t mask_crc = json_field(mask_meta, "crc32", "bundle mask entry");
    const auto packed = read_file(dir / mask_file, std::int64_t((pixels + 7) / 8));
    require(crc32(packed) == mask_crc, errc::checksum_mismatch,
            (dir / mask_file).string() + ": payload does not match recorded crc32");
    const auto mask = unpack_mask(packed, pixels);

    ModalityBundle bundle;
    bundle.topology_id = json_field(meta, "topology_id", "bundle meta").get<std::string>();
    const json& expr = json_field(meta, "expression", "bundle meta");
    if (!expr.is_null()) {
        arch::ExpressionLabel label;
        label.p = expr.get<std::vector<double>>();
        bundle.expression = std::move(label);
    }
    bundle.texture = read_map_payload(dir, meta, "texture", height, width, mask);
    bundle.normals = read_map_payload(dir, meta, "normals", height, width, mask);
    bundle.shape = read_map_payload(dir, meta, "shape", height, width, mask);
    bundle.validate();
    return bundle;
}

} // namespace tbgan::uvcodec
