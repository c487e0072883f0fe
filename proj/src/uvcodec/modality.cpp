/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/modality.cpp
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
#include "uvcodec/modality.hpp"

#include <cmath>
#include <cstring>

namespace tbgan::uvcodec {

const char* modality_name(Modality m) {
    switch (m) {
    case Modality::texture:
        return "texture";
    case Modality::normals:
        return "normals";
    case Modality::shape:
        return "shape";
    }
    return "?";
}

Modality modality_from_name(const std::string& name) {
    if (name == "texture")
        return Modality::texture;
    if (name == "normals")
        return Modality::normals;
    if (name == "shape")
        return Modality::shape;
    fail(errc::format_error, "unknown modality '" + name + "'");
}

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

} // namespace

double ModalityMap::coverage_fraction() const {
    std::size_t covered_count = 0;
    for (std::uint8_t m : mask)
        covered_count += m ? 1 : 0;
    return mask.empty() ? 0.0 : double(covered_count) / double(mask.size());
}

void ModalityMap::validate() const {
    require(power_of_two(height) && power_of_two(width), errc::contract_violation,
            "modality map: dimensions must be powers of two");
    require(channels >= 1, errc::contract_violation, "modality map: channels < 1");
    require(data.size() == std::size_t(height) * width * channels, errc::contract_violation,
            "modality map: data size mismatch");
    require(mask.size() == std::size_t(height) * width, errc::contract_violation,
            "modality map: mask size mismatch");
    require(coverage_fraction() > 0.0, errc::contract_violation, "modality map: empty coverage");
}

void ModalityBundle::validate() const {
    texture.validate();
    normals.validate();
    shape.validate();
    require(texture.height == normals.height && normals.height == shape.height &&
                texture.width == normals.width && normals.width == shape.width,
            errc::contract_violation, "bundle: maps disagree on resolution");
    require(texture.mask == normals.mask && normals.mask == shape.mask, errc::contract_violation,
            "bundle: maps disagree on coverage mask");
    require(texture.modality == Modality::texture && normals.modality == Modality::normals &&
                shape.modality == Modality::shape,
            errc::contract_violation, "bundle: modality tags out of order");
    for (float v : shape.data)
        require(v >= -1.0f - 1e-6f && v <= 1.0f + 1e-6f, errc::contract_violation,
                "bundle: shape value outside [-1,1]");
    for (int y = 0; y < normals.height; ++y)
        for (int x = 0; x < normals.width; ++x) {
            if (!normals.covered(y, x))
                continue;
            double ssq = 0.0;
            for (int c = 0; c < 3; ++c) {
                const double v = normals.at(y, x, c);
                require(v >= -1.0 - 1e-6 && v <= 1.0 + 1e-6, errc::contract_violation,
                        "bundle: normal component outside [-1,1]");
                ssq += v * v;
            }
            require(std::abs(std::sqrt(ssq) - 1.0) <= 1e-3, errc::contract_violation,
                    "bundle: covered normal is not unit length within 1e-3");
        }
    if (expression)
        expression->validate();
}

bool bit_equal(const ModalityMap& a, const ModalityMap& b) {
    return a.height == b.height && a.width == b.width && a.channels == b.channels &&
           a.modality == b.modality && a.mask == b.mask &&
           a.value_range[0] == b.value_range[0] && a.value_range[1] == b.value_range[1] &&
           a.data.size() == b.data.size() &&
           std::memcmp(a.data.data(), b.data.data(), a.data.size() * sizeof(float)) == 0;
}

bool bit_equal(const ModalityBundle& a, const ModalityBundle& b) {
    const bool labels_match =
        a.expression.has_value() == b.expression.has_value() &&
        (!a.expression || a.expression->p == b.expression->p);
    return labels_match && a.topology_id == b.topology_id && bit_equal(a.texture, b.texture) &&
           bit_equal(a.normals, b.normals) && bit_equal(a.shape, b.shape);
}

std::vector<float> bundle_concat(const ModalityBundle& bundle) {
    require(bundle.texture.channels == 3 && bundle.normals.channels == 3 && bundle.shape.channels == 3,
            errc::contract_violation, "bundle_concat: expected 3 channels per modality");
    require(bundle.texture.height == bundle.normals.height && bundle.normals.height == bundle.shape.height &&
                bundle.texture.width == bundle.normals.width && bundle.normals.width == bundle.shape.width,
            errc::invalid_argument, "bundle_concat: resolution mismatch between maps");
    const std::size_t pixels = std::size_t(bundle.height()) * bundle.width();
    std::vector<float> out(pixels * 9);
    for (std::size_t p = 0; p < pixels; ++p)
        for (int c = 0; c < 3; ++c) {
            out[p * 9 + c] = bundle.texture.data[p * 3 + c];
            out[p * 9 + 3 + c] = bundle.normals.data[p * 3 + c];
            out[p * 9 + 6 + c] = bundle.shape.data[p * 3 + c];
        }
    return out;
}

ModalityBundle bundle_split(const std::vector<float>& data, const ModalityBundle& like) {
    const std::size_t pixels = std::size_t(like.height()) * like.width();
    require(data.size() == pixels * 9, errc::invalid_argument, "bundle_split: data size mismatch");
    ModalityBundle out = like;
    for (std::size_t p = 0; p < pixels; ++p)
        for (int c = 0; c < 3; ++c) {
            out.texture.data[p * 3 + c] = data[p * 9 + c];
            out.normals.data[p * 3 + c] = data[p * 9 + 3 + c];
            out.shape.data[p * 3 + c] = data[p * 9 + 6 + c];
        }
    return out;
}

} // namespace tbgan::uvcodec
