/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/inference.cpp
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
#include "arch/inference.hpp"

#include <algorithm>
#include <cmath>

namespace tbgan::arch {

template <typename T>
std::vector<T> map_to_planar(const uvcodec::ModalityMap& map) {
    require(map.channels == 3, errc::contract_violation, "map_to_planar: expected 3 channels");
    const std::size_t pixels = std::size_t(map.height) * map.width;
    std::vector<T> planar(3 * pixels);
    for (std::size_t p = 0; p < pixels; ++p)
        for (int c = 0; c < 3; ++c)
            planar[std::size_t(c) * pixels + p] = T(map.data[p * 3 + c]);
    return planar;
}

template std::vector<float> map_to_planar<float>(const uvcodec::ModalityMap&);
template std::vector<double> map_to_planar<double>(const uvcodec::ModalityMap&);

uvcodec::ModalityMap planar_to_map(const std::vector<float>& planar, int resolution,
                                   uvcodec::Modality modality) {
    const std::size_t pixels = std::size_t(resolution) * resolution;
    require(planar.size() == 3 * pixels, errc::contract_violation, "planar_to_map: size mismatch");
    uvcodec::ModalityMap map;
    map.height = resolution;
    map.width = resolution;
    map.channels = 3;
    map.modality = modality;
    map.data.resize(3 * pixels);
    map.mask.assign(pixels, 1);
    for (std::size_t p = 0; p < pixels; ++p)
        for (int c = 0; c < 3; ++c)
            map.data[p * 3 + c] = planar[std::size_t(c) * pixels + p];
    return map;
}

uvcodec::ModalityBundle generator_forward(const Generator& g, const LatentCode& z,
                                          const ExpressionLabel& label, const GrowthState& growth) {
    require(int(z.z.size()) == g.config.latent_dim, errc::contract_violation,
            "generator_forward: latent dimension mismatch");
    require(int(label.p.size()) == g.config.n_expressions, errc::contract_violation,
            "generator_forward: label dimension mismatch");
    z.validate();
    label.validate();

    nn::Tape<float> tape;
    auto leaves = make_param_leaves(tape, g.params);
    nn::Var zv = tape.leaf(g.config.latent_dim, 1, std::vector<float>(z.z.begin(), z.z.end()));
    nn::Var pv = tape.leaf(g.config.n_expressions, 1, std::vector<float>(label.p.begin(), label.p.end()));
    BranchVars maps = generator_graph(tape, g, leaves, zv, pv, growth);

    const int res = g.config.resolution_at(growth.level);
    uvcodec::ModalityBundle bundle;
    bundle.texture = planar_to_map(tape.value(maps.texture), res, uvcodec::Modality::texture);
    bundle.normals = planar_to_map(tape.value(maps.normals), res, uvcodec::Modality::normals);
    bundle.shape = planar_to_map(tape.value(maps.shape), res, uvcodec::Modality::shape);
    bundle.expression = label;

    for (float& v : bundle.shape.data)
        v = std::clamp(v, -1.0f, 1.0f);
    for (int y = 0; y < res; ++y)
        for (int x = 0; x < res; ++x) {
            double sq = 0.0;
            for (int c = 0; c < 3; ++c)
                sq += double(bundle.normals.at(y, x, c)) * bundle.normals.at(y, x, c);
            const double len = std::sqrt(sq);
            if (len > 1e-12)
                for (int c = 0; c < 3; ++c)
                    bundle.normals.at(y, x, c) = float(bundle.normals.at(y, x, c) / len);
            else
                bundle.normals.at(y, x, 2) = 1.0f;
        }
    return bundle;
}

DiscriminatorScore discriminator_forward(const Discriminator& d, const uvcodec::ModalityBundle& bundle,
                                         const GrowthState& growth) {
    const int res = d.config.resolution_at(growth.level);
    require(bundle.height() == res && bundle.width() == res, errc::contract_violation,
            "discriminator_forward: bundle resolution does not match growth state");

    nn::Tape<float> tape;
    auto leaves = make_param_leaves(tape, d.params);
    const std::size_t pixels = std::size_t(res) * res;
    BranchVars in;
    in.texture = tape.leaf(3, int(pixels), map_to_planar<float>(bundle.texture));
    in.normals = tape.leaf(3, int(pixels), map_to_planar<float>(bundle.normals));
    in.shape = tape.leaf(3, int(pixels), map_to_planar<float>(bundle.shape));
    DiscVars out = discriminator_graph(tape, d, leaves, in, growth);

    DiscriminatorScore score;
    score.score = tape.scalar(out.score);
    const auto& logits = tape.value(out.logits);
    score.logits.assign(logits.begin(), logits.end());
    return score;
}

} // namespace tbgan::arch
