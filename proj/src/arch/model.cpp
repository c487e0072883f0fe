/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/model.cpp
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
#include "arch/model.hpp"

#include "core/error.hpp"

#include <cmath>
#include <cstring>

namespace tbgan::arch {

int ParamStore::add(std::string name, int rows, int cols, double runtime_scale, Rng& rng, bool zero_init) {
    require(index_.find(name) == index_.end(), errc::contract_violation,
            "param store: duplicate parameter '" + name + "'");
    Param p;
    p.name = std::move(name);
    p.rows = rows;
    p.cols = cols;
    p.runtime_scale = runtime_scale;
    p.value.resize(std::size_t(rows) * cols);
    if (!zero_init)
        for (auto& v : p.value)
            v = rng.normal();
    const int idx = int(params_.size());
    index_.emplace(p.name, idx);
    params_.push_back(std::move(p));
    return idx;
}

int ParamStore::index_of(const std::string& name) const {
    auto it = index_.find(name);
    require(it != index_.end(), errc::contract_violation, "param store: unknown parameter '" + name + "'");
    return it->second;
}

std::size_t ParamStore::total_scalars() const {
    std::size_t total = 0;
    for (const auto& p : params_)
        total += p.value.size();
    return total;
}

std::uint64_t ParamStore::values_checksum() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& p : params_)
        for (double v : p.value) {
            std::uint64_t bits;
            std::memcpy(&bits, &v, 8);
            for (int i = 0; i < 8; ++i) {
                h ^= (bits >> (8 * i)) & 0xffu;
                h *= 0x100000001b3ULL;
            }
        }
    return h;
}

namespace {

// He constant applied at runtime; linear output heads use gain 1.
double wscale(const ArchConfig& c, int fan_in, bool output_head) {
    if (!c.use_wscale)
        return 1.0;
    const double gain = output_head ? 1.0 : std::sqrt(2.0);
    return gain / std::sqrt(double(fan_in));
}

void add_conv(ParamStore& store, const ArchConfig& c, Rng& rng, const std::string& name, int ch_out,
              int ch_in, int k, bool output_head = false) {
    store.add(name + ".w", ch_out, ch_in * k * k, wscale(c, ch_in * k * k, output_head), rng, false);
    store.add(name + ".b", ch_out, 1, 1.0, rng, true);
}

void add_dense(ParamStore& store, const ArchConfig& c, Rng& rng, const std::string& name, int out_dim,
               int in_dim, bool output_head = false) {
    store.add(name + ".w", out_dim, in_dim, wscale(c, in_dim, output_head), rng, false);
    store.add(name + ".b", out_dim, 1, 1.0, rng, true);
}

} // namespace

Generator build_generator(const ArchConfig& config, std::uint64_t seed) {
    config.validate();
    Generator g;
    g.config = config;
    Rng rng(seed);

    const int base_px = config.base_resolution * config.base_resolution;
    const int input_dim = config.latent_dim + config.n_expressions;
    add_dense(g.params, config, rng, "g.base.dense", config.channels_at(0) * base_px, input_dim);
    add_conv(g.params, config, rng, "g.base.conv", config.channels_at(0), config.channels_at(0), 3);
    for (int s = 1; s <= config.trunk_depth; ++s)
        add_conv(g.params, config, rng, "g.trunk" + std::to_string(s) + ".conv", config.channels_at(s),
                 config.channels_at(s - 1), 3);
    for (const char* branch : kBranchNames) {
        for (int s = config.trunk_depth + 1; s <= config.layers; ++s)
            add_conv(g.params, config, rng, "g." + std::string(branch) + std::to_string(s) + ".conv",
                     config.channels_at(s), config.channels_at(s - 1), 3);
        for (int level = 0; level <= config.layers; ++level)
            add_conv(g.params, config, rng, "g." + std::string(branch) + ".torgb" + std::to_string(level),
                     3, config.channels_at(level), 1, /*output_head=*/true);
    }
    return g;
}

Discriminator build_discriminator(const ArchConfig& config, std::uint64_t seed) {
    config.validate();
    Discriminator d;
    d.config = config;
    Rng rng(seed);

    for (const char* branch : kBranchNames) {
        for (int level = 0; level <= config.layers; ++level)
            add_conv(d.params, config, rng,
                     "d." + std::string(branch) + ".fromrgb" + std::to_string(level),
                     config.channels_at(level), 3, 1);
        for (int s = config.layers; s >= config.trunk_depth + 1; --s)
            add_conv(d.params, config, rng, "d." + std::string(branch) + std::to_string(s) + ".conv",
                     config.channels_at(s - 1), config.channels_at(s), 3);
    }
    for (int level = 0; level <= config.trunk_depth; ++level)
        add_conv(d.params, config, rng, "d.merge" + std::to_string(level), config.channels_at(level),
                 3 * config.channels_at(level), 1);
    for (int s = config.trunk_depth; s >= 1; --s)
        add_conv(d.params, config, rng, "d.trunk" + std::to_string(s) + ".conv", config.channels_at(s - 1),
                 config.channels_at(s), 3);

    const int base_px = config.base_resolution * config.base_resolution;
    add_dense(d.params, config, rng, "d.head.dense", config.channels_at(0), config.channels_at(0) * base_px);
    add_dense(d.params, config, rng, "d.score", 1, config.channels_at(0), /*output_head=*/true);
    // The classification head also sees the nine global channel means of the
    // input maps, which keeps its gradient informative for statistics that
    // carry the label (mean color and friends).
    add_dense(d.params, config, rng, "d.logits", config.n_expressions, config.channels_at(0) + 9,
              /*output_head=*/true);
    return d;
}

} // namespace tbgan::arch
