/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/arch/graphs.cpp
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
#include "arch/graphs.hpp"

#include "core/nn_ops.hpp"

#include <string>

namespace tbgan::arch {

using nn::Tape;
using nn::Var;

template <typename T>
TapeLeaves<T> make_param_leaves(Tape<T>& tape, const ParamStore& store) {
    TapeLeaves<T> leaves;
    leaves.vars.reserve(store.count());
    for (std::size_t i = 0; i < store.count(); ++i) {
        const Param& p = store.at(int(i));
        std::vector<T> cast(p.value.size());
        for (std::size_t j = 0; j < cast.size(); ++j)
            cast[j] = T(p.value[j]);
        leaves.vars.push_back(tape.leaf(p.rows, p.cols, std::move(cast)));
    }
    return leaves;
}

namespace {

template <typename T>
struct LayerCtx {
    Tape<T>& tape;
    const ParamStore& store;
    const TapeLeaves<T>& leaves;
    const ArchConfig& cfg;

    Var weight(const std::string& name) const {
        const int idx = store.index_of(name + ".w");
        const double s = store.at(idx).runtime_scale;
        Var w = leaves[idx];
        return s == 1.0 ? w : tape.scale(w, T(s));
    }
    Var bias(const std::string& name) const { return leaves[store.index_of(name + ".b")]; }

    Var conv(const std::string& name, Var x, int res, int k) const {
        return nn::conv2d(tape, x, weight(name), bias(name), res, res, k);
    }
    Var dense(const std::string& name, Var x) const {
        return nn::dense(tape, weight(name), bias(name), x);
    }
    Var act(Var x) const { return nn::leaky_relu(tape, x, T(cfg.leaky_slope)); }
    Var pn(Var x) const { return nn::pixel_norm(tape, x, T(cfg.pixelnorm_eps)); }
};

} // namespace

template <typename T>
BranchVars generator_graph(Tape<T>& tape, const Generator& g, const TapeLeaves<T>& leaves, Var z,
                           Var label, const GrowthState& growth) {
    const ArchConfig& cfg = g.config;
    const int level = growth.level;
    require(level >= 0 && level <= cfg.layers, errc::contract_violation,
            "generator_graph: growth level outside [0, layers]");
    require(growth.blend >= 1.0 || level >= 1, errc::contract_violation,
            "generator_graph: cannot fade below level 0");
    require(tape.rows(z) == cfg.latent_dim && tape.cols(z) == 1, errc::contract_violation,
            "generator_graph: latent dimension mismatch");
    require(tape.rows(label) == cfg.n_expressions && tape.cols(label) == 1, errc::contract_violation,
            "generator_graph: label dimension mismatch");
    LayerCtx<T> ctx{tape, g.params, leaves, cfg};

    // Expression conditioning enters by concatenation with the latent.
    Var zin = cfg.normalize_latents ? nn::vector_pixel_norm(tape, z, T(cfg.pixelnorm_eps)) : z;
    Var lin = cfg.label_gain == 1.0 ? label : tape.scale(label, T(cfg.label_gain));
    Var input = tape.concat_rows(zin, lin);

    const int base = cfg.base_resolution;
    Var x = ctx.dense("g.base.dense", input);
    x = tape.reshape(x, cfg.channels_at(0), base * base);
    x = ctx.pn(ctx.act(x));
    x = ctx.pn(ctx.act(ctx.conv("g.base.conv", x, base, 3)));

    // Trunk features by level; branch chains continue past trunk_depth.
    std::vector<Var> trunk_feat{x};
    const int trunk_top = std::min(level, cfg.trunk_depth);
    for (int s = 1; s <= trunk_top; ++s) {
        Var up = tape.upsample2x(trunk_feat.back(), cfg.resolution_at(s - 1), cfg.resolution_at(s - 1));
        Var y = ctx.conv("g.trunk" + std::to_string(s) + ".conv", up, cfg.resolution_at(s), 3);
        trunk_feat.push_back(ctx.pn(ctx.act(y)));
    }

    BranchVars out;
    Var* slots[3] = {&out.texture, &out.normals, &out.shape};
    for (int b = 0; b < 3; ++b) {
        const std::string branch = kBranchNames[b];
        // Feature at each level along this branch's route.
        std::vector<Var> route = trunk_feat;
        for (int s = cfg.trunk_depth + 1; s <= level; ++s) {
            Var up = tape.upsample2x(route.back(), cfg.resolution_at(s - 1), cfg.resolution_at(s - 1));
            Var y = ctx.conv("g." + branch + std::to_string(s) + ".conv", up, cfg.resolution_at(s), 3);
            route.push_back(ctx.pn(ctx.act(y)));
        }

        Var rgb = ctx.conv("g." + branch + ".torgb" + std::to_string(level), route.back(),
                           cfg.resolution_at(level), 1);
        if (growth.blend < 1.0) {
            Var prev = ctx.conv("g." + branch + ".torgb" + std::to_string(level - 1),
                                route[std::size_t(level - 1)], cfg.resolution_at(level - 1), 1);
            Var prev_up = tape.upsample2x(prev, cfg.resolution_at(level - 1), cfg.resolution_at(level - 1));
            rgb = tape.add(tape.scale(rgb, T(growth.blend)), tape.scale(prev_up, T(1.0 - growth.blend)));
        }
        *slots[b] = rgb;
    }
    return out;
}

template <typename T>
DiscVars discriminator_graph(Tape<T>& tape, const Discriminator& d, const TapeLeaves<T>& leaves,
                             const BranchVars& input, const GrowthState& growth) {
    const ArchConfig& cfg = d.config;
    const int level = growth.level;
    require(level >= 0 && level <= cfg.layers, errc::contract_violation,
            "discriminator_graph: growth level outside [0, layers]");
    require(growth.blend >= 1.0 || level >= 1, errc::contract_violation,
            "discriminator_graph: cannot fade below level 0");
    const int res = cfg.resolution_at(level);
    const Var inputs[3] = {input.texture, input.normals, input.shape};
    for (Var v : inputs)
        require(tape.rows(v) == 3 && tape.cols(v) == res * res, errc::contract_violation,
                "discriminator_graph: input resolution does not match growth state");
    LayerCtx<T> ctx{tape, d.params, leaves, cfg};
    const bool fading = growth.blend < 1.0;

    auto from_rgb = [&](int b, int lvl, Var x) {
        return ctx.act(ctx.conv("d." + std::string(kBranchNames[b]) + ".fromrgb" + std::to_string(lvl), x,
                                cfg.resolution_at(lvl), 1));
    };
    auto merge = [&](int lvl, Var a, Var b, Var c) {
        Var cat = tape.concat_rows(tape.concat_rows(a, b), c);
        return ctx.act(ctx.conv("d.merge" + std::to_string(lvl), cat, cfg.resolution_at(lvl), 1));
    };

    Var h = -1; // merged trunk feature at level min(level, trunk_depth)
    if (level > cfg.trunk_depth) {
        Var feats[3];
        for (int b = 0; b < 3; ++b) {
            Var hb = from_rgb(b, level, inputs[b]);
            for (int s = level; s >= cfg.trunk_depth + 1; --s) {
                const int r = cfg.resolution_at(s);
                Var y = ctx.act(ctx.conv("d." + std::string(kBranchNames[b]) + std::to_string(s) + ".conv",
                                         hb, r, 3));
                hb = tape.scale(tape.sumpool2x(y, r, r), T(0.25));
                if (s == level && fading) {
                    Var pooled = tape.scale(tape.sumpool2x(inputs[b], res, res), T(0.25));
                    Var skip = from_rgb(b, level - 1, pooled);
                    hb = tape.add(tape.scale(hb, T(growth.blend)), tape.scale(skip, T(1.0 - growth.blend)));
                }
            }
            feats[b] = hb;
        }
        h = merge(cfg.trunk_depth, feats[0], feats[1], feats[2]);
    } else {
        h = merge(level, from_rgb(0, level, inputs[0]), from_rgb(1, level, inputs[1]),
                  from_rgb(2, level, inputs[2]));
    }

    for (int s = std::min(level, cfg.trunk_depth); s >= 1; --s) {
        const int r = cfg.resolution_at(s);
        Var y = ctx.act(ctx.conv("d.trunk" + std::to_string(s) + ".conv", h, r, 3));
        h = tape.scale(tape.sumpool2x(y, r, r), T(0.25));
        if (level <= cfg.trunk_depth && s == level && fading) {
            Var skips[3];
            for (int b = 0; b < 3; ++b) {
                Var pooled = tape.scale(tape.sumpool2x(inputs[b], res, res), T(0.25));
                skips[b] = from_rgb(b, level - 1, pooled);
            }
            Var skip = merge(level - 1, skips[0], skips[1], skips[2]);
            h = tape.add(tape.scale(h, T(growth.blend)), tape.scale(skip, T(1.0 - growth.blend)));
        }
    }

    const int base_px = cfg.base_resolution * cfg.base_resolution;
    Var flat = tape.reshape(h, cfg.channels_at(0) * base_px, 1);
    Var head = ctx.act(ctx.dense("d.head.dense", flat));
    // Global channel means of the raw input maps, stacked into a 9-vector.
    Var stats = -1;
    for (int b = 0; b < 3; ++b) {
        Var m = tape.scale(tape.transpose(tape.row_sum(inputs[b])), T(1) / T(res * res));
        Var col = tape.reshape(m, 3, 1);
        stats = b == 0 ? col : tape.concat_rows(stats, col);
    }
    DiscVars out;
    out.score = ctx.dense("d.score", head);
    out.logits = ctx.dense("d.logits", tape.concat_rows(head, stats));
    return out;
}

template TapeLeaves<float> make_param_leaves<float>(Tape<float>&, const ParamStore&);
template TapeLeaves<double> make_param_leaves<double>(Tape<double>&, const ParamStore&);
template BranchVars generator_graph<float>(Tape<float>&, const Generator&, const TapeLeaves<float>&, Var,
                                           Var, const GrowthState&);
template BranchVars generator_graph<double>(Tape<double>&, const Generator&, const TapeLeaves<double>&,
                                            Var, Var, const GrowthState&);
template DiscVars discriminator_graph<float>(Tape<float>&, const Discriminator&, const TapeLeaves<float>&,
                                             const BranchVars&, const GrowthState&);
template DiscVars discriminator_graph<double>(Tape<double>&, const Discriminator&,
                                              const TapeLeaves<double>&, const BranchVars&,
                                              const GrowthState&);

} // namespace tbgan::arch
