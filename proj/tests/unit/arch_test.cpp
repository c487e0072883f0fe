/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/unit/arch_test.cpp
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
#include <doctest.h>

#include "arch/checkpoint.hpp"
#include "arch/inference.hpp"
#include "core/nn_ops.hpp"
#include "core/rng.hpp"

#include <cmath>
#include <filesystem>

using namespace tbgan;
using arch::ArchConfig;
using arch::ExpressionLabel;
using arch::GrowthState;
using arch::LatentCode;

namespace {

ArchConfig small_config(int layers = 4, int trunk_depth = 2) {
    ArchConfig c;
    c.layers = layers;
    c.trunk_depth = trunk_depth;
    c.base_resolution = 4;
    c.latent_dim = 16;
    c.channel_schedule = ArchConfig::default_schedule(layers, 16, 8);
    c.n_expressions = 7;
    return c;
}

LatentCode random_latent(Rng& rng, int dim) {
    LatentCode z;
    for (int i = 0; i < dim; ++i)
        z.z.push_back(rng.normal());
    return z;
}

uvcodec::ModalityBundle random_input_bundle(Rng& rng, int resolution, int n_expr) {
    const std::size_t pixels = std::size_t(resolution) * resolution;
    auto make_map = [&](uvcodec::Modality m) {
        std::vector<float> planar(3 * pixels);
        for (auto& v : planar)
            v = float(rng.uniform(-0.9, 0.9));
        return arch::planar_to_map(planar, resolution, m);
    };
    uvcodec::ModalityBundle b;
    b.texture = make_map(uvcodec::Modality::texture);
    b.normals = make_map(uvcodec::Modality::normals);
    b.shape = make_map(uvcodec::Modality::shape);
    b.expression = ExpressionLabel::one_hot(int(rng.below(std::uint64_t(n_expr))), n_expr);
    return b;
}

} // namespace

TEST_CASE("growth: schedule boundaries, midpoint blend and terminal level") {
    ArchConfig c = small_config();
    const long long stable = 800, fade = 600;

    auto g0 = arch::growth_schedule(0, c, fade, stable);
    CHECK(g0.level == 0);
    CHECK(g0.blend == 1.0);

    auto mid = arch::growth_schedule(stable + fade / 2, c, fade, stable);
    CHECK(mid.level == 1);
    CHECK(mid.blend == doctest::Approx(0.5));

    auto far = arch::growth_schedule(100 * (stable + fade), c, fade, stable);
    CHECK(far.level == c.layers);
    CHECK(far.blend == 1.0);

    auto instant = arch::growth_schedule(0, c, 0, 0);
    CHECK(instant.level == c.layers);
    CHECK(instant.blend == 1.0);
}

TEST_CASE("growth: (level, blend) is lexicographically non-decreasing over 1000 probes") {
    ArchConfig c = small_config();
    const long long stable = 350, fade = 270;
    int prev_level = -1;
    double prev_blend = 2.0;
    for (int i = 0; i < 1000; ++i) {
        auto g = arch::growth_schedule(7LL * i, c, fade, stable);
        if (prev_level >= 0) {
            const bool ok = g.level > prev_level || (g.level == prev_level && g.blend >= prev_blend - 1e-12);
            CHECK(ok);
        }
        prev_level = g.level;
        prev_blend = g.blend;
    }
    CHECK(prev_level == c.layers);
}

TEST_CASE("generator: construction is seed-deterministic and count is config-pure") {
    ArchConfig c = small_config();
    auto g1 = arch::build_generator(c, 99);
    auto g2 = arch::build_generator(c, 99);
    auto g3 = arch::build_generator(c, 100);
    CHECK(g1.params.values_checksum() == g2.params.values_checksum());
    CHECK(g1.params.values_checksum() != g3.params.values_checksum());
    CHECK(g1.params.total_scalars() == g3.params.total_scalars());

    // L=4, d=2, base=4: trunk tops out at 16^2 features, branches emit 64^2.
    CHECK(c.resolution_at(c.trunk_depth) == 16);
    CHECK(c.output_resolution() == 64);
    CHECK_THROWS_AS(arch::build_generator([&] {
        ArchConfig bad = c;
        bad.trunk_depth = bad.layers;
        return bad;
    }(), 1), error);
}

TEST_CASE("generator: forward is deterministic, z-sensitive and level-shaped") {
    ArchConfig c = small_config();
    auto g = arch::build_generator(c, 7);
    Rng rng(1);
    LatentCode z1 = random_latent(rng, c.latent_dim);
    LatentCode z2 = random_latent(rng, c.latent_dim);
    ExpressionLabel label = ExpressionLabel::one_hot(3, 7);

    auto b1 = arch::generator_forward(g, z1, label, {c.layers, 1.0});
    auto b1_again = arch::generator_forward(g, z1, label, {c.layers, 1.0});
    CHECK(uvcodec::bit_equal(b1, b1_again));

    auto b2 = arch::generator_forward(g, z2, label, {c.layers, 1.0});
    float max_diff = 0.0f;
    for (std::size_t i = 0; i < b1.texture.data.size(); ++i)
        max_diff = std::max(max_diff, std::abs(b1.texture.data[i] - b2.texture.data[i]));
    CHECK(max_diff > 0.0f);

    for (int level = 0; level <= c.layers; ++level) {
        auto b = arch::generator_forward(g, z1, label, {level, 1.0});
        CHECK(b.height() == c.resolution_at(level));
        CHECK(b.width() == c.resolution_at(level));
        CHECK(b.texture.channels == 3);
        CHECK(b.normals.channels == 3);
        CHECK(b.shape.channels == 3);
    }

    // Mid-fade states evaluate too (blend mixes the two newest heads).
    auto faded = arch::generator_forward(g, z1, label, {2, 0.25});
    CHECK(faded.height() == c.resolution_at(2));
}

TEST_CASE("generator: reference config (L=8, d=6) emits 1024^2 maps") {
    ArchConfig c;
    c.layers = 8;
    c.trunk_depth = 6;
    c.base_resolution = 4;
    c.latent_dim = 8;
    c.channel_schedule = {8, 8, 8, 8, 4, 4, 2, 2, 2};
    c.n_expressions = 7;
    auto g = arch::build_generator(c, 5);
    Rng rng(2);
    auto bundle = arch::generator_forward(g, random_latent(rng, 8), ExpressionLabel::one_hot(0, 7),
                                          {8, 1.0});
    CHECK(bundle.height() == 1024);
    CHECK(bundle.width() == 1024);
}

TEST_CASE("discriminator: mirrored arithmetic, determinism and head shapes") {
    ArchConfig c = small_config(); // L=4, d=2
    auto d1 = arch::build_discriminator(c, 11);
    auto d2 = arch::build_discriminator(c, 11);
    CHECK(d1.params.values_checksum() == d2.params.values_checksum());

    // Branch stage at level 3 maps ch3 -> ch2 features; the trunk merge at
    // level d sees 3x the branch output channels.
    const auto& conv = d1.params.named("d.texture3.conv.w");
    CHECK(conv.rows == c.channels_at(2));
    CHECK(conv.cols == c.channels_at(3) * 9);
    const auto& merge = d1.params.named("d.merge2.w");
    CHECK(merge.cols == 3 * c.channels_at(2));
    CHECK(merge.rows == c.channels_at(2));

    Rng rng(3);
    auto bundle = random_input_bundle(rng, c.output_resolution(), 7);
    auto s1 = arch::discriminator_forward(d1, bundle, {c.layers, 1.0});
    auto s2 = arch::discriminator_forward(d1, bundle, {c.layers, 1.0});
    CHECK(std::isfinite(s1.score));
    REQUIRE(s1.logits.size() == 7);
    CHECK(s1.score == s2.score); // duplicated sample, identical score
    CHECK(s1.logits == s2.logits);

    double z = 0.0, mx = s1.logits[0];
    for (double v : s1.logits)
        mx = std::max(mx, v);
    for (double v : s1.logits)
        z += std::exp(v - mx);
    double total = 0.0;
    for (double v : s1.logits)
        total += std::exp(v - mx) / z;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));

    auto faded = arch::discriminator_forward(d1, random_input_bundle(rng, c.resolution_at(2), 7), {2, 0.4});
    CHECK(std::isfinite(faded.score));
    auto low = arch::discriminator_forward(d1, random_input_bundle(rng, c.resolution_at(1), 7), {1, 1.0});
    CHECK(std::isfinite(low.score));
}

TEST_CASE("discriminator: score derivative w.r.t. an input pixel matches finite differences") {
    ArchConfig c = small_config(3, 1);
    c.base_resolution = 2; // 16^2 output keeps the FD probe cheap
    auto d = arch::build_discriminator(c, 21);
    Rng rng(4);
    auto bundle = random_input_bundle(rng, c.output_resolution(), 7);
    const GrowthState growth{c.layers, 1.0};

    // Analytic gradient through the differentiation facility (float32).
    nn::Tape<float> tape;
    auto leaves = arch::make_param_leaves(tape, d.params);
    const std::size_t pixels = std::size_t(bundle.height()) * bundle.width();
    arch::BranchVars in;
    in.texture = tape.leaf(3, int(pixels), arch::map_to_planar<float>(bundle.texture));
    in.normals = tape.leaf(3, int(pixels), arch::map_to_planar<float>(bundle.normals));
    in.shape = tape.leaf(3, int(pixels), arch::map_to_planar<float>(bundle.shape));
    auto out = arch::discriminator_graph(tape, d, leaves, in, growth);
    nn::Var g_shape = tape.gradient(out.score, in.shape);

    const int probe_y = 7, probe_x = 3, probe_c = 1;
    const double analytic = tape.value(g_shape)[std::size_t(probe_c) * pixels +
                                                std::size_t(probe_y) * bundle.width() + probe_x];

    const float h = 0.05f;
    auto perturbed = [&](float delta) {
        auto b = bundle;
        b.shape.at(probe_y, probe_x, probe_c) += delta;
        return arch::discriminator_forward(d, b, growth).score;
    };
    const double fd = (perturbed(h) - perturbed(-h)) / (2.0 * double(h));
    CHECK(std::abs(fd - analytic) <= 1e-3 * std::max({std::abs(fd), std::abs(analytic), 1e-3}));
}

TEST_CASE("generator: mean output has nonzero gradient w.r.t. z at initialization") {
    ArchConfig c = small_config(3, 1);
    auto g = arch::build_generator(c, 31);
    nn::Tape<double> tape;
    auto leaves = arch::make_param_leaves(tape, g.params);
    Rng rng(5);
    std::vector<double> zv(std::size_t(c.latent_dim));
    for (auto& v : zv)
        v = rng.normal();
    nn::Var z = tape.leaf(c.latent_dim, 1, zv);
    std::vector<double> pv(7, 1.0 / 7.0);
    nn::Var p = tape.leaf(7, 1, pv);
    auto maps = arch::generator_graph(tape, g, leaves, z, p, {c.layers, 1.0});
    nn::Var mean = tbgan::nn::mean_all(
        tape, tape.add(tape.add(maps.texture, maps.normals), maps.shape));
    nn::Var gz = tape.gradient(mean, z);
    double norm = 0.0;
    for (double v : tape.value(gz))
        norm += v * v;
    CHECK(norm > 0.0);
}

TEST_CASE("checkpoint: load(save(model)) reproduces bit-identical forward outputs") {
    ArchConfig c = small_config(3, 1);
    auto g = arch::build_generator(c, 77);
    Rng rng(6);
    LatentCode z = random_latent(rng, c.latent_dim);
    ExpressionLabel label = ExpressionLabel::one_hot(2, 7);
    auto before = arch::generator_forward(g, z, label, {c.layers, 1.0});

    const auto dir = std::filesystem::temp_directory_path() / "tbgan_ckpt_rt";
    std::filesystem::remove_all(dir);
    arch::Checkpoint meta;
    meta.kind = "generator";
    meta.config = c;
    meta.growth = {c.layers, 1.0};
    meta.step = 123;
    meta.blobs["adam"] = {1.0, 2.0, 3.5};
    arch::save_checkpoint(dir, meta, g.params);

    arch::Checkpoint loaded_meta;
    auto loaded = arch::load_generator(dir, &loaded_meta);
    CHECK(loaded_meta.step == 123);
    CHECK(loaded_meta.blobs.at("adam") == std::vector<double>{1.0, 2.0, 3.5});
    auto after = arch::generator_forward(loaded, z, label, {c.layers, 1.0});
    CHECK(uvcodec::bit_equal(before, after));
    std::filesystem::remove_all(dir);
}
