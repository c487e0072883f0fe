/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/loop.cpp
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
#include "train/loop.hpp"

#include "core/nn_ops.hpp"

#include <cstdio>
#include <fstream>

namespace tbgan::training {

using nn::Tape;
using nn::Var;

Trainer Trainer::create(const arch::ArchConfig& arch_cfg, const TrainConfig& train_cfg) {
    arch_cfg.validate();
    train_cfg.validate();
    Trainer t;
    // Distinct deterministic seeds per role, all derived from the run seed.
    Rng seeder(train_cfg.seed);
    t.generator = arch::build_generator(arch_cfg, seeder.next_u64());
    t.discriminator = arch::build_discriminator(arch_cfg, seeder.next_u64());
    t.rng = Rng(seeder.next_u64());
    t.config = train_cfg;
    t.g_opt.init(t.generator.params.total_scalars());
    t.d_opt.init(t.discriminator.params.total_scalars());
    return t;
}

namespace {

std::vector<double> flatten_grads(const Tape<float>& tape, const std::vector<Var>& grads) {
    std::vector<double> flat;
    for (Var g : grads) {
        const auto& v = tape.value(g);
        flat.insert(flat.end(), v.begin(), v.end());
    }
    return flat;
}

std::vector<float> sample_latent(Rng& rng, int dim) {
    std::vector<float> z(std::size_t(dim), 0.0f);
    for (auto& v : z)
        v = float(rng.normal());
    return z;
}

} // namespace

void critic_update(Trainer& trainer, std::span<const TrainingSample> batch,
                   const arch::GrowthState& growth, LossReport& report) {
    require(!batch.empty(), errc::invalid_argument, "critic_update: empty batch");
    const TrainConfig& cfg = trainer.config;
    const arch::ArchConfig& acfg = trainer.generator.config;
    const int res = acfg.resolution_at(growth.level);
    {
        Tape<float> tape;
        auto d_leaves = arch::make_param_leaves(tape, trainer.discriminator.params);
        auto g_leaves = arch::make_param_leaves(tape, trainer.generator.params);

        std::vector<PlanarSample<float>> real_data(batch.size()), fake_data(batch.size());
        std::vector<Var> fake_scores, real_scores, class_terms;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            real_data[i] = batch[i].maps;

            Var z = tape.leaf(acfg.latent_dim, 1, sample_latent(trainer.rng, acfg.latent_dim));
            std::vector<float> label_f(batch[i].label.p.begin(), batch[i].label.p.end());
            Var p = tape.leaf(acfg.n_expressions, 1, label_f);
            auto maps = arch::generator_graph(tape, trainer.generator, g_leaves, z, p, growth);
            fake_data[i].texture = tape.value(maps.texture);
            fake_data[i].normals = tape.value(maps.normals);
            fake_data[i].shape = tape.value(maps.shape);
            fake_data[i].label = label_f;

            // Fakes enter the critic as data (detached from G).
            arch::BranchVars fake_in;
            fake_in.texture = tape.leaf(3, res * res, fake_data[i].texture);
            fake_in.normals = tape.leaf(3, res * res, fake_data[i].normals);
            fake_in.shape = tape.leaf(3, res * res, fake_data[i].shape);
            arch::BranchVars real_in;
            real_in.texture = tape.leaf(3, res * res, real_data[i].texture);
            real_in.normals = tape.leaf(3, res * res, real_data[i].normals);
            real_in.shape = tape.leaf(3, res * res, real_data[i].shape);

            auto fake_out = arch::discriminator_graph(tape, trainer.discriminator, d_leaves, fake_in, growth);
            auto real_out = arch::discriminator_graph(tape, trainer.discriminator, d_leaves, real_in, growth);
            fake_scores.push_back(fake_out.score);
            real_scores.push_back(real_out.score);
            Var ce = nn::cross_entropy_with_logits(tape, real_out.logits, p);
            if (cfg.classify_fakes)
                ce = tape.add(ce, nn::cross_entropy_with_logits(tape, fake_out.logits, p));
            class_terms.push_back(ce);
        }

        auto critic = critic_from<float>(trainer.discriminator, &d_leaves, growth);
        Var gp = gradient_penalty_node<float>(tape, critic, real_data, fake_data, trainer.rng);
        Var mean_fake = nn::mean_of(tape, fake_scores);
        Var mean_real = nn::mean_of(tape, real_scores);
        Var d_adv = tape.add(tape.sub(mean_fake, mean_real), tape.scale(gp, float(cfg.lambda_gp)));
        Var d_class = nn::mean_of(tape, class_terms);
        Var d_loss = tape.add(d_adv, tape.scale(d_class, float(cfg.class_weight)));

        auto grads = tape.gradients(d_loss, std::span<const Var>(d_leaves.vars));
        trainer.d_opt.step(trainer.discriminator.params, flatten_grads(tape, grads), cfg);

        report.d_adv = tape.scalar(d_adv);
        report.gp_term = tape.scalar(gp);
        report.d_class = tape.scalar(d_class);
        report.wasserstein_estimate = tape.scalar(mean_real) - tape.scalar(mean_fake);
    }
}

void generator_update(Trainer& trainer, std::span<const TrainingSample> batch,
                      const arch::GrowthState& growth, LossReport& report) {
    require(!batch.empty(), errc::invalid_argument, "generator_update: empty batch");
    const TrainConfig& cfg = trainer.config;
    const arch::ArchConfig& acfg = trainer.generator.config;
    {
        Tape<float> tape;
        auto d_leaves = arch::make_param_leaves(tape, trainer.discriminator.params);
        auto g_leaves = arch::make_param_leaves(tape, trainer.generator.params);

        std::vector<Var> scores, class_terms;
        for (std::size_t i = 0; i < batch.size(); ++i) {
            Var z = tape.leaf(acfg.latent_dim, 1, sample_latent(trainer.rng, acfg.latent_dim));
            std::vector<float> label_f(batch[i].label.p.begin(), batch[i].label.p.end());
            Var p = tape.leaf(acfg.n_expressions, 1, label_f);
            auto maps = arch::generator_graph(tape, trainer.generator, g_leaves, z, p, growth);
            auto out = arch::discriminator_graph(tape, trainer.discriminator, d_leaves, maps, growth);
            scores.push_back(out.score);
            class_terms.push_back(nn::cross_entropy_with_logits(tape, out.logits, p));
        }
        Var g_adv = tape.neg(nn::mean_of(tape, scores));
        Var g_class = nn::mean_of(tape, class_terms);
        Var g_loss = tape.add(g_adv, tape.scale(g_class, float(cfg.class_weight)));

        auto grads = tape.gradients(g_loss, std::span<const Var>(g_leaves.vars));
        trainer.g_opt.step(trainer.generator.params, flatten_grads(tape, grads), cfg);

        report.g_adv = tape.scalar(g_adv);
        report.g_class = tape.scalar(g_class);
    }
}

LossReport train_step(Trainer& trainer, std::span<const TrainingSample> batch,
                      const arch::GrowthState& growth) {
    require(!batch.empty(), errc::invalid_argument, "train_step: empty batch");
    const int res = trainer.generator.config.resolution_at(growth.level);
    for (const auto& s : batch)
        require(int(s.maps.texture.size()) == 3 * res * res, errc::contract_violation,
                "train_step: sample resolution does not match growth state");

    LossReport report;
    for (int critic_round = 0; critic_round < trainer.config.n_critic; ++critic_round)
        critic_update(trainer, batch, growth, report);
    generator_update(trainer, batch, growth, report);

    report.validate();
    trainer.step += 1;
    trainer.images_seen += (long long)(batch.size());
    return report;
}

namespace {

// Planar (3, h*w) helpers for progressive real-data preparation.
std::vector<float> avgpool2x_planar(const std::vector<float>& in, int h, int w) {
    const int oh = h / 2, ow = w / 2;
    std::vector<float> out(std::size_t(3) * oh * ow);
    for (int c = 0; c < 3; ++c) {
        const float* src = in.data() + std::size_t(c) * h * w;
        float* dst = out.data() + std::size_t(c) * oh * ow;
        for (int y = 0; y < oh; ++y)
            for (int x = 0; x < ow; ++x) {
                const float* r0 = src + std::size_t(2 * y) * w + 2 * x;
                const float* r1 = r0 + w;
                dst[std::size_t(y) * ow + x] = 0.25f * (r0[0] + r0[1] + r1[0] + r1[1]);
            }
    }
    return out;
}

std::vector<float> upsample2x_planar(const std::vector<float>& in, int h, int w) {
    std::vector<float> out(std::size_t(3) * 4 * h * w);
    for (int c = 0; c < 3; ++c) {
        const float* src = in.data() + std::size_t(c) * h * w;
        float* dst = out.data() + std::size_t(c) * 4 * h * w;
        for (int y = 0; y < 2 * h; ++y)
            for (int x = 0; x < 2 * w; ++x)
                dst[std::size_t(y) * 2 * w + x] = src[std::size_t(y / 2) * w + x / 2];
    }
    return out;
}

} // namespace

TrainingSample prepare_sample(const uvcodec::ModalityBundle& bundle, const arch::ArchConfig& cfg,
                              const arch::GrowthState& growth) {
    const int target = cfg.resolution_at(growth.level);
    require(bundle.height() == bundle.width(), errc::contract_violation, "prepare_sample: non-square bundle");
    require(bundle.height() >= target, errc::contract_violation,
            "prepare_sample: bundle resolution below the growth level");
    require(bundle.expression.has_value(), errc::invalid_argument,
            "prepare_sample: training bundles need expression labels");

    TrainingSample s;
    s.label = *bundle.expression;
    s.maps.label.assign(s.label.p.begin(), s.label.p.end());

    auto shrink = [&](const uvcodec::ModalityMap& map) {
        std::vector<float> planar = arch::map_to_planar<float>(map);
        int cur = bundle.height();
        while (cur > target) {
            planar = avgpool2x_planar(planar, cur, cur);
            cur /= 2;
        }
        if (growth.blend < 1.0 && target >= 2) {
            // Real-data fade: blend with the image seen through the previous level.
            auto coarse = upsample2x_planar(avgpool2x_planar(planar, target, target), target / 2, target / 2);
            for (std::size_t i = 0; i < planar.size(); ++i)
                planar[i] = float(growth.blend) * planar[i] + float(1.0 - growth.blend) * coarse[i];
        }
        return planar;
    };
    s.maps.texture = shrink(bundle.texture);
    s.maps.normals = shrink(bundle.normals);
    s.maps.shape = shrink(bundle.shape);
    return s;
}

RunResult run_training(Trainer& trainer, const BatchProvider& data, const std::filesystem::path& out_dir,
                       const std::function<void(long long, const LossReport&)>& on_step,
                       const std::filesystem::path& checkpoint_root) {
    require(data.size() > 0, errc::invalid_argument, "run_training: empty dataset");
    std::filesystem::create_directories(out_dir);
    const auto ckpt_root = checkpoint_root.empty() ? out_dir / "checkpoints" : checkpoint_root;
    std::filesystem::create_directories(ckpt_root);

    std::ofstream log(out_dir / "train_log.csv", std::ios::trunc);
    require(log.good(), errc::io_error, "run_training: cannot open training log");
    log << "step,level,blend,g_adv,d_adv,gp_term,g_class,d_class,wasserstein_estimate\n";

    RunResult result;
    auto save_both = [&](const arch::GrowthState& growth) {
        char name[32];
        std::snprintf(name, sizeof name, "step_%06lld", trainer.step);
        const auto dir = ckpt_root / name;
        arch::Checkpoint meta;
        meta.config = trainer.generator.config;
        meta.growth = growth;
        meta.step = trainer.step;
        meta.images_seen = trainer.images_seen;
        meta.kind = "generator";
        meta.blobs["adam"] = trainer.g_opt.serialize();
        arch::save_checkpoint(dir / "generator", meta, trainer.generator.params);
        meta.kind = "discriminator";
        meta.blobs["adam"] = trainer.d_opt.serialize();
        arch::save_checkpoint(dir / "discriminator", meta, trainer.discriminator.params);
        result.last_checkpoint = dir;
        return dir;
    };

    arch::GrowthState growth = arch::growth_schedule(trainer.images_seen, trainer.generator.config,
                                                     trainer.config.fade_images,
                                                     trainer.config.stable_images);
    while (trainer.images_seen < trainer.config.total_images) {
        growth = arch::growth_schedule(trainer.images_seen, trainer.generator.config,
                                       trainer.config.fade_images, trainer.config.stable_images);
        std::vector<TrainingSample> batch;
        batch.reserve(std::size_t(trainer.config.batch_size));
        for (int b = 0; b < trainer.config.batch_size; ++b)
            batch.push_back(prepare_sample(data.bundle(std::size_t(trainer.rng.below(data.size()))),
                                           trainer.generator.config, growth));

        LossReport report;
        try {
            report = train_step(trainer, batch, growth);
        } catch (const error& e) {
            if (e.code() == errc::numeric_divergence) {
                const std::string at = result.last_checkpoint.empty()
                                           ? "none"
                                           : result.last_checkpoint.string();
                fail(errc::numeric_divergence,
                     std::string(e.what()) + " (aborting at step " + std::to_string(trainer.step) +
                         "; last good checkpoint: " + at + ")");
            }
            throw;
        }

        char row[256];
        std::snprintf(row, sizeof row, "%lld,%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", trainer.step,
                      growth.level, growth.blend, report.g_adv, report.d_adv, report.gp_term,
                      report.g_class, report.d_class, report.wasserstein_estimate);
        log << row;
        result.wasserstein_trace.emplace_back(trainer.step, report.wasserstein_estimate);
        result.last_report = report;
        result.steps = trainer.step;
        if (on_step)
            on_step(trainer.step, report);

        if (trainer.config.checkpoint_interval > 0 && trainer.step % trainer.config.checkpoint_interval == 0)
            save_both(growth);
    }
    save_both(growth);
    log.flush();
    return result;
}

} // namespace tbgan::training
