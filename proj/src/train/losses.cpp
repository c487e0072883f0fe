/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/losses.cpp
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
#include "train/losses.hpp"

#include "core/nn_ops.hpp"

#include <cmath>

namespace tbgan::training {

using nn::Tape;
using nn::Var;

namespace {

template <typename T>
int planar_cols(const PlanarSample<T>& s) {
    require(s.texture.size() == s.normals.size() && s.normals.size() == s.shape.size() &&
                s.texture.size() % 3 == 0,
            errc::invalid_argument, "planar sample: malformed map buffers");
    return int(s.texture.size() / 3);
}

template <typename T>
arch::BranchVars leaf_sample(Tape<T>& tape, const PlanarSample<T>& s) {
    const int cols = planar_cols(s);
    arch::BranchVars v;
    v.texture = tape.leaf(3, cols, s.texture);
    v.normals = tape.leaf(3, cols, s.normals);
    v.shape = tape.leaf(3, cols, s.shape);
    return v;
}

} // namespace

template <typename T>
Critic<T> critic_from(const arch::Discriminator& d, const arch::TapeLeaves<T>* leaves,
                      const arch::GrowthState& growth) {
    return [&d, leaves, growth](Tape<T>& tape, const arch::BranchVars& in) {
        auto out = arch::discriminator_graph(tape, d, *leaves, in, growth);
        return CriticOut<T>{out.score, out.logits};
    };
}

template Critic<float> critic_from<float>(const arch::Discriminator&, const arch::TapeLeaves<float>*,
                                          const arch::GrowthState&);
template Critic<double> critic_from<double>(const arch::Discriminator&, const arch::TapeLeaves<double>*,
                                            const arch::GrowthState&);

template <typename T>
Var gradient_penalty_node(Tape<T>& tape, const Critic<T>& critic, std::span<const PlanarSample<T>> real,
                          std::span<const PlanarSample<T>> fake, Rng& rng) {
    require(!real.empty() && real.size() == fake.size(), errc::invalid_argument,
            "gradient_penalty: real and fake batches must be non-empty and same size");
    std::vector<Var> penalties;
    penalties.reserve(real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
        const int cols = planar_cols(real[i]);
        require(cols == planar_cols(fake[i]), errc::invalid_argument,
                "gradient_penalty: real/fake shape mismatch");
        const T alpha = T(rng.uniform());

        // Mixed input assembled on data so the penalty is a function of the
        // critic parameters only (the fake side enters detached).
        PlanarSample<T> mixed;
        auto mix = [&](const std::vector<T>& f, const std::vector<T>& r) {
            std::vector<T> m(f.size());
            for (std::size_t j = 0; j < f.size(); ++j)
                m[j] = alpha * f[j] + (T(1) - alpha) * r[j];
            return m;
        };
        mixed.texture = mix(fake[i].texture, real[i].texture);
        mixed.normals = mix(fake[i].normals, real[i].normals);
        mixed.shape = mix(fake[i].shape, real[i].shape);

        arch::BranchVars in = leaf_sample(tape, mixed);
        CriticOut<T> out = critic(tape, in);
        const Var wrt[3] = {in.texture, in.normals, in.shape};
        auto grads = tape.gradients(out.score, std::span<const Var>(wrt, 3));

        Var ssq = tape.add(tape.add(tape.sum(tape.mul(grads[0], grads[0])),
                                    tape.sum(tape.mul(grads[1], grads[1]))),
                           tape.sum(tape.mul(grads[2], grads[2])));
        Var norm = tape.sqrt(tape.add_scalar(ssq, T(1e-16)));
        Var dev = tape.add_scalar(norm, T(-1));
        penalties.push_back(tape.mul(dev, dev));
    }
    return nn::mean_of(tape, penalties);
}

template Var gradient_penalty_node<float>(Tape<float>&, const Critic<float>&,
                                          std::span<const PlanarSample<float>>,
                                          std::span<const PlanarSample<float>>, Rng&);
template Var gradient_penalty_node<double>(Tape<double>&, const Critic<double>&,
                                           std::span<const PlanarSample<double>>,
                                           std::span<const PlanarSample<double>>, Rng&);

double gradient_penalty(const arch::Discriminator& d, std::span<const PlanarSample<float>> real,
                        std::span<const PlanarSample<float>> fake, const arch::GrowthState& growth,
                        Rng& rng) {
    Tape<float> tape;
    auto leaves = arch::make_param_leaves(tape, d.params);
    auto critic = critic_from<float>(d, &leaves, growth);
    Var node = gradient_penalty_node<float>(tape, critic, real, fake, rng);
    const double value = tape.scalar(node);
    require(std::isfinite(value), errc::numeric_divergence,
            "gradient_penalty: non-finite value (diverged inputs or parameters)");
    return value;
}

double cross_entropy(const std::vector<double>& logits, const std::vector<double>& label) {
    require(logits.size() == label.size() && !logits.empty(), errc::invalid_argument,
            "cross_entropy: dimension mismatch");
    double total = 0.0;
    for (double v : label) {
        require(v >= -1e-9, errc::invalid_argument, "cross_entropy: negative label weight");
        total += v;
    }
    require(std::abs(total - 1.0) <= 1e-6, errc::invalid_argument,
            "cross_entropy: label must lie on the simplex within 1e-6");
    double mx = logits[0];
    for (double v : logits)
        mx = std::max(mx, v);
    double z = 0.0;
    for (double v : logits)
        z += std::exp(v - mx);
    const double lse = std::log(z) + mx;
    double dotp = 0.0;
    for (std::size_t i = 0; i < logits.size(); ++i)
        dotp += label[i] * logits[i];
    return lse - dotp; // sum(label) == 1
}

std::pair<double, double>
expression_condition_losses(const std::vector<std::vector<double>>& real_logits,
                            const std::vector<std::vector<double>>& fake_logits,
                            const std::vector<arch::ExpressionLabel>& labels) {
    require(real_logits.size() == labels.size() && fake_logits.size() == labels.size() &&
                !labels.empty(),
            errc::invalid_argument, "expression_condition_losses: batch size mismatch");
    double real_ce = 0.0, fake_ce = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        labels[i].validate();
        real_ce += cross_entropy(real_logits[i], labels[i].p);
        fake_ce += cross_entropy(fake_logits[i], labels[i].p);
    }
    real_ce /= double(labels.size());
    fake_ce /= double(labels.size());
    return {fake_ce, real_ce + fake_ce}; // (g_class, d_class)
}

template <typename T>
LossReport adversarial_report_with_critic(Tape<T>& tape, const Critic<T>& critic,
                                          std::span<const PlanarSample<T>> real,
                                          std::span<const PlanarSample<T>> fake, double lambda_gp,
                                          Rng& rng) {
    require(!real.empty() && real.size() == fake.size(), errc::invalid_argument,
            "adversarial losses: batches must be non-empty and same size");

    double score_real = 0.0, score_fake = 0.0, d_class = 0.0, g_class = 0.0;
    bool has_logits = true;
    for (std::size_t i = 0; i < real.size(); ++i) {
        auto real_out = critic(tape, leaf_sample(tape, real[i]));
        auto fake_out = critic(tape, leaf_sample(tape, fake[i]));
        score_real += tape.scalar(real_out.score);
        score_fake += tape.scalar(fake_out.score);
        if (real_out.logits < 0 || real[i].label.empty()) {
            has_logits = false;
            continue;
        }
        const auto& rl = tape.value(real_out.logits);
        const auto& fl = tape.value(fake_out.logits);
        std::vector<double> label(real[i].label.begin(), real[i].label.end());
        std::vector<double> fake_label(fake[i].label.begin(), fake[i].label.end());
        d_class += cross_entropy(std::vector<double>(rl.begin(), rl.end()), label) +
                   cross_entropy(std::vector<double>(fl.begin(), fl.end()), fake_label);
        g_class += cross_entropy(std::vector<double>(fl.begin(), fl.end()), fake_label);
    }
    const double n = double(real.size());

    LossReport report;
    report.gp_term = tape.scalar(gradient_penalty_node<T>(tape, critic, real, fake, rng));
    report.g_adv = -score_fake / n;
    report.d_adv = score_fake / n - score_real / n + lambda_gp * report.gp_term;
    report.wasserstein_estimate = score_real / n - score_fake / n;
    report.g_class = has_logits ? g_class / n : 0.0;
    report.d_class = has_logits ? d_class / n : 0.0;
    report.validate();
    return report;
}

template LossReport adversarial_report_with_critic<float>(Tape<float>&, const Critic<float>&,
                                                          std::span<const PlanarSample<float>>,
                                                          std::span<const PlanarSample<float>>, double,
                                                          Rng&);
template LossReport adversarial_report_with_critic<double>(Tape<double>&, const Critic<double>&,
                                                           std::span<const PlanarSample<double>>,
                                                           std::span<const PlanarSample<double>>,
                                                           double, Rng&);

LossReport adversarial_losses(const arch::Discriminator& d, const arch::Generator& g,
                              std::span<const PlanarSample<float>> real,
                              std::span<const std::vector<double>> z_batch,
                              std::span<const arch::ExpressionLabel> p_batch, double lambda_gp,
                              const arch::GrowthState& growth, Rng& rng) {
    require(z_batch.size() == real.size() && p_batch.size() == real.size(), errc::invalid_argument,
            "adversarial_losses: z/p batches must match the real batch size");

    // Generate the fake batch once, then hand values to the critic report.
    Tape<float> gen_tape;
    auto g_leaves = arch::make_param_leaves(gen_tape, g.params);
    std::vector<PlanarSample<float>> fake(real.size());
    for (std::size_t i = 0; i < real.size(); ++i) {
        p_batch[i].validate();
        Var z = gen_tape.leaf(g.config.latent_dim, 1,
                              std::vector<float>(z_batch[i].begin(), z_batch[i].end()));
        Var p = gen_tape.leaf(g.config.n_expressions, 1,
                              std::vector<float>(p_batch[i].p.begin(), p_batch[i].p.end()));
        auto maps = arch::generator_graph(gen_tape, g, g_leaves, z, p, growth);
        fake[i].texture = gen_tape.value(maps.texture);
        fake[i].normals = gen_tape.value(maps.normals);
        fake[i].shape = gen_tape.value(maps.shape);
        fake[i].label.assign(p_batch[i].p.begin(), p_batch[i].p.end());
    }

    Tape<float> tape;
    auto d_leaves = arch::make_param_leaves(tape, d.params);
    auto critic = critic_from<float>(d, &d_leaves, growth);
    return adversarial_report_with_critic<float>(tape, critic, real, fake, lambda_gp, rng);
}

} // namespace tbgan::training
