/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/grad_check.cpp
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
#include "train/grad_check.hpp"

#include "core/nn_ops.hpp"

#include <cmath>

namespace tbgan::training {

using nn::Tape;
using nn::Var;

std::vector<double> flat_params(const arch::ParamStore& store) {
    std::vector<double> flat;
    flat.reserve(store.total_scalars());
    for (std::size_t i = 0; i < store.count(); ++i)
        flat.insert(flat.end(), store.at(int(i)).value.begin(), store.at(int(i)).value.end());
    return flat;
}

void set_flat_params(arch::ParamStore& store, std::span<const double> flat) {
    require(flat.size() == store.total_scalars(), errc::contract_violation,
            "set_flat_params: size mismatch");
    std::size_t k = 0;
    for (std::size_t i = 0; i < store.count(); ++i) {
        auto& value = store.at(int(i)).value;
        std::copy(flat.begin() + std::ptrdiff_t(k), flat.begin() + std::ptrdiff_t(k + value.size()),
                  value.begin());
        k += value.size();
    }
}

double grad_check(const DifferentiableScalar& fn, std::span<const double> params, int n_directions,
                  double step, Rng& rng) {
    require(n_directions >= 1 && step > 0.0, errc::invalid_argument, "grad_check: bad arguments");
    const std::vector<double> base(params.begin(), params.end());
    const std::vector<double> grad = fn.gradient(base);
    require(grad.size() == base.size(), errc::contract_violation, "grad_check: gradient size mismatch");
    double grad_norm = 0.0;
    for (double g : grad)
        grad_norm += g * g;
    grad_norm = std::sqrt(grad_norm);

    double worst = 0.0;
    std::vector<double> up(base.size()), down(base.size()), dir(base.size());
    for (int k = 0; k < n_directions; ++k) {
        double norm = 0.0;
        for (auto& v : dir) {
            v = rng.normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        for (auto& v : dir)
            v /= norm;

        double analytic = 0.0;
        for (std::size_t i = 0; i < base.size(); ++i) {
            analytic += grad[i] * dir[i];
            up[i] = base[i] + step * dir[i];
            down[i] = base[i] - step * dir[i];
        }
        const double fd = (fn.value(up) - fn.value(down)) / (2.0 * step);
        // Relative to the directional scale; a typical direction carries
        // ||grad|| / sqrt(n), which keeps zero-gradient cases meaningful.
        const double denom =
            std::max({std::abs(fd), std::abs(analytic), grad_norm / std::sqrt(double(base.size())), 1e-8});
        worst = std::max(worst, std::abs(fd - analytic) / denom);
    }
    return worst;
}

namespace {

struct FrozenBatch {
    std::vector<std::vector<double>> z;      // latent per sample
    std::vector<std::vector<double>> labels; // conditioning per sample
    std::vector<double> alphas;              // GP mixing per sample
};

FrozenBatch freeze_randomness(const arch::ArchConfig& cfg, std::size_t batch, std::uint64_t seed) {
    FrozenBatch fb;
    Rng rng(seed);
    for (std::size_t i = 0; i < batch; ++i) {
        std::vector<double> z(std::size_t(cfg.latent_dim));
        for (auto& v : z)
            v = rng.normal();
        fb.z.push_back(std::move(z));
        fb.alphas.push_back(rng.uniform());
    }
    return fb;
}

template <typename F>
DifferentiableScalar make_fn(F&& build) {
    // build(params, want_grad, grad_out) -> value
    auto shared = std::make_shared<std::decay_t<F>>(std::forward<F>(build));
    DifferentiableScalar fn;
    fn.value = [shared](std::span<const double> p) {
        std::vector<double> unused;
        return (*shared)(p, false, unused);
    };
    fn.gradient = [shared](std::span<const double> p) {
        std::vector<double> grad;
        (*shared)(p, true, grad);
        return grad;
    };
    return fn;
}

} // namespace

DifferentiableScalar generator_total_loss_fn(const arch::Generator& g, const arch::Discriminator& d,
                                             std::span<const TrainingSample> batch,
                                             const TrainConfig& cfg, const arch::GrowthState& growth,
                                             std::uint64_t seed) {
    require(!batch.empty(), errc::invalid_argument, "generator_total_loss_fn: empty batch");
    auto fb = freeze_randomness(g.config, batch.size(), seed);
    auto g_copy = std::make_shared<arch::Generator>(g);
    auto d_copy = std::make_shared<arch::Discriminator>(d);
    auto samples = std::make_shared<std::vector<TrainingSample>>(batch.begin(), batch.end());

    return make_fn([=](std::span<const double> params, bool want_grad, std::vector<double>& grad_out) {
        set_flat_params(g_copy->params, params);
        Tape<double> tape;
        auto g_leaves = arch::make_param_leaves(tape, g_copy->params);
        auto d_leaves = arch::make_param_leaves(tape, d_copy->params);

        std::vector<Var> scores, class_terms;
        for (std::size_t i = 0; i < samples->size(); ++i) {
            Var z = tape.leaf(g_copy->config.latent_dim, 1, fb.z[i]);
            std::vector<double> lbl((*samples)[i].label.p.begin(), (*samples)[i].label.p.end());
            Var p = tape.leaf(g_copy->config.n_expressions, 1, lbl);
            auto maps = arch::generator_graph(tape, *g_copy, g_leaves, z, p, growth);
            auto out = arch::discriminator_graph(tape, *d_copy, d_leaves, maps, growth);
            scores.push_back(out.score);
            class_terms.push_back(nn::cross_entropy_with_logits(tape, out.logits, p));
        }
        Var loss = tape.add(tape.neg(nn::mean_of(tape, scores)),
                            tape.scale(nn::mean_of(tape, class_terms), cfg.class_weight));
        if (want_grad) {
            auto grads = tape.gradients(loss, std::span<const Var>(g_leaves.vars));
            grad_out.clear();
            for (Var v : grads) {
                const auto& val = tape.value(v);
                grad_out.insert(grad_out.end(), val.begin(), val.end());
            }
        }
        return tape.scalar(loss);
    });
}

DifferentiableScalar discriminator_total_loss_fn(const arch::Generator& g, const arch::Discriminator& d,
                                                 std::span<const TrainingSample> batch,
                                                 const TrainConfig& cfg, const arch::GrowthState& growth,
                                                 std::uint64_t seed) {
    require(!batch.empty(), errc::invalid_argument, "discriminator_total_loss_fn: empty batch");
    auto fb = freeze_randomness(g.config, batch.size(), seed);
    auto g_copy = std::make_shared<arch::Generator>(g);
    auto d_copy = std::make_shared<arch::Discriminator>(d);
    auto samples = std::make_shared<std::vector<TrainingSample>>(batch.begin(), batch.end());

    // Fakes are a fixed function of (G, z); precompute once in float64.
    auto fakes = std::make_shared<std::vector<PlanarSample<double>>>();
    {
        Tape<double> tape;
        auto g_leaves = arch::make_param_leaves(tape, g_copy->params);
        for (std::size_t i = 0; i < samples->size(); ++i) {
            Var z = tape.leaf(g_copy->config.latent_dim, 1, fb.z[i]);
            std::vector<double> lbl((*samples)[i].label.p.begin(), (*samples)[i].label.p.end());
            Var p = tape.leaf(g_copy->config.n_expressions, 1, lbl);
            auto maps = arch::generator_graph(tape, *g_copy, g_leaves, z, p, growth);
            PlanarSample<double> f;
            f.texture = tape.value(maps.texture);
            f.normals = tape.value(maps.normals);
            f.shape = tape.value(maps.shape);
            f.label = lbl;
            fakes->push_back(std::move(f));
        }
    }

    return make_fn([=](std::span<const double> params, bool want_grad, std::vector<double>& grad_out) {
        set_flat_params(d_copy->params, params);
        Tape<double> tape;
        auto d_leaves = arch::make_param_leaves(tape, d_copy->params);

        std::vector<Var> fake_scores, real_scores, class_terms;
        std::vector<PlanarSample<double>> real_data;
        for (std::size_t i = 0; i < samples->size(); ++i) {
            const auto& s = (*samples)[i];
            PlanarSample<double> r;
            r.texture.assign(s.maps.texture.begin(), s.maps.texture.end());
            r.normals.assign(s.maps.normals.begin(), s.maps.normals.end());
            r.shape.assign(s.maps.shape.begin(), s.maps.shape.end());
            r.label.assign(s.label.p.begin(), s.label.p.end());
            real_data.push_back(std::move(r));
        }
        const int cols = int(real_data[0].texture.size() / 3);
        for (std::size_t i = 0; i < samples->size(); ++i) {
            arch::BranchVars fake_in{tape.leaf(3, cols, (*fakes)[i].texture),
                                     tape.leaf(3, cols, (*fakes)[i].normals),
                                     tape.leaf(3, cols, (*fakes)[i].shape)};
            arch::BranchVars real_in{tape.leaf(3, cols, real_data[i].texture),
                                     tape.leaf(3, cols, real_data[i].normals),
                                     tape.leaf(3, cols, real_data[i].shape)};
            auto fake_out = arch::discriminator_graph(tape, *d_copy, d_leaves, fake_in, growth);
            auto real_out = arch::discriminator_graph(tape, *d_copy, d_leaves, real_in, growth);
            fake_scores.push_back(fake_out.score);
            real_scores.push_back(real_out.score);
            Var p = tape.leaf(g_copy->config.n_expressions, 1, real_data[i].label);
            class_terms.push_back(tape.add(nn::cross_entropy_with_logits(tape, real_out.logits, p),
                                           nn::cross_entropy_with_logits(tape, fake_out.logits, p)));
        }

        // Penalty with frozen per-sample alphas.
        std::vector<Var> penalties;
        auto critic = critic_from<double>(*d_copy, &d_leaves, growth);
        for (std::size_t i = 0; i < samples->size(); ++i) {
            const double alpha = fb.alphas[i];
            PlanarSample<double> mixed;
            auto mix = [&](const std::vector<double>& f, const std::vector<double>& r) {
                std::vector<double> m(f.size());
                for (std::size_t j = 0; j < f.size(); ++j)
                    m[j] = alpha * f[j] + (1.0 - alpha) * r[j];
                return m;
            };
            mixed.texture = mix((*fakes)[i].texture, real_data[i].texture);
            mixed.normals = mix((*fakes)[i].normals, real_data[i].normals);
            mixed.shape = mix((*fakes)[i].shape, real_data[i].shape);
            arch::BranchVars in{tape.leaf(3, cols, mixed.texture), tape.leaf(3, cols, mixed.normals),
                                tape.leaf(3, cols, mixed.shape)};
            auto out = critic(tape, in);
            const Var wrt[3] = {in.texture, in.normals, in.shape};
            auto gin = tape.gradients(out.score, std::span<const Var>(wrt, 3));
            Var ssq = tape.add(tape.add(tape.sum(tape.mul(gin[0], gin[0])),
                                        tape.sum(tape.mul(gin[1], gin[1]))),
                               tape.sum(tape.mul(gin[2], gin[2])));
            Var dev = tape.add_scalar(tape.sqrt(tape.add_scalar(ssq, 1e-16)), -1.0);
            penalties.push_back(tape.mul(dev, dev));
        }

        Var d_adv = tape.add(tape.sub(nn::mean_of(tape, fake_scores), nn::mean_of(tape, real_scores)),
                             tape.scale(nn::mean_of(tape, penalties), cfg.lambda_gp));
        Var loss = tape.add(d_adv, tape.scale(nn::mean_of(tape, class_terms), cfg.class_weight));
        if (want_grad) {
            auto grads = tape.gradients(loss, std::span<const Var>(d_leaves.vars));
            grad_out.clear();
            for (Var v : grads) {
                const auto& val = tape.value(v);
                grad_out.insert(grad_out.end(), val.begin(), val.end());
            }
        }
        return tape.scalar(loss);
    });
}

} // namespace tbgan::training
