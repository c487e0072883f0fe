/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/capi/capi.cpp
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
#if defined(_WIN32)
#define TBGAN_API __declspec(dllexport)
#else
#define TBGAN_API __attribute__((visibility("default")))
#endif

#include "tbgan/tbgan.h"

#include "arch/checkpoint.hpp"
#include "data/manifest.hpp"
#include "data/probe.hpp"
#include "data/run_config.hpp"
#include "data/synthetic.hpp"
#include "data/uv_extract.hpp"
#include "core/nn_ops.hpp"
#include "geometry/obj_io.hpp"
#include "geometry/procrustes.hpp"
#include "synthesis/synthesis.hpp"
#include "train/grad_check.hpp"
#include "uvcodec/bundle_io.hpp"

#include <Eigen/Geometry>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <numeric>

#ifndef TBGAN_BUILD_VERSION
#define TBGAN_BUILD_VERSION "unknown"
#endif

using namespace tbgan;

namespace {

thread_local std::string g_last_error;

tbgan_status status_of(errc code) {
    switch (code) {
    case errc::invalid_argument:
        return TBGAN_ERR_INVALID_ARGUMENT;
    case errc::degenerate_input:
        return TBGAN_ERR_DEGENERATE;
    case errc::unwrap_fold:
        return TBGAN_ERR_UNWRAP_FOLD;
    case errc::contract_violation:
        return TBGAN_ERR_CONTRACT;
    case errc::io_error:
        return TBGAN_ERR_IO;
    case errc::format_error:
        return TBGAN_ERR_FORMAT;
    case errc::truncated_file:
        return TBGAN_ERR_TRUNCATED;
    case errc::checksum_mismatch:
        return TBGAN_ERR_CHECKSUM;
    case errc::numeric_divergence:
        return TBGAN_ERR_NUMERIC;
    }
    return TBGAN_ERR_UNKNOWN;
}

template <typename Fn>
tbgan_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return TBGAN_OK;
    } catch (const error& e) {
        g_last_error = e.what();
        return status_of(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return TBGAN_ERR_UNKNOWN;
    } catch (...) {
        g_last_error = "unknown failure";
        return TBGAN_ERR_UNKNOWN;
    }
}

void require_arg(bool ok, const char* what) {
    require(ok, errc::invalid_argument, std::string("null or invalid argument: ") + what);
}

bool deterministic_env() {
    const char* env = std::getenv("TBGAN_DETERMINISTIC");
    return !env || std::string(env) != "0"; // deterministic unless explicitly disabled
}

arch::ExpressionLabel label_for_index(int index, int n) {
    return arch::ExpressionLabel::one_hot(index < 0 ? 0 : index, n);
}

} // namespace

struct tbgan_mesh {
    geometry::Mesh mesh;
    std::optional<geometry::UVLayout> layout;
    std::vector<Eigen::Vector3d> colors;
};

struct tbgan_bundle {
    uvcodec::ModalityBundle bundle;
};

struct tbgan_generator {
    arch::Generator generator;
    arch::Checkpoint meta;
};

extern "C" {

const char* tbgan_version(void) { return TBGAN_BUILD_VERSION; }

const char* tbgan_last_error(void) { return g_last_error.c_str(); }

/* ---------- meshes ---------- */

tbgan_status tbgan_mesh_load_obj(const char* path, tbgan_mesh** out_mesh) {
    return guarded([&] {
        require_arg(path && out_mesh, "tbgan_mesh_load_obj");
        auto contents = geometry::load_obj(path);
        auto* handle = new tbgan_mesh{std::move(contents.mesh), std::move(contents.layout),
                                      std::move(contents.colors)};
        *out_mesh = handle;
    });
}

tbgan_status tbgan_mesh_save_obj(const tbgan_mesh* mesh, const char* path) {
    return guarded([&] {
        require_arg(mesh && path, "tbgan_mesh_save_obj");
        geometry::save_obj(path, mesh->mesh, mesh->layout ? &*mesh->layout : nullptr,
                           mesh->colors.empty() ? nullptr : &mesh->colors);
    });
}

void tbgan_mesh_free(tbgan_mesh* mesh) { delete mesh; }

int32_t tbgan_mesh_vertex_count(const tbgan_mesh* mesh) { return mesh ? mesh->mesh.vertex_count() : 0; }

int32_t tbgan_mesh_face_count(const tbgan_mesh* mesh) { return mesh ? mesh->mesh.face_count() : 0; }

tbgan_status tbgan_mesh_vertices(const tbgan_mesh* mesh, double* xyz) {
    return guarded([&] {
        require_arg(mesh && xyz, "tbgan_mesh_vertices");
        for (int i = 0; i < mesh->mesh.vertex_count(); ++i)
            for (int c = 0; c < 3; ++c)
                xyz[3 * i + c] = mesh->mesh.vertices[std::size_t(i)](c);
    });
}

tbgan_status tbgan_mesh_faces(const tbgan_mesh* mesh, int32_t* indices) {
    return guarded([&] {
        require_arg(mesh && indices, "tbgan_mesh_faces");
        for (int i = 0; i < mesh->mesh.face_count(); ++i)
            for (int c = 0; c < 3; ++c)
                indices[3 * i + c] = mesh->mesh.faces[std::size_t(i)][std::size_t(c)];
    });
}

/* ---------- bundles ---------- */

tbgan_status tbgan_bundle_read(const char* dir, tbgan_bundle** out_bundle) {
    return guarded([&] {
        require_arg(dir && out_bundle, "tbgan_bundle_read");
        *out_bundle = new tbgan_bundle{uvcodec::read_bundle(dir)};
    });
}

tbgan_status tbgan_bundle_write(const tbgan_bundle* bundle, const char* dir) {
    return guarded([&] {
        require_arg(bundle && dir, "tbgan_bundle_write");
        uvcodec::write_bundle(bundle->bundle, dir);
    });
}

void tbgan_bundle_free(tbgan_bundle* bundle) { delete bundle; }

int32_t tbgan_bundle_resolution(const tbgan_bundle* bundle) {
    return bundle ? bundle->bundle.height() : 0;
}

tbgan_status tbgan_bundle_channels(const tbgan_bundle* bundle, const char* modality, float* data) {
    return guarded([&] {
        require_arg(bundle && modality && data, "tbgan_bundle_channels");
        const uvcodec::ModalityMap* map = nullptr;
        switch (uvcodec::modality_from_name(modality)) {
        case uvcodec::Modality::texture:
            map = &bundle->bundle.texture;
            break;
        case uvcodec::Modality::normals:
            map = &bundle->bundle.normals;
            break;
        case uvcodec::Modality::shape:
            map = &bundle->bundle.shape;
            break;
        }
        std::memcpy(data, map->data.data(), map->data.size() * sizeof(float));
    });
}

tbgan_status tbgan_bundle_expression(const tbgan_bundle* bundle, double* expression, int32_t capacity,
                                     int32_t* out_count) {
    return guarded([&] {
        require_arg(bundle && out_count, "tbgan_bundle_expression");
        if (!bundle->bundle.expression) {
            *out_count = 0;
            return;
        }
        const auto& p = bundle->bundle.expression->p;
        *out_count = int32_t(p.size());
        if (expression) {
            require(capacity >= int32_t(p.size()), errc::invalid_argument,
                    "tbgan_bundle_expression: buffer too small");
            std::copy(p.begin(), p.end(), expression);
        }
    });
}

/* ---------- generators ---------- */

tbgan_status tbgan_generator_load(const char* checkpoint_dir, tbgan_generator** out_generator) {
    return guarded([&] {
        require_arg(checkpoint_dir && out_generator, "tbgan_generator_load");
        arch::Checkpoint meta;
        auto generator = arch::load_generator(checkpoint_dir, &meta);
        *out_generator = new tbgan_generator{std::move(generator), std::move(meta)};
    });
}

void tbgan_generator_free(tbgan_generator* generator) { delete generator; }

int32_t tbgan_generator_latent_dim(const tbgan_generator* generator) {
    return generator ? generator->generator.config.latent_dim : 0;
}

int32_t tbgan_generator_resolution(const tbgan_generator* generator) {
    return generator ? generator->generator.config.output_resolution() : 0;
}

int32_t tbgan_generator_n_expressions(const tbgan_generator* generator) {
    return generator ? generator->generator.config.n_expressions : 0;
}

tbgan_status tbgan_generator_synthesize(const tbgan_generator* generator, const double* z,
                                        const double* expression, tbgan_bundle** out_bundle) {
    return guarded([&] {
        require_arg(generator && z && out_bundle, "tbgan_generator_synthesize");
        const auto& cfg = generator->generator.config;
        arch::LatentCode code;
        code.z.assign(z, z + cfg.latent_dim);
        arch::ExpressionLabel label;
        if (expression)
            label.p.assign(expression, expression + cfg.n_expressions);
        else
            label = arch::ExpressionLabel::one_hot(0, cfg.n_expressions);
        label.validate();
        *out_bundle = new tbgan_bundle{
            arch::generator_forward(generator->generator, code, label, {cfg.layers, 1.0})};
    });
}

/* ---------- command-level operations ---------- */

tbgan_status tbgan_dataset_synth(int32_t n_identities, int32_t per_identity, int32_t resolution,
                                 uint64_t seed, const char* out_dir) {
    return guarded([&] {
        require_arg(out_dir, "tbgan_dataset_synth");
        const auto t0 = std::chrono::steady_clock::now();
        auto manifest = data::make_synthetic_dataset(n_identities, per_identity, resolution, seed, out_dir);
        json params;
        params["n_identities"] = n_identities;
        params["per_identity"] = per_identity;
        params["resolution"] = resolution;
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        data::write_run_record(out_dir, "dataset-synth", json_hash(params), seed,
                               {"manifest.json", manifest.template_obj}, ms, deterministic_env());
    });
}

tbgan_status tbgan_uv_extract(const char* mesh_dir, const char* out_dir, int32_t resolution,
                              const char* labels_json) {
    return guarded([&] {
        require_arg(mesh_dir && out_dir, "tbgan_uv_extract");
        const auto t0 = std::chrono::steady_clock::now();
        std::optional<std::filesystem::path> labels;
        if (labels_json)
            labels = std::filesystem::path(labels_json);
        auto manifest = data::uv_extract(mesh_dir, out_dir, resolution, labels);
        json params;
        params["mesh_dir"] = mesh_dir;
        params["resolution"] = resolution;
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        data::write_run_record(out_dir, "uv-extract", json_hash(params), 0,
                               {"manifest.json", manifest.template_obj}, ms, deterministic_env());
    });
}

tbgan_status tbgan_train(const char* config_json_path, int32_t dry_run, uint64_t* out_generator_params,
                         uint64_t* out_discriminator_params) {
    return guarded([&] {
        require_arg(config_json_path, "tbgan_train");
        const auto t0 = std::chrono::steady_clock::now();
        auto cfg = data::RunConfig::load(config_json_path);
        cfg.validate_paths(/*need_dataset=*/true);

        auto trainer = training::Trainer::create(cfg.arch, cfg.train);
        if (out_generator_params)
            *out_generator_params = trainer.generator.params.total_scalars();
        if (out_discriminator_params)
            *out_discriminator_params = trainer.discriminator.params.total_scalars();
        if (dry_run)
            return;

        data::LoadedDataset dataset(cfg.dataset_dir);
        auto result = training::run_training(trainer, dataset, cfg.out_dir, {}, cfg.checkpoint_dir);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        json extra;
        extra["final_checkpoint"] = result.last_checkpoint.string();
        extra["steps"] = result.steps;
        data::write_run_record(cfg.out_dir, "train", cfg.hash(), cfg.train.seed,
                               {"train_log.csv", result.last_checkpoint.string()}, ms,
                               cfg.deterministic, extra);
    });
}

tbgan_status tbgan_sample(const char* checkpoint_dir, const char* dataset_dir, int32_t n, uint64_t seed,
                          int32_t expression, const char* out_dir) {
    return guarded([&] {
        require_arg(checkpoint_dir && dataset_dir && out_dir && n >= 0, "tbgan_sample");
        const auto t0 = std::chrono::steady_clock::now();
        auto generator = arch::load_generator(checkpoint_dir);
        data::LoadedDataset dataset(dataset_dir);

        std::vector<arch::ExpressionLabel> labels;
        if (expression >= 0) {
            labels.push_back(label_for_index(expression, generator.config.n_expressions));
        } else {
            for (int i = 0; i < n; ++i)
                labels.push_back(
                    arch::ExpressionLabel::one_hot(i % generator.config.n_expressions,
                                                   generator.config.n_expressions));
        }
        auto faces = synthesis::sample_faces(generator, n, labels, seed);

        std::filesystem::create_directories(out_dir);
        std::vector<std::string> outputs;
        json codes = json::array();
        for (std::size_t i = 0; i < faces.size(); ++i) {
            auto mesh = synthesis::bundle_to_mesh(faces[i].bundle, dataset.layout(),
                                                  dataset.face_template(), dataset.scale_factor());
            char name[32];
            std::snprintf(name, sizeof name, "face_%03zu", i);
            const auto obj = std::filesystem::path(out_dir) / (std::string(name) + ".obj");
            geometry::save_obj(obj, mesh.mesh, &dataset.layout(), &mesh.vertex_colors);
            uvcodec::write_bundle(faces[i].bundle, std::filesystem::path(out_dir) / name);
            outputs.push_back(std::string(name) + ".obj");
            outputs.push_back(name);
            codes.push_back(faces[i].code.z);
        }
        json params;
        params["checkpoint"] = checkpoint_dir;
        params["n"] = n;
        params["expression"] = expression;
        json extra;
        extra["latent_codes"] = std::move(codes);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        data::write_run_record(out_dir, "sample", json_hash(params), seed, outputs, ms,
                               deterministic_env(), extra);
    });
}

tbgan_status tbgan_interpolate(const char* checkpoint_dir, const char* dataset_dir, int32_t steps,
                               uint64_t seed, int32_t expression, const char* out_dir) {
    return guarded([&] {
        require_arg(checkpoint_dir && dataset_dir && out_dir, "tbgan_interpolate");
        const auto t0 = std::chrono::steady_clock::now();
        auto generator = arch::load_generator(checkpoint_dir);
        data::LoadedDataset dataset(dataset_dir);

        Rng rng(seed);
        arch::LatentCode z1, z2;
        z1.z.resize(std::size_t(generator.config.latent_dim));
        z2.z.resize(std::size_t(generator.config.latent_dim));
        for (auto& v : z1.z)
            v = rng.normal();
        for (auto& v : z2.z)
            v = rng.normal();
        const auto label = label_for_index(expression, generator.config.n_expressions);
        auto bundles = synthesis::interpolate_identities(generator, z1, z2, steps, label);

        std::filesystem::create_directories(out_dir);
        std::vector<std::string> outputs;
        for (std::size_t i = 0; i < bundles.size(); ++i) {
            auto mesh = synthesis::bundle_to_mesh(bundles[i], dataset.layout(), dataset.face_template(),
                                                  dataset.scale_factor());
            char name[32];
            std::snprintf(name, sizeof name, "step_%03zu", i);
            const auto obj = std::filesystem::path(out_dir) / (std::string(name) + ".obj");
            geometry::save_obj(obj, mesh.mesh, &dataset.layout(), &mesh.vertex_colors);
            uvcodec::write_bundle(bundles[i], std::filesystem::path(out_dir) / name);
            outputs.push_back(std::string(name) + ".obj");
        }
        json params;
        params["checkpoint"] = checkpoint_dir;
        params["steps"] = steps;
        params["expression"] = expression;
        json extra;
        extra["z1"] = z1.z;
        extra["z2"] = z2.z;
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        data::write_run_record(out_dir, "interpolate", json_hash(params), seed, outputs, ms,
                               deterministic_env(), extra);
    });
}

tbgan_status tbgan_head_models_build(uint64_t seed, int32_t n_identities, int32_t latent_rank,
                                     const char* out_dir) {
    return guarded([&] {
        require_arg(out_dir, "tbgan_head_models_build");
        const auto t0 = std::chrono::steady_clock::now();
        auto set = data::build_synthetic_head_models(n_identities, latent_rank, seed);
        headmodel::save_head_model_set(set, out_dir);
        json params;
        params["n_identities"] = n_identities;
        params["latent_rank"] = latent_rank;
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        data::write_run_record(out_dir, "head-models-build", json_hash(params), seed, {"meta.json"}, ms,
                               deterministic_env());
    });
}

tbgan_status tbgan_complete_head(const char* face_obj, const char* models_dir, const char* out_obj,
                                 double* out_face_region_rmse) {
    return guarded([&] {
        require_arg(face_obj && models_dir && out_obj, "tbgan_complete_head");
        auto set = headmodel::load_head_model_set(models_dir);
        auto face = geometry::load_obj(face_obj).mesh;
        auto completion = headmodel::complete_head(face, set.face_pca, set.head_pca, set.regression,
                                                   set.head_template, &set.face_to_head_vertex);
        geometry::save_obj(out_obj, completion.head);
        if (out_face_region_rmse)
            *out_face_region_rmse = completion.face_region_rmse;
    });
}

tbgan_status tbgan_verify(const char* level, double* out_max_rel_error) {
    return guarded([&] {
        require_arg(level && out_max_rel_error, "tbgan_verify");
        const std::string mode(level);
        require(mode == "quick" || mode == "full", errc::invalid_argument,
                "tbgan_verify: level must be 'quick' or 'full'");
        const int directions = mode == "quick" ? 8 : 16;

        arch::ArchConfig cfg;
        cfg.layers = 3;
        cfg.trunk_depth = 1;
        cfg.base_resolution = 2; // 16^2 maps
        cfg.latent_dim = 8;
        cfg.channel_schedule = arch::ArchConfig::default_schedule(3, 8, 4);
        auto generator = arch::build_generator(cfg, 101);
        auto discriminator = arch::build_discriminator(cfg, 102);

        Rng rng(7);
        std::vector<training::TrainingSample> batch;
        const int res = cfg.output_resolution();
        for (int i = 0; i < 2; ++i) {
            training::TrainingSample s;
            auto fill = [&](std::vector<float>& v) {
                v.resize(std::size_t(3) * res * res);
                for (auto& x : v)
                    x = float(rng.uniform(-0.8, 0.8));
            };
            fill(s.maps.texture);
            fill(s.maps.normals);
            fill(s.maps.shape);
            s.label = arch::ExpressionLabel::one_hot(i % 7, 7);
            s.maps.label.assign(s.label.p.begin(), s.label.p.end());
            batch.push_back(std::move(s));
        }

        training::TrainConfig tc;
        const arch::GrowthState growth{cfg.layers, 1.0};
        double worst = 0.0;
        {
            auto fn = training::generator_total_loss_fn(generator, discriminator, batch, tc, growth, 5);
            const auto params = training::flat_params(generator.params);
            worst = std::max(worst, training::grad_check(fn, params, directions, 1e-5, rng));
        }
        if (mode == "full") {
            auto fn =
                training::discriminator_total_loss_fn(generator, discriminator, batch, tc, growth, 6);
            const auto params = training::flat_params(discriminator.params);
            worst = std::max(worst, training::grad_check(fn, params, directions, 1e-5, rng));
        }

        // Analytic oracle checks ride along with the gradient harness.
        {
            // A linear critic's penalty is exactly (||w|| - 1)^2.
            const int cols = 16;
            std::vector<double> w(std::size_t(9) * cols, 0.0);
            for (auto& v : w)
                v = 0.3 * rng.normal();
            const double norm = std::sqrt(std::inner_product(w.begin(), w.end(), w.begin(), 0.0));
            training::Critic<double> linear = [&](nn::Tape<double>& tape, const arch::BranchVars& in) {
                nn::Var wt = tape.leaf(3, cols, std::vector<double>(w.begin(), w.begin() + 3 * cols));
                nn::Var wn =
                    tape.leaf(3, cols, std::vector<double>(w.begin() + 3 * cols, w.begin() + 6 * cols));
                nn::Var ws = tape.leaf(3, cols, std::vector<double>(w.begin() + 6 * cols, w.end()));
                nn::Var score =
                    tape.add(tape.add(nn::dot(tape, wt, in.texture), nn::dot(tape, wn, in.normals)),
                             nn::dot(tape, ws, in.shape));
                return training::CriticOut<double>{score, -1};
            };
            std::vector<training::PlanarSample<double>> real(2), fake(2);
            for (auto* side : {&real, &fake})
                for (auto& sample : *side)
                    for (auto* m : {&sample.texture, &sample.normals, &sample.shape}) {
                        m->resize(std::size_t(3) * cols);
                        for (auto& v : *m)
                            v = rng.uniform(-1.0, 1.0);
                    }
            nn::Tape<double> tape;
            const double gp =
                tape.scalar(training::gradient_penalty_node<double>(tape, linear, real, fake, rng));
            require(std::abs(gp - (norm - 1.0) * (norm - 1.0)) < 1e-6, errc::numeric_divergence,
                    "verify: linear-critic gradient penalty deviates from (||w||-1)^2");

            // Uniform softmax costs ln(n) against any simplex label.
            const double ce = training::cross_entropy(std::vector<double>(7, 0.5),
                                                      arch::ExpressionLabel::one_hot(2, 7).p);
            require(std::abs(ce - std::log(7.0)) < 1e-6, errc::numeric_divergence,
                    "verify: uniform-softmax cross entropy deviates from ln 7");

            // Closed-form alignment is exact on an exact similarity image.
            geometry::Mesh ref;
            for (int i = 0; i < 24; ++i)
                ref.vertices.emplace_back(rng.normal(), rng.normal(), rng.normal());
            for (int i = 1; i + 1 < 24; ++i)
                ref.faces.push_back({0, i, i + 1});
            geometry::ensure_topology_id(ref);
            geometry::SimilarityTransform t;
            t.scale = 1.7;
            t.rotation = Eigen::AngleAxisd(0.9, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
            t.translation = Eigen::Vector3d(0.3, -0.7, 2.0);
            const auto aligned = geometry::similarity_align_pair(geometry::apply_transform(ref, t), ref);
            require(aligned.residual < 1e-9, errc::numeric_divergence,
                    "verify: similarity alignment failed to invert an exact transform");
        }
        *out_max_rel_error = worst;
    });
}

} // extern "C"
