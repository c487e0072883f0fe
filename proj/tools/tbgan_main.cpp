/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tools/tbgan_main.cpp
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
#include <tbgan/tbgan.h>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <string>

namespace {

// 0 = success, 2 = config/usage error, 3 = numeric divergence, 1 = other.
int exit_code_for(tbgan_status status) {
    switch (status) {
    case TBGAN_OK:
        return 0;
    case TBGAN_ERR_INVALID_ARGUMENT:
    case TBGAN_ERR_FORMAT:
        return 2;
    case TBGAN_ERR_NUMERIC:
        return 3;
    default:
        return 1;
    }
}

int report(tbgan_status status) {
    if (status != TBGAN_OK)
        std::fprintf(stderr, "error: %s\n", tbgan_last_error());
    return exit_code_for(status);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tbgan: coupled 3D face synthesis (texture, normals, shape) with a trunk-branch GAN"};
    app.set_version_flag("--version", std::string(tbgan_version()));
    app.require_subcommand(1);

    // ---- dataset-synth ----
    auto* synth = app.add_subcommand("dataset-synth", "Generate the procedural training dataset");
    int synth_identities = 10, synth_per = 56, synth_res = 32;
    std::uint64_t synth_seed = 0;
    std::string synth_out;
    synth->add_option("--identities", synth_identities, "Number of identities")->capture_default_str();
    synth->add_option("--per-identity", synth_per, "Samples per identity (expression = index mod 7)")
        ->capture_default_str();
    synth->add_option("--resolution", synth_res, "Map resolution (power of two)")->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generation seed")->capture_default_str();
    synth->add_option("--out", synth_out, "Output dataset directory")->required();

    // ---- uv-extract ----
    auto* extract = app.add_subcommand("uv-extract", "Convert dense-correspondence OBJ meshes to bundles");
    std::string extract_meshes, extract_out, extract_labels;
    int extract_res = 128;
    extract->add_option("--meshes", extract_meshes, "Directory of .obj meshes")->required();
    extract->add_option("--out", extract_out, "Output dataset directory")->required();
    extract->add_option("--resolution", extract_res, "Map resolution (power of two)")
        ->capture_default_str();
    extract->add_option("--labels", extract_labels, "labels.json mapping file names to expressions");

    // ---- train ----
    auto* train = app.add_subcommand("train", "Train the trunk-branch GAN from a run-config JSON");
    std::string train_config;
    bool train_dry = false;
    train->add_option("--config", train_config, "Run configuration JSON")->required();
    train->add_flag("--dry-run", train_dry, "Validate config and build models without training");

    // ---- sample ----
    auto* sample = app.add_subcommand("sample", "Sample novel faces from a trained generator");
    std::string sample_ckpt, sample_dataset, sample_out;
    int sample_n = 4, sample_expr = -1;
    std::uint64_t sample_seed = 0;
    sample->add_option("--checkpoint", sample_ckpt, "Generator checkpoint directory")->required();
    sample->add_option("--dataset", sample_dataset, "Dataset directory (template/layout/scale)")
        ->required();
    sample->add_option("--n", sample_n, "Number of faces")->capture_default_str();
    sample->add_option("--seed", sample_seed, "Latent seed")->capture_default_str();
    sample->add_option("--expression", sample_expr,
                       "Expression index; negative cycles through all labels")
        ->capture_default_str();
    sample->add_option("--out", sample_out, "Output directory")->required();

    // ---- interpolate ----
    auto* interp = app.add_subcommand("interpolate", "Evenly spaced latent interpolation between two faces");
    std::string interp_ckpt, interp_dataset, interp_out;
    int interp_steps = 8, interp_expr = 0;
    std::uint64_t interp_seed = 0;
    interp->add_option("--checkpoint", interp_ckpt, "Generator checkpoint directory")->required();
    interp->add_option("--dataset", interp_dataset, "Dataset directory (template/layout/scale)")
        ->required();
    interp->add_option("--steps", interp_steps, "Number of evenly spaced samples (>= 2)")
        ->capture_default_str();
    interp->add_option("--seed", interp_seed, "Seed for both endpoint latents")->capture_default_str();
    interp->add_option("--expression", interp_expr, "Expression index held fixed along the path")
        ->capture_default_str();
    interp->add_option("--out", interp_out, "Output directory")->required();

    // ---- complete-head ----
    auto* head = app.add_subcommand("complete-head", "Extend a face mesh to a full head");
    std::string head_face, head_models, head_out;
    bool head_build = false;
    std::uint64_t head_seed = 0;
    int head_identities = 32, head_rank = 10;
    head->add_option("--face", head_face, "Face mesh (.obj)")->required();
    head->add_option("--models", head_models, "Head model set directory")->required();
    head->add_option("--out", head_out, "Output head mesh (.obj)")->required();
    head->add_flag("--build-models", head_build,
                   "Build the synthetic model set into --models if it does not exist");
    head->add_option("--seed", head_seed, "Seed for --build-models")->capture_default_str();
    head->add_option("--identities", head_identities, "Corpus size for --build-models")
        ->capture_default_str();
    head->add_option("--rank", head_rank, "Latent rank for --build-models")->capture_default_str();

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "Gradient-check the training losses on a tiny network");
    std::string verify_level = "quick";
    verify->add_option("--level", verify_level, "quick | full")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2; // usage errors are config errors
    }

    if (synth->parsed())
        return report(tbgan_dataset_synth(synth_identities, synth_per, synth_res, synth_seed,
                                          synth_out.c_str()));

    if (extract->parsed())
        return report(tbgan_uv_extract(extract_meshes.c_str(), extract_out.c_str(), extract_res,
                                       extract_labels.empty() ? nullptr : extract_labels.c_str()));

    if (train->parsed()) {
        uint64_t g_params = 0, d_params = 0;
        const auto status = tbgan_train(train_config.c_str(), train_dry ? 1 : 0, &g_params, &d_params);
        if (status == TBGAN_OK)
            std::printf("generator parameters: %llu\ndiscriminator parameters: %llu\n",
                        (unsigned long long)g_params, (unsigned long long)d_params);
        return report(status);
    }

    if (sample->parsed())
        return report(tbgan_sample(sample_ckpt.c_str(), sample_dataset.c_str(), sample_n, sample_seed,
                                   sample_expr, sample_out.c_str()));

    if (interp->parsed())
        return report(tbgan_interpolate(interp_ckpt.c_str(), interp_dataset.c_str(), interp_steps,
                                        interp_seed, interp_expr, interp_out.c_str()));

    if (head->parsed()) {
        if (head_build && !std::filesystem::exists(std::filesystem::path(head_models) / "meta.json")) {
            const auto status =
                tbgan_head_models_build(head_seed, head_identities, head_rank, head_models.c_str());
            if (status != TBGAN_OK)
                return report(status);
        }
        double rmse = -1.0;
        const auto status =
            tbgan_complete_head(head_face.c_str(), head_models.c_str(), head_out.c_str(), &rmse);
        if (status == TBGAN_OK)
            std::printf("face-region rmse: %.9g\n", rmse);
        return report(status);
    }

    if (verify->parsed()) {
        double worst = 0.0;
        const auto status = tbgan_verify(verify_level.c_str(), &worst);
        if (status != TBGAN_OK)
            return report(status);
        std::printf("max gradient-check relative error: %.3e\n", worst);
        if (worst >= 1e-3) {
            std::fprintf(stderr, "error: gradient check failed (%.3e >= 1e-3)\n", worst);
            return 3;
        }
        return 0;
    }

    return 2;
}
