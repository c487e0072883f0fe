/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: include/tbgan/tbgan.h
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
#ifndef TBGAN_H
#define TBGAN_H

/*
 * C interface of the tbgan shared library. All functions return a
 * tbgan_status; on failure tbgan_last_error() carries a thread-local
 * human-readable message. Objects returned through out-parameters are owned
 * by the caller and released with the matching _free function.
 *
 * Command-level entry points mirror the CLI subcommands; each writes a
 * run.json (config hash, seed, build version, timings) into its output
 * directory. Setting the environment variable TBGAN_DETERMINISTIC=1 forces
 * deterministic single-thread execution (the library is deterministic by
 * default; the flag additionally zeroes wall-clock fields in run records so
 * seeded runs are bit-identical).
 */

#include <stdint.h>

#ifndef TBGAN_API
#if defined(_WIN32)
#define TBGAN_API __declspec(dllimport)
#else
#define TBGAN_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tbgan_status {
    TBGAN_OK = 0,
    TBGAN_ERR_INVALID_ARGUMENT = 1,
    TBGAN_ERR_IO = 2,
    TBGAN_ERR_FORMAT = 3,
    TBGAN_ERR_CONTRACT = 4,
    TBGAN_ERR_NUMERIC = 5,
    TBGAN_ERR_DEGENERATE = 6,
    TBGAN_ERR_UNWRAP_FOLD = 7,
    TBGAN_ERR_TRUNCATED = 8,
    TBGAN_ERR_CHECKSUM = 9,
    TBGAN_ERR_UNKNOWN = 10
} tbgan_status;

TBGAN_API const char* tbgan_version(void);
TBGAN_API const char* tbgan_last_error(void);

/* ---------- meshes (Wavefront OBJ, triangles only) ---------- */

typedef struct tbgan_mesh tbgan_mesh;

TBGAN_API tbgan_status tbgan_mesh_load_obj(const char* path, tbgan_mesh** out_mesh);
TBGAN_API tbgan_status tbgan_mesh_save_obj(const tbgan_mesh* mesh, const char* path);
TBGAN_API void tbgan_mesh_free(tbgan_mesh* mesh);
TBGAN_API int32_t tbgan_mesh_vertex_count(const tbgan_mesh* mesh);
TBGAN_API int32_t tbgan_mesh_face_count(const tbgan_mesh* mesh);
/* xyz must hold 3 * vertex_count doubles. */
TBGAN_API tbgan_status tbgan_mesh_vertices(const tbgan_mesh* mesh, double* xyz);
/* indices must hold 3 * face_count int32 values. */
TBGAN_API tbgan_status tbgan_mesh_faces(const tbgan_mesh* mesh, int32_t* indices);

/* ---------- modality bundles (texture | normals | shape UV maps) ---------- */

typedef struct tbgan_bundle tbgan_bundle;

TBGAN_API tbgan_status tbgan_bundle_read(const char* dir, tbgan_bundle** out_bundle);
TBGAN_API tbgan_status tbgan_bundle_write(const tbgan_bundle* bundle, const char* dir);
TBGAN_API void tbgan_bundle_free(tbgan_bundle* bundle);
TBGAN_API int32_t tbgan_bundle_resolution(const tbgan_bundle* bundle);
/* modality is "texture", "normals" or "shape"; data must hold H*W*3 floats
 * (row-major, interleaved channels). */
TBGAN_API tbgan_status tbgan_bundle_channels(const tbgan_bundle* bundle, const char* modality,
                                             float* data);
/* expression must hold n values; returns the label length via out_count and
 * writes nothing when the bundle carries no label. */
TBGAN_API tbgan_status tbgan_bundle_expression(const tbgan_bundle* bundle, double* expression,
                                               int32_t capacity, int32_t* out_count);

/* ---------- trained generators ---------- */

typedef struct tbgan_generator tbgan_generator;

TBGAN_API tbgan_status tbgan_generator_load(const char* checkpoint_dir, tbgan_generator** out_generator);
TBGAN_API void tbgan_generator_free(tbgan_generator* generator);
TBGAN_API int32_t tbgan_generator_latent_dim(const tbgan_generator* generator);
TBGAN_API int32_t tbgan_generator_resolution(const tbgan_generator* generator);
TBGAN_API int32_t tbgan_generator_n_expressions(const tbgan_generator* generator);
/* z holds latent_dim doubles; expression holds n_expressions weights summing
 * to 1, or NULL for the neutral one-hot 0. */
TBGAN_API tbgan_status tbgan_generator_synthesize(const tbgan_generator* generator, const double* z,
                                                  const double* expression, tbgan_bundle** out_bundle);

/* ---------- command-level operations ---------- */

/* Procedural training corpus: n_identities x per_identity bundles at the
 * given resolution; sample j of an identity carries expression j mod 7. */
TBGAN_API tbgan_status tbgan_dataset_synth(int32_t n_identities, int32_t per_identity,
                                           int32_t resolution, uint64_t seed, const char* out_dir);

/* Dense-correspondence OBJ meshes -> bundle dataset. labels_json may be NULL. */
TBGAN_API tbgan_status tbgan_uv_extract(const char* mesh_dir, const char* out_dir, int32_t resolution,
                                        const char* labels_json);

/* Runs WGAN-GP / AC-GAN training from a run-config JSON document. With
 * dry_run != 0 the config is validated and both networks built, parameter
 * counts are reported, and no checkpoint is written. */
TBGAN_API tbgan_status tbgan_train(const char* config_json_path, int32_t dry_run,
                                   uint64_t* out_generator_params, uint64_t* out_discriminator_params);

/* Draws n faces (seeded standard-normal latents) from a trained generator
 * and writes numbered OBJ meshes plus bundle containers. dataset_dir supplies
 * the template, UV layout and scale factor for mesh export. expression < 0
 * cycles through all labels. */
TBGAN_API tbgan_status tbgan_sample(const char* checkpoint_dir, const char* dataset_dir, int32_t n,
                                    uint64_t seed, int32_t expression, const char* out_dir);

/* Evenly spaced latent-space interpolation between two seeded endpoints. */
TBGAN_API tbgan_status tbgan_interpolate(const char* checkpoint_dir, const char* dataset_dir,
                                         int32_t steps, uint64_t seed, int32_t expression,
                                         const char* out_dir);

/* Builds the desk-scale face+head PCA models and the face->head latent
 * regression from a synthetic corpus, persisted under out_dir. */
TBGAN_API tbgan_status tbgan_head_models_build(uint64_t seed, int32_t n_identities, int32_t latent_rank,
                                               const char* out_dir);

/* Completes a face mesh to a full head via the persisted model set. */
TBGAN_API tbgan_status tbgan_complete_head(const char* face_obj, const char* models_dir,
                                           const char* out_obj, double* out_face_region_rmse);

/* Gradient verification harness on a tiny network in float64. level is
 * "quick" (generator, 8 directions) or "full" (both networks, 16
 * directions). Writes the worst relative error to out_max_rel_error. */
TBGAN_API tbgan_status tbgan_verify(const char* level, double* out_max_rel_error);

#ifdef __cplusplus
}
#endif

#endif /* TBGAN_H */
