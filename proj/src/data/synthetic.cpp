/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/synthetic.cpp
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
#include "data/synthetic.hpp"

#include "core/error.hpp"
#include "core/json_util.hpp"
#include "core/rng.hpp"
#include "geometry/obj_io.hpp"
#include "geometry/procrustes.hpp"
#include "uvcodec/assemble.hpp"
#include "uvcodec/bundle_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace tbgan::data {

namespace {

constexpr int kGridU = 40; // azimuth segments of the synthetic template
constexpr int kGridV = 34; // height segments
constexpr double kAzimuthSpan = 2.0;

struct IdentityParams {
    double rx = 0.8, ry = 1.1, rz = 0.9;
    struct Bump {
        double az, t, amp, saz, st;
    };
    std::vector<Bump> bumps;
    Eigen::Vector3d tint = Eigen::Vector3d::Zero();
    double grad_phase = 0.0;
};

IdentityParams draw_identity(Rng& rng) {
    IdentityParams p;
    p.rx *= 1.0 + 0.1 * rng.uniform(-1.0, 1.0);
    p.ry *= 1.0 + 0.1 * rng.uniform(-1.0, 1.0);
    p.rz *= 1.0 + 0.1 * rng.uniform(-1.0, 1.0);
    const int n_bumps = 3 + int(rng.below(3));
    for (int j = 0; j < n_bumps; ++j)
        p.bumps.push_back({rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8), rng.uniform(-0.06, 0.06),
                           rng.uniform(0.25, 0.5), rng.uniform(0.25, 0.5)});
    p.tint = Eigen::Vector3d(rng.uniform(-0.05, 0.05), rng.uniform(-0.05, 0.05),
                             rng.uniform(-0.05, 0.05));
    p.grad_phase = rng.uniform(0.0, 6.28);
    return p;
}

// Seven fixed localized deformation sites, spread over the parameter domain.
constexpr double kExprSites[7][2] = {{0.0, -0.5}, {-0.55, 0.1}, {0.55, 0.1}, {0.0, 0.45},
                                     {-0.3, -0.15}, {0.3, -0.15}, {0.0, 0.05}};

} // namespace

Eigen::Vector3d expression_tint(int expression) {
    // Seven well-separated corners of the RGB cube, scaled to a strong but
    // in-range offset. The masked mean color of a texture map moves by this
    // vector, which is what the linear probe keys on.
    static const double corners[7][3] = {{-1, -1, -1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1},
                                         {1, 1, -1},   {1, -1, 1},  {-1, 1, 1}};
    require(expression >= 0 && expression < 7, errc::invalid_argument, "expression_tint: index out of range");
    return 0.55 * Eigen::Vector3d(corners[expression][0], corners[expression][1],
                                  corners[expression][2]);
}

DatasetManifest build_dataset_from_corpus(const Corpus& corpus, int resolution,
                                          const std::filesystem::path& out_dir) {
    const std::size_t n = corpus.meshes.size();
    require(n >= 2, errc::invalid_argument, "build_dataset: need at least 2 meshes");
    require(corpus.colors.size() == n && corpus.labels.size() == n && corpus.identities.size() == n,
            errc::invalid_argument, "build_dataset: corpus arrays disagree");

    auto gpa = geometry::gpa_align(corpus.meshes);
    std::vector<geometry::Mesh> with_consensus = std::move(gpa.aligned);
    with_consensus.push_back(gpa.consensus); // scale the template with the corpus
    auto scaled = geometry::normalize_corpus_scale(with_consensus);
    geometry::Mesh tmpl = std::move(scaled.meshes.back());
    scaled.meshes.pop_back();

    const auto layout = geometry::cylindrical_unwrap(tmpl);

    std::filesystem::create_directories(out_dir / "bundles");
    std::filesystem::create_directories(out_dir / "template");

    DatasetManifest manifest;
    manifest.topology_id = tmpl.topology_id;
    manifest.resolution = resolution;
    manifest.scale_factor = scaled.scale_factor;

    for (std::size_t i = 0; i < n; ++i) {
        auto bundle = uvcodec::assemble_bundle(scaled.meshes[i], layout, corpus.colors[i], resolution,
                                               corpus.labels[i]);
        char name[32];
        std::snprintf(name, sizeof name, "bundles/%05zu", i);
        uvcodec::write_bundle(bundle, out_dir / name);
        manifest.items.push_back({name, corpus.labels[i], corpus.identities[i]});
    }

    geometry::save_obj(out_dir / manifest.template_obj, tmpl, &layout);
    json tmeta;
    tmeta["topology_id"] = tmpl.topology_id;
    tmeta["scale_factor"] = scaled.scale_factor;
    tmeta["resolution"] = resolution;
    save_json(out_dir / "template" / "meta.json", tmeta);

    save_manifest(manifest, out_dir);
    return manifest;
}

DatasetManifest make_synthetic_dataset(int n_identities, int per_identity, int resolution,
                                       std::uint64_t seed, const std::filesystem::path& out_dir) {
    require(n_identities >= 2 && per_identity >= 1, errc::invalid_argument,
            "make_synthetic_dataset: need >= 2 identities and >= 1 sample each");

    Rng root(seed);
    Rng identity_stream = root.fork();
    Rng variant_stream = root.fork();

    Corpus corpus;
    for (int id = 0; id < n_identities; ++id) {
        Rng id_rng = identity_stream.fork();
        const IdentityParams params = draw_identity(id_rng);

        for (int j = 0; j < per_identity; ++j) {
            Rng var_rng = variant_stream.fork();
            const int expression = j % 7;
            const double expr_strength = 0.9 + 0.2 * var_rng.uniform();

            geometry::Mesh mesh;
            std::vector<Eigen::Vector3d> colors;
            for (int gy = 0; gy <= kGridV; ++gy)
                for (int gx = 0; gx <= kGridU; ++gx) {
                    const double az = (double(gx) / kGridU - 0.5) * kAzimuthSpan;
                    const double t = double(gy) / kGridV * 2.0 - 1.0;

                    double r = 1.0 + 0.06 * std::sin(2.1 * az + params.grad_phase) * std::cos(1.7 * t);
                    for (const auto& b : params.bumps)
                        r += b.amp * std::exp(-0.5 * ((az - b.az) * (az - b.az) / (b.saz * b.saz) +
                                                      (t - b.t) * (t - b.t) / (b.st * b.st)));
                    const auto& site = kExprSites[expression];
                    r += 0.08 * expr_strength *
                         std::exp(-0.5 * ((az - site[0]) * (az - site[0]) / 0.09 +
                                          (t - site[1]) * (t - site[1]) / 0.09));

                    Eigen::Vector3d v(params.rx * r * std::sin(az), params.ry * t,
                                      params.rz * r * std::cos(az));
                    v += 0.004 * Eigen::Vector3d(var_rng.normal(), var_rng.normal(), var_rng.normal());
                    mesh.vertices.push_back(v);

                    Eigen::Vector3d c = params.tint + expression_tint(expression);
                    c += Eigen::Vector3d(0.06 * std::sin(3.0 * az + params.grad_phase),
                                         0.06 * std::cos(2.0 * t), 0.05 * std::sin(az + 2.0 * t));
                    c += 0.015 * Eigen::Vector3d(var_rng.normal(), var_rng.normal(), var_rng.normal());
                    for (int ch = 0; ch < 3; ++ch)
                        c(ch) = std::clamp(c(ch), -0.95, 0.95);
                    colors.push_back(c);
                }
            auto vid = [](int gx, int gy) { return gy * (kGridU + 1) + gx; };
            for (int gy = 0; gy < kGridV; ++gy)
                for (int gx = 0; gx < kGridU; ++gx) {
                    mesh.faces.push_back({vid(gx, gy), vid(gx + 1, gy), vid(gx + 1, gy + 1)});
                    mesh.faces.push_back({vid(gx, gy), vid(gx + 1, gy + 1), vid(gx, gy + 1)});
                }
            geometry::ensure_topology_id(mesh);

            char ident[16];
            std::snprintf(ident, sizeof ident, "id_%03d", id);
            corpus.meshes.push_back(std::move(mesh));
            corpus.colors.push_back(std::move(colors));
            corpus.labels.push_back(arch::ExpressionLabel::one_hot(expression, 7));
            corpus.identities.emplace_back(ident);
        }
    }
    return build_dataset_from_corpus(corpus, resolution, out_dir);
}

headmodel::HeadModelSet build_synthetic_head_models(int n_identities, int latent_rank,
                                                    std::uint64_t seed) {
    require(n_identities >= latent_rank + 2, errc::invalid_argument,
            "build_synthetic_head_models: need at least latent_rank + 2 identities");
    Rng rng(seed);

    // Face template on the same grid as the synthetic dataset, so generated
    // faces plug straight into the completion models.
    const int nu = kGridU, nv = kGridV;
    geometry::Mesh face_tmpl;
    for (int gy = 0; gy <= nv; ++gy)
        for (int gx = 0; gx <= nu; ++gx) {
            const double az = (double(gx) / nu - 0.5) * kAzimuthSpan;
            const double t = double(gy) / nv * 2.0 - 1.0;
            face_tmpl.vertices.emplace_back(0.8 * std::sin(az), 1.1 * t, 0.9 * std::cos(az));
        }
    auto vid = [nu](int gx, int gy) { return gy * (nu + 1) + gx; };
    for (int gy = 0; gy < nv; ++gy)
        for (int gx = 0; gx < nu; ++gx) {
            face_tmpl.faces.push_back({vid(gx, gy), vid(gx + 1, gy), vid(gx + 1, gy + 1)});
            face_tmpl.faces.push_back({vid(gx, gy), vid(gx + 1, gy + 1), vid(gx, gy + 1)});
        }
    geometry::ensure_topology_id(face_tmpl);
    const int nf = face_tmpl.vertex_count();

    // Head = face + a back closure ring; closure vertices are a fixed linear
    // combination of face vertices, so heads are an exact linear image of
    // faces and the latent regression can be exact.
    const int n_closure = 2 * (nu + 1);
    Eigen::MatrixXd closure = Eigen::MatrixXd::Zero(3 * n_closure, 3 * nf);
    {
        Rng crng = rng.fork();
        for (int r = 0; r < 3 * n_closure; ++r) {
            // Mostly mirror one face vertex backwards plus mild mixing.
            const int anchor = int(crng.below(std::uint64_t(nf)));
            closure(r, 3 * anchor + r % 3) = -0.8;
            for (int j = 0; j < 4; ++j)
                closure(r, int(crng.below(std::uint64_t(3 * nf)))) += 0.05 * crng.normal();
        }
    }
    auto make_head = [&](const geometry::Mesh& face) {
        geometry::Mesh head = face;
        Eigen::VectorXd tail = closure * headmodel::flatten_vertices(face);
        for (int i = 0; i < n_closure; ++i)
            head.vertices.emplace_back(tail(3 * i), tail(3 * i + 1), tail(3 * i + 2));
        // Stitch the closure ring to the patch border so the head is a mesh,
        // not a point cloud.
        for (int i = 0; i + 1 < n_closure && i + 1 <= nu; ++i)
            head.faces.push_back({vid(i, nv), vid(i + 1, nv), nf + i});
        head.topology_id = "";
        geometry::ensure_topology_id(head);
        return head;
    };

    Rng basis_rng = rng.fork();
    Eigen::MatrixXd face_basis(3 * nf, latent_rank);
    for (int r = 0; r < face_basis.rows(); ++r)
        for (int c = 0; c < latent_rank; ++c)
            face_basis(r, c) = 0.04 * basis_rng.normal();

    Eigen::MatrixXd face_rows(n_identities, 3 * nf);
    Eigen::MatrixXd head_rows(n_identities, 3 * (nf + n_closure));
    Rng coeff_rng = rng.fork();
    for (int s = 0; s < n_identities; ++s) {
        geometry::Mesh face = face_tmpl;
        Eigen::VectorXd coeffs(latent_rank);
        for (int c = 0; c < latent_rank; ++c)
            coeffs(c) = coeff_rng.normal();
        headmodel::unflatten_vertices(headmodel::flatten_vertices(face) + face_basis * coeffs, face);
        face_rows.row(s) = headmodel::flatten_vertices(face).transpose();
        head_rows.row(s) = headmodel::flatten_vertices(make_head(face)).transpose();
    }

    headmodel::HeadModelSet set;
    set.face_pca = headmodel::pca_build(face_rows, latent_rank);
    set.head_pca = headmodel::pca_build(head_rows, latent_rank);
    Eigen::MatrixXd face_lat(n_identities, latent_rank), head_lat(n_identities, latent_rank);
    for (int s = 0; s < n_identities; ++s) {
        face_lat.row(s) =
            headmodel::pca_project_reconstruct(set.face_pca, face_rows.row(s).transpose()).latent.transpose();
        head_lat.row(s) =
            headmodel::pca_project_reconstruct(set.head_pca, head_rows.row(s).transpose()).latent.transpose();
    }
    set.regression = headmodel::fit_head_regression(face_lat, head_lat);
    set.face_template = face_tmpl;
    set.head_template = make_head(face_tmpl);
    set.face_to_head_vertex.resize(std::size_t(nf));
    for (int i = 0; i < nf; ++i)
        set.face_to_head_vertex[std::size_t(i)] = i;
    return set;
}

} // namespace tbgan::data
