/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/unit/uvcodec_test.cpp
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

#include "core/json_util.hpp"
#include "core/rng.hpp"
#include "geometry/procrustes.hpp"
#include "geometry/unwrap.hpp"
#include "support/containment.hpp"
#include "support/meshes.hpp"
#include "uvcodec/assemble.hpp"
#include "uvcodec/bundle_io.hpp"
#include "uvcodec/detail_normals.hpp"
#include "uvcodec/raster.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <filesystem>
#include <fstream>

using namespace tbgan;
using geometry::Mesh;
using geometry::UVLayout;
using uvcodec::Modality;
using uvcodec::ModalityBundle;
using uvcodec::ModalityMap;
namespace testing = tbgan::testing;

namespace {

struct Chart {
    Mesh mesh;
    UVLayout layout;
};

Chart test_chart(int nu = 24, int nv = 20) {
    Chart c;
    c.mesh = testing::spherical_patch(nu, nv);
    c.layout = geometry::cylindrical_unwrap(c.mesh);
    return c;
}

Eigen::MatrixXd smooth_field(const Mesh& mesh, Rng& rng, int channels = 3) {
    Eigen::MatrixXd f(mesh.vertex_count(), channels);
    for (int c = 0; c < channels; ++c) {
        const Eigen::Vector3d w(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const double phase = rng.uniform(0.0, 6.28);
        const double amp = rng.uniform(0.3, 0.9);
        for (int i = 0; i < mesh.vertex_count(); ++i)
            f(i, c) = amp * std::sin(w.dot(mesh.vertices[std::size_t(i)]) + phase);
    }
    return f;
}

ModalityBundle random_bundle(Rng& rng, int resolution = 16) {
    Chart c = test_chart(10, 8);
    std::vector<Eigen::Vector3d> colors;
    for (int i = 0; i < c.mesh.vertex_count(); ++i)
        colors.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    auto scaled = geometry::normalize_corpus_scale({c.mesh});
    scaled.meshes[0].topology_id = c.mesh.topology_id;
    return uvcodec::assemble_bundle(scaled.meshes[0], c.layout, colors, resolution,
                                    arch::ExpressionLabel::one_hot(int(rng.below(7)), 7));
}

} // namespace

TEST_CASE("rasterize: constant field fills every covered pixel exactly") {
    Chart c = test_chart();
    Eigen::MatrixXd values = Eigen::MatrixXd::Constant(c.mesh.vertex_count(), 3, 0.37);
    auto map = uvcodec::rasterize_to_uv(values, c.mesh, c.layout, 64, Modality::texture);
    REQUIRE(map.coverage_fraction() > 0.2);
    for (int y = 0; y < 64; ++y)
        for (int x = 0; x < 64; ++x)
            for (int ch = 0; ch < 3; ++ch)
                CHECK(map.at(y, x, ch) == doctest::Approx(0.37).epsilon(1e-7));
}

TEST_CASE("rasterize: affine-in-UV fields are reproduced at pixel centers") {
    Chart c = test_chart();
    Rng rng(21);
    const int res = 128;
    double alpha[3], beta[3], gamma[3];
    Eigen::MatrixXd values(c.mesh.vertex_count(), 3);
    for (int ch = 0; ch < 3; ++ch) {
        alpha[ch] = rng.uniform(-1.0, 1.0);
        beta[ch] = rng.uniform(-1.0, 1.0);
        gamma[ch] = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < c.mesh.vertex_count(); ++i)
            values(i, ch) = alpha[ch] + beta[ch] * c.layout.uv[std::size_t(i)][0] +
                            gamma[ch] * c.layout.uv[std::size_t(i)][1];
    }
    auto map = uvcodec::rasterize_to_uv(values, c.mesh, c.layout, res, Modality::shape);
    for (int y = 0; y < res; ++y)
        for (int x = 0; x < res; ++x) {
            if (!map.covered(y, x))
                continue;
            const double u = (x + 0.5) / res, v = (y + 0.5) / res;
            for (int ch = 0; ch < 3; ++ch)
                CHECK(std::abs(map.at(y, x, ch) - (alpha[ch] + beta[ch] * u + gamma[ch] * v)) < 1e-6);
        }
}

TEST_CASE("rasterize: coverage mask equals the brute-force containment scan bit-exact") {
    Chart c = test_chart();
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(c.mesh.vertex_count(), 1);
    auto map = uvcodec::rasterize_to_uv(values, c.mesh, c.layout, 128, Modality::shape);
    const auto oracle = testing::containment_mask_scan(c.mesh, c.layout, 128);
    CHECK(map.mask == oracle);
}

TEST_CASE("rasterize: unwrapped chart has no fold-over at 256^2") {
    Chart c = test_chart();
    CHECK(testing::foldover_pixel_count(c.mesh, c.layout, 256) == 0);
}

TEST_CASE("rasterize: resolution below 4 is rejected") {
    Chart c = test_chart(6, 6);
    Eigen::MatrixXd values = Eigen::MatrixXd::Zero(c.mesh.vertex_count(), 1);
    CHECK_THROWS_AS(uvcodec::rasterize_to_uv(values, c.mesh, c.layout, 2, Modality::shape), error);
}

TEST_CASE("sample: constant map returns the constant everywhere") {
    Chart c = test_chart(8, 8);
    Eigen::MatrixXd values = Eigen::MatrixXd::Constant(c.mesh.vertex_count(), 3, -0.25);
    auto map = uvcodec::rasterize_to_uv(values, c.mesh, c.layout, 32, Modality::texture);
    auto back = uvcodec::sample_from_uv(map, c.layout);
    for (int i = 0; i < back.rows(); ++i)
        for (int ch = 0; ch < 3; ++ch)
            CHECK(back(i, ch) == doctest::Approx(-0.25).epsilon(1e-6));
}

TEST_CASE("sample: a vertex exactly on a pixel center reads that pixel") {
    Chart c = test_chart(8, 8);
    Eigen::MatrixXd values = smooth_field(c.mesh, *new Rng(3));
    auto map = uvcodec::rasterize_to_uv(values, c.mesh, c.layout, 32, Modality::texture);
    UVLayout probe;
    probe.topology_id = c.layout.topology_id;
    probe.uv = {{(5 + 0.5) / 32.0, (9 + 0.5) / 32.0}};
    auto got = uvcodec::sample_from_uv(map, probe);
    for (int ch = 0; ch < 3; ++ch)
        CHECK(got(0, ch) == double(map.at(9, 5, ch)));
}

TEST_CASE("round trip: rasterize at 256 then sample back within 1% on 20 smooth fields") {
    Chart c = test_chart(64, 52);
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd f = smooth_field(c.mesh, rng);
        auto map = uvcodec::rasterize_to_uv(f, c.mesh, c.layout, 256, Modality::shape);
        auto back = uvcodec::sample_from_uv(map, c.layout);

        const double range = f.maxCoeff() - f.minCoeff();
        std::vector<double> errs;
        for (int i = 0; i < f.rows(); ++i) {
            double e = 0.0;
            for (int ch = 0; ch < 3; ++ch)
                e = std::max(e, std::abs(back(i, ch) - f(i, ch)));
            errs.push_back(e / range);
        }
        // The 0.5% of vertices nearest the chart border may clip; exclude them.
        std::sort(errs.begin(), errs.end());
        const std::size_t keep = errs.size() - errs.size() / 200 - 1;
        CHECK(errs[keep] < 0.01);
    }
}

TEST_CASE("round trip: error shrinks as resolution doubles 64 -> 256") {
    Chart c = test_chart(64, 52);
    Rng rng(32);
    Eigen::MatrixXd f = smooth_field(c.mesh, rng);
    double prev = 1e9;
    for (int res : {64, 128, 256}) {
        auto map = uvcodec::rasterize_to_uv(f, c.mesh, c.layout, res, Modality::shape);
        auto back = uvcodec::sample_from_uv(map, c.layout);
        const double err = (back - f).cwiseAbs().mean();
        CHECK(err < prev);
        prev = err;
    }
}

TEST_CASE("bundle: concat/split round trip is bit-exact and channel order is fixed") {
    Rng rng(41);
    ModalityBundle b = random_bundle(rng);
    const auto flat = uvcodec::bundle_concat(b);

    SUBCASE("channels 0..2 are the texture bits") {
        const std::size_t pixels = std::size_t(b.height()) * b.width();
        for (std::size_t p = 0; p < pixels; ++p)
            for (int ch = 0; ch < 3; ++ch)
                CHECK(flat[p * 9 + ch] == b.texture.data[p * 3 + ch]);
    }
    SUBCASE("split(concat(b)) == b") {
        ModalityBundle back = uvcodec::bundle_split(flat, b);
        CHECK(uvcodec::bit_equal(back, b));
    }
    SUBCASE("concat equals a naive per-channel copy oracle") {
        std::vector<float> oracle(flat.size());
        const ModalityMap* maps[3] = {&b.texture, &b.normals, &b.shape};
        const std::size_t pixels = std::size_t(b.height()) * b.width();
        for (int m = 0; m < 3; ++m)
            for (std::size_t p = 0; p < pixels; ++p)
                for (int ch = 0; ch < 3; ++ch)
                    oracle[p * 9 + m * 3 + ch] = maps[m]->data[p * 3 + ch];
        CHECK(oracle == flat);
    }
}

TEST_CASE("detail normals: weight zero is bit-identical, flat detail is a no-op") {
    Rng rng(51);
    ModalityBundle b = random_bundle(rng, 16);
    uvcodec::DetailMap detail;
    detail.height = 8;
    detail.width = 8;
    detail.data.assign(8 * 8 * 3, 0.0f);

    const std::vector<float> zero_w(16 * 16, 0.0f);
    auto same = uvcodec::apply_detail_normals(b.normals, detail, zero_w, 2);
    CHECK(uvcodec::bit_equal(same, b.normals));

    // detail == flat normal (0,0,1): x/y offsets are zero for any weight.
    for (int i = 0; i < 8 * 8; ++i)
        detail.data[std::size_t(i) * 3 + 2] = 1.0f;
    std::vector<float> full_w(16 * 16, 1.0f);
    auto flat = uvcodec::apply_detail_normals(b.normals, detail, full_w, 2);
    for (std::size_t i = 0; i < flat.data.size(); ++i)
        CHECK(std::abs(flat.data[i] - b.normals.data[i]) < 1e-6f);
}

TEST_CASE("detail normals: random detail at weight 1 stays unit length and matches a scalar oracle") {
    Rng rng(52);
    ModalityBundle b = random_bundle(rng, 16);
    uvcodec::DetailMap detail;
    detail.height = 4;
    detail.width = 4;
    for (int i = 0; i < 4 * 4 * 3; ++i)
        detail.data.push_back(float(rng.uniform(-0.5, 0.5)));
    std::vector<float> w(16 * 16);
    for (auto& v : w)
        v = float(rng.uniform());

    auto out = uvcodec::apply_detail_normals(b.normals, detail, w, 4);

    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x) {
            const float wv = w[std::size_t(y) * 16 + x];
            double n[3] = {b.normals.at(y, x, 0), b.normals.at(y, x, 1), b.normals.at(y, x, 2)};
            double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
            for (double& v : n)
                v /= len;
            double up[3] = {0, 1, 0};
            if (std::abs(n[1]) >= 0.9) {
                up[0] = 1;
                up[1] = 0;
            }
            // tangent = normalize(up x n), bitangent = n x tangent
            double t[3] = {up[1] * n[2] - up[2] * n[1], up[2] * n[0] - up[0] * n[2],
                           up[0] * n[1] - up[1] * n[0]};
            double tl = std::sqrt(t[0] * t[0] + t[1] * t[1] + t[2] * t[2]);
            for (double& v : t)
                v /= tl;
            double bt[3] = {n[1] * t[2] - n[2] * t[1], n[2] * t[0] - n[0] * t[2],
                            n[0] * t[1] - n[1] * t[0]};
            const int dy = y % 4, dx = x % 4;
            const double ox = detail.data[(std::size_t(dy) * 4 + dx) * 3 + 0];
            const double oy = detail.data[(std::size_t(dy) * 4 + dx) * 3 + 1];
            double p[3];
            for (int ch = 0; ch < 3; ++ch)
                p[ch] = n[ch] + wv * (ox * t[ch] + oy * bt[ch]);
            const double pl = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);

            double out_len = 0.0;
            for (int ch = 0; ch < 3; ++ch) {
                const double got = out.at(y, x, ch);
                if (wv > 0.0f)
                    CHECK(std::abs(got - p[ch] / pl) < 1e-6);
                out_len += got * got;
            }
            if (wv > 0.0f)
                CHECK(std::abs(std::sqrt(out_len) - 1.0) < 1e-6);
        }
}

TEST_CASE("detail normals: non-tileable dimensions are rejected") {
    Rng rng(53);
    ModalityBundle b = random_bundle(rng, 16);
    uvcodec::DetailMap detail;
    detail.height = 5;
    detail.width = 5;
    detail.data.assign(5 * 5 * 3, 0.0f);
    std::vector<float> w(16 * 16, 0.5f);
    CHECK_THROWS_AS(uvcodec::apply_detail_normals(b.normals, detail, w, 3), error);
}

TEST_CASE("bundle io: write/read round trip is bit-exact") {
    Rng rng(61);
    ModalityBundle b = random_bundle(rng);
    const auto dir = std::filesystem::temp_directory_path() / "tbgan_bundle_rt";
    std::filesystem::remove_all(dir);
    uvcodec::write_bundle(b, dir);
    ModalityBundle back = uvcodec::read_bundle(dir);
    CHECK(uvcodec::bit_equal(back, b));
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundle io: missing modality entry names the field") {
    Rng rng(62);
    ModalityBundle b = random_bundle(rng);
    const auto dir = std::filesystem::temp_directory_path() / "tbgan_bundle_missing";
    std::filesystem::remove_all(dir);
    uvcodec::write_bundle(b, dir);
    auto meta = load_json(dir / "meta.json");
    meta["modalities"].erase("normals");
    save_json(dir / "meta.json", meta);
    CHECK_THROWS_WITH_AS(uvcodec::read_bundle(dir), doctest::Contains("normals"), error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundle io: unsupported format version is rejected") {
    Rng rng(64);
    ModalityBundle b = random_bundle(rng);
    const auto dir = std::filesystem::temp_directory_path() / "tbgan_bundle_ver";
    std::filesystem::remove_all(dir);
    uvcodec::write_bundle(b, dir);
    auto meta = load_json(dir / "meta.json");
    meta["format_version"] = 999;
    save_json(dir / "meta.json", meta);
    try {
        uvcodec::read_bundle(dir);
        FAIL("expected format_error");
    } catch (const error& e) {
        CHECK(e.code() == errc::format_error);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("bundle io: truncation and corruption are distinct errors") {
    Rng rng(63);
    ModalityBundle b = random_bundle(rng);
    const auto dir = std::filesystem::temp_directory_path() / "tbgan_bundle_bad";

    SUBCASE("one byte missing -> truncated_file") {
        std::filesystem::remove_all(dir);
        uvcodec::write_bundle(b, dir);
        const auto f = dir / "texture.f32";
        std::filesystem::resize_file(f, std::filesystem::file_size(f) - 1);
        try {
            uvcodec::read_bundle(dir);
            FAIL("expected truncated_file");
        } catch (const error& e) {
            CHECK(e.code() == errc::truncated_file);
        }
    }
    SUBCASE("one byte flipped -> checksum_mismatch") {
        std::filesystem::remove_all(dir);
        uvcodec::write_bundle(b, dir);
        const auto f = dir / "shape.f32";
        std::fstream io(f, std::ios::in | std::ios::out | std::ios::binary);
        io.seekp(5);
        char byte = 0;
        io.seekg(5);
        io.read(&byte, 1);
        byte = char(byte ^ 0x5a);
        io.seekp(5);
        io.write(&byte, 1);
        io.close();
        try {
            uvcodec::read_bundle(dir);
            FAIL("expected checksum_mismatch");
        } catch (const error& e) {
            CHECK(e.code() == errc::checksum_mismatch);
        }
    }
    std::filesystem::remove_all(dir);
}
