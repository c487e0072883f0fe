/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/headmodel/head_io.cpp
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
#include "headmodel/head_io.hpp"

#include "core/binio.hpp"
#include "core/error.hpp"
#include "core/json_util.hpp"
#include "geometry/obj_io.hpp"

namespace tbgan::headmodel {

namespace {

void write_array(const std::filesystem::path& dir, const std::string& file, const double* data,
                 std::size_t count, json& entry) {
    std::vector<double> copy(data, data + count);
    const auto bytes = as_bytes_of(copy);
    write_file_atomic(dir / file, bytes);
    entry["file"] = file;
    entry["count"] = count;
    entry["crc32"] = crc32(bytes);
}

std::vector<double> read_array(const std::filesystem::path& dir, const json& entry) {
    const std::string file = json_field(entry, "file", "headmodel array entry");
    const std::size_t count = json_field(entry, "count", "headmodel array entry");
    const auto bytes = read_file(dir / file, std::int64_t(count * sizeof(double)));
    require(crc32(bytes) == std::uint32_t(json_field(entry, "crc32", "headmodel array entry")),
            errc::checksum_mismatch, (dir / file).string() + ": array corrupt");
    return from_bytes_of<double>(bytes);
}

} // namespace

void save_pca(const PCAModel& model, const std::filesystem::path& dir) {
    model.validate();
    std::filesystem::create_directories(dir);
    json meta;
    meta["format_version"] = kHeadModelFormatVersion;
    meta["kind"] = "pca";
    meta["dimension"] = model.dimension();
    meta["rank"] = model.rank();
    write_array(dir, "mean.f64", model.mean.data(), std::size_t(model.mean.size()), meta["mean"]);
    // Row-major serialization of the (D x k) component matrix.
    Eigen::MatrixXd rowmajor = model.components;
    std::vector<double> comp(std::size_t(rowmajor.size()));
    for (int r = 0; r < rowmajor.rows(); ++r)
        for (int c = 0; c < rowmajor.cols(); ++c)
            comp[std::size_t(r) * rowmajor.cols() + c] = rowmajor(r, c);
    const auto bytes = as_bytes_of(comp);
    write_file_atomic(dir / "components.f64", bytes);
    meta["components"] = {{"file", "components.f64"}, {"count", comp.size()}, {"crc32", crc32(bytes)}};
    write_array(dir, "eigenvalues.f64", model.eigenvalues.data(), std::size_t(model.eigenvalues.size()),
                meta["eigenvalues"]);
    save_json(dir / "meta.json", meta);
}

PCAModel load_pca(const std::filesystem::path& dir) {
    const json meta = load_json(dir / "meta.json");
    require(json_field(meta, "format_version", "pca meta") == kHeadModelFormatVersion, errc::format_error,
            dir.string() + ": unsupported head-model format version");
    require(json_field(meta, "kind", "pca meta") == "pca", errc::format_error,
            dir.string() + ": not a pca container");
    const int dim = json_field(meta, "dimension", "pca meta");
    const int rank = json_field(meta, "rank", "pca meta");

    PCAModel model;
    const auto mean = read_array(dir, json_field(meta, "mean", "pca meta"));
    require(int(mean.size()) == dim, errc::format_error, dir.string() + ": mean size mismatch");
    model.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), dim);

    const auto comp = read_array(dir, json_field(meta, "components", "pca meta"));
    require(int(comp.size()) == dim * rank, errc::format_error, dir.string() + ": components size mismatch");
    model.components.resize(dim, rank);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < rank; ++c)
            model.components(r, c) = comp[std::size_t(r) * rank + c];

    const auto eig = read_array(dir, json_field(meta, "eigenvalues", "pca meta"));
    require(int(eig.size()) == rank, errc::format_error, dir.string() + ": eigenvalue size mismatch");
    model.eigenvalues = Eigen::Map<const Eigen::VectorXd>(eig.data(), rank);
    model.validate();
    return model;
}

void save_regression(const RegressionMap& reg, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    json meta;
    meta["format_version"] = kHeadModelFormatVersion;
    meta["kind"] = "regression";
    meta["rows"] = reg.weights.rows();
    meta["cols"] = reg.weights.cols();
    meta["rank"] = reg.rank;
    meta["rank_deficient"] = reg.rank_deficient;
    std::vector<double> w(std::size_t(reg.weights.size()));
    for (int r = 0; r < reg.weights.rows(); ++r)
        for (int c = 0; c < reg.weights.cols(); ++c)
            w[std::size_t(r) * reg.weights.cols() + c] = reg.weights(r, c);
    const auto bytes = as_bytes_of(w);
    write_file_atomic(dir / "weights.f64", bytes);
    meta["weights"] = {{"file", "weights.f64"}, {"count", w.size()}, {"crc32", crc32(bytes)}};
    write_array(dir, "bias.f64", reg.bias.data(), std::size_t(reg.bias.size()), meta["bias"]);
    save_json(dir / "meta.json", meta);
}

RegressionMap load_regression(const std::filesystem::path& dir) {
    const json meta = load_json(dir / "meta.json");
    require(json_field(meta, "format_version", "regression meta") == kHeadModelFormatVersion,
            errc::format_error, dir.string() + ": unsupported head-model format version");
    require(json_field(meta, "kind", "regression meta") == "regression", errc::format_error,
            dir.string() + ": not a regression container");
    const int rows = json_field(meta, "rows", "regression meta");
    const int cols = json_field(meta, "cols", "regression meta");

    RegressionMap reg;
    const auto w = read_array(dir, json_field(meta, "weights", "regression meta"));
    require(int(w.size()) == rows * cols, errc::format_error, dir.string() + ": weights size mismatch");
    reg.weights.resize(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            reg.weights(r, c) = w[std::size_t(r) * cols + c];
    const auto b = read_array(dir, json_field(meta, "bias", "regression meta"));
    require(int(b.size()) == rows, errc::format_error, dir.string() + ": bias size mismatch");
    reg.bias = Eigen::Map<const Eigen::VectorXd>(b.data(), rows);
    reg.rank = json_field(meta, "rank", "regression meta");
    reg.rank_deficient = json_field(meta, "rank_deficient", "regression meta");
    return reg;
}

void save_head_model_set(const HeadModelSet& set, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    save_pca(set.face_pca, dir / "face_pca");
    save_pca(set.head_pca, dir / "head_pca");
    save_regression(set.regression, dir / "regression");
    geometry::save_obj(dir / "face_template.obj", set.face_template);
    geometry::save_obj(dir / "head_template.obj", set.head_template);
    json meta;
    meta["format_version"] = kHeadModelFormatVersion;
    meta["kind"] = "head_model_set";
    meta["face_topology_id"] = set.face_template.topology_id;
    meta["head_topology_id"] = set.head_template.topology_id;
    meta["face_to_head_vertex"] = set.face_to_head_vertex;
    save_json(dir / "meta.json", meta);
}

HeadModelSet load_head_model_set(const std::filesystem::path& dir) {
    const json meta = load_json(dir / "meta.json");
    require(json_field(meta, "kind", "head model set meta") == "head_model_set", errc::format_error,
            dir.string() + ": not a head model set");
    HeadModelSet set;
    set.face_pca = load_pca(dir / "face_pca");
    set.head_pca = load_pca(dir / "head_pca");
    set.regression = load_regression(dir / "regression");
    set.face_template = geometry::load_obj(dir / "face_template.obj").mesh;
    set.head_template = geometry::load_obj(dir / "head_template.obj").mesh;
    set.face_to_head_vertex = json_field(meta, "face_to_head_vertex", "head model set meta")
                                  .get<std::vector<int>>();
    return set;
}

} // namespace tbgan::headmodel
