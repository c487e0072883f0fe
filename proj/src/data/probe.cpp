/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/probe.cpp
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
#include "data/probe.hpp"

#include "core/error.hpp"

#include <Eigen/QR>

namespace tbgan::data {

Eigen::Vector3d bundle_statistic(const uvcodec::ModalityBundle& bundle) {
    const auto& tex = bundle.texture;
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    std::size_t covered = 0;
    for (int y = 0; y < tex.height; ++y)
        for (int x = 0; x < tex.width; ++x) {
            if (!tex.covered(y, x))
                continue;
            ++covered;
            for (int c = 0; c < 3; ++c)
                acc(c) += tex.at(y, x, c);
        }
    require(covered > 0, errc::invalid_argument, "bundle_statistic: empty coverage mask");
    return acc / double(covered);
}

int LinearProbe::predict(const Eigen::Vector3d& statistic) const {
    Eigen::Vector4d aug(statistic(0), statistic(1), statistic(2), 1.0);
    Eigen::VectorXd scores = weights * aug;
    int best = 0;
    for (int i = 1; i < scores.size(); ++i)
        if (scores(i) > scores(best))
            best = i;
    return best;
}

LinearProbe fit_probe(const std::vector<Eigen::Vector3d>& statistics, const std::vector<int>& labels,
                      int n_classes) {
    require(statistics.size() == labels.size() && !statistics.empty(), errc::invalid_argument,
            "fit_probe: size mismatch");
    const int n = int(statistics.size());
    Eigen::MatrixXd design(n, 4);
    Eigen::MatrixXd targets = Eigen::MatrixXd::Zero(n, n_classes);
    for (int i = 0; i < n; ++i) {
        design.row(i) << statistics[std::size_t(i)](0), statistics[std::size_t(i)](1),
            statistics[std::size_t(i)](2), 1.0;
        require(labels[std::size_t(i)] >= 0 && labels[std::size_t(i)] < n_classes, errc::invalid_argument,
                "fit_probe: label out of range");
        targets(i, labels[std::size_t(i)]) = 1.0;
    }
    LinearProbe probe;
    probe.weights = design.colPivHouseholderQr().solve(targets).transpose();
    return probe;
}

double probe_accuracy(const LinearProbe& probe, const std::vector<Eigen::Vector3d>& statistics,
                      const std::vector<int>& labels) {
    require(statistics.size() == labels.size() && !statistics.empty(), errc::invalid_argument,
            "probe_accuracy: size mismatch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < statistics.size(); ++i)
        hits += probe.predict(statistics[i]) == labels[i] ? 1 : 0;
    return double(hits) / double(statistics.size());
}

} // namespace tbgan::data
