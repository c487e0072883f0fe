/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/data/probe.hpp
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
#pragma once

#include "uvcodec/modality.hpp"

#include <Eigen/Core>

namespace tbgan::data {

/// The label-controlled map statistic: mean texture color over covered
/// pixels (3 values).
Eigen::Vector3d bundle_statistic(const uvcodec::ModalityBundle& bundle);

/// One-vs-all least-squares linear classifier over the statistic (+bias).
struct LinearProbe {
    Eigen::MatrixXd weights; // n_classes x 4

    int predict(const Eigen::Vector3d& statistic) const;
};

LinearProbe fit_probe(const std::vector<Eigen::Vector3d>& statistics, const std::vector<int>& labels,
                      int n_classes);

double probe_accuracy(const LinearProbe& probe, const std::vector<Eigen::Vector3d>& statistics,
                      const std::vector<int>& labels);

} // namespace tbgan::data
