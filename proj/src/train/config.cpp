/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/train/config.cpp
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
#include "train/config.hpp"

#include "core/error.hpp"

#include <cmath>

namespace tbgan::training {

void TrainConfig::validate() const {
    require(lambda_gp >= 0.0, errc::invalid_argument, "train config: lambda_gp must be >= 0");
    require(n_critic >= 1, errc::invalid_argument, "train config: n_critic must be >= 1");
    require(learning_rate >= 0.0, errc::invalid_argument, "train config: learning_rate must be >= 0");
    require(batch_size >= 1, errc::invalid_argument, "train config: batch_size must be >= 1");
    require(total_images >= 0 && fade_images >= 0 && stable_images >= 0, errc::invalid_argument,
            "train config: image counters must be >= 0");
    require(class_weight >= 0.0, errc::invalid_argument, "train config: class_weight must be >= 0");
}

json TrainConfig::to_json() const {
    json doc;
    doc["lambda_gp"] = lambda_gp;
    doc["n_critic"] = n_critic;
    doc["learning_rate"] = learning_rate;
    doc["adam_beta1"] = adam_beta1;
    doc["adam_beta2"] = adam_beta2;
    doc["adam_eps"] = adam_eps;
    doc["class_weight"] = class_weight;
    doc["classify_fakes"] = classify_fakes;
    doc["batch_size"] = batch_size;
    doc["total_images"] = total_images;
    doc["fade_images"] = fade_images;
    doc["stable_images"] = stable_images;
    doc["seed"] = seed;
    doc["checkpoint_interval"] = checkpoint_interval;
    doc["ema_generator"] = ema_generator;
    return doc;
}

TrainConfig TrainConfig::from_json(const json& doc) {
    TrainConfig c;
    c.lambda_gp = doc.value("lambda_gp", 10.0);
    c.n_critic = doc.value("n_critic", 1);
    c.learning_rate = doc.value("learning_rate", 1e-3);
    c.adam_beta1 = doc.value("adam_beta1", 0.0);
    c.adam_beta2 = doc.value("adam_beta2", 0.99);
    c.adam_eps = doc.value("adam_eps", 1e-8);
    c.class_weight = doc.value("class_weight", 1.0);
    c.classify_fakes = doc.value("classify_fakes", true);
    c.batch_size = doc.value("batch_size", 8);
    c.total_images = doc.value("total_images", 16000LL);
    c.fade_images = doc.value("fade_images", 8000LL);
    c.stable_images = doc.value("stable_images", 8000LL);
    c.seed = doc.value("seed", std::uint64_t(0));
    c.checkpoint_interval = doc.value("checkpoint_interval", 500LL);
    c.ema_generator = doc.value("ema_generator", false);
    c.validate();
    return c;
}

void LossReport::validate() const {
    for (double v : {g_adv, d_adv, gp_term, g_class, d_class, wasserstein_estimate})
        require(std::isfinite(v), errc::numeric_divergence, "loss report: non-finite term");
    require(gp_term >= 0.0, errc::numeric_divergence, "loss report: negative gradient penalty");
}

} // namespace tbgan::training
