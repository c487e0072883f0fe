/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/nn_ops.hpp
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

#include "core/tape.hpp"

namespace tbgan::nn {

/// Composites assembled from tape primitives. Everything here stays
/// twice-differentiable because it never leaves the primitive set.

template <typename T>
Var leaky_relu(Tape<T>& t, Var x, T slope) {
    return t.add(t.where_pos(x, x), t.scale(t.where_nonpos(x, x), slope));
}

template <typename T>
Var mean_all(Tape<T>& t, Var x) {
    return t.scale(t.sum(x), T(1) / T(std::size_t(t.rows(x)) * std::size_t(t.cols(x))));
}

template <typename T>
Var dot(Tape<T>& t, Var a, Var b) {
    return t.sum(t.mul(a, b));
}

/// Global L2 norm with a tiny floor inside the square root so the derivative
/// stays finite at exactly zero input.
template <typename T>
Var l2_norm(Tape<T>& t, Var x, T eps = T(1e-16)) {
    return t.sqrt(t.add_scalar(t.sum(t.mul(x, x)), eps));
}

/// Per-pixel feature normalization across channels for a (C, H*W) map:
/// y = x / sqrt(mean_c(x^2) + eps).
template <typename T>
Var pixel_norm(Tape<T>& t, Var x, T eps = T(1e-8)) {
    const int channels = t.rows(x);
    Var ms = t.scale(t.col_sum(t.mul(x, x)), T(1) / T(channels));
    Var denom = t.recip(t.sqrt(t.add_scalar(ms, eps)));
    return t.mul(x, t.col_bcast(denom, channels));
}

/// Normalizes a column vector to unit RMS: y = x / sqrt(mean(x^2) + eps).
template <typename T>
Var vector_pixel_norm(Tape<T>& t, Var x, T eps = T(1e-8)) {
    Var ms = mean_all(t, t.mul(x, x));
    Var denom = t.recip(t.sqrt(t.add_scalar(ms, eps)));
    return t.mul(x, t.fill(denom, t.rows(x), t.cols(x)));
}

/// y = W x + b for a column vector x; W is (m, n), b is (m, 1).
template <typename T>
Var dense(Tape<T>& t, Var w, Var b, Var x) {
    return t.add(t.matmul(w, x), b);
}

/// 2D convolution on a (C, H*W) map, stride 1, 'same' padding, odd kernel k.
/// Weights are (K, C*k*k), bias (K, 1).
template <typename T>
Var conv2d(Tape<T>& t, Var x, Var w, Var b, int h, int width, int k) {
    Var cols = k == 1 ? x : t.im2col(x, h, width, k);
    Var y = t.matmul(w, cols);
    return t.add(y, t.row_bcast(b, h * width));
}

/// log(sum(exp(x))) for a column vector, stabilized by the detached max.
template <typename T>
Var log_sum_exp(Tape<T>& t, Var x) {
    Var m = t.max_all(x);
    Var shifted = t.sub(x, t.fill(m, t.rows(x), t.cols(x)));
    return t.add(t.log(t.sum(t.exp(shifted))), m);
}

/// Softmax cross entropy H(p, softmax(logits)) = lse(logits) - <p, logits>
/// for a label distribution p summing to one.
template <typename T>
Var cross_entropy_with_logits(Tape<T>& t, Var logits, Var label) {
    return t.sub(log_sum_exp(t, logits), dot(t, logits, label));
}

/// Arithmetic mean of scalar nodes.
template <typename T>
Var mean_of(Tape<T>& t, const std::vector<Var>& scalars) {
    require(!scalars.empty(), errc::invalid_argument, "mean_of: empty list");
    Var acc = scalars[0];
    for (std::size_t i = 1; i < scalars.size(); ++i)
        acc = t.add(acc, scalars[i]);
    return t.scale(acc, T(1) / T(scalars.size()));
}

} // namespace tbgan::nn
