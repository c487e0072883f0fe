/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/raster.cpp
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
#include "uvcodec/raster.hpp"

#include <algorithm>
#include <cmath>

namespace tbgan::uvcodec {

namespace {

bool power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

inline double edge_fn(double ax, double ay, double bx, double by, double px, double py) {
    return (bx - ax) * (py - ay) - (by - ay) * (px - ax);
}

} // namespace

ModalityMap rasterize_to_uv(const Eigen::MatrixXd& values, const geometry::Mesh& mesh,
                            const geometry::UVLayout& layout, int resolution, Modality modality,
                            std::array<float, 2> value_range) {
    require(resolution >= 4, errc::invalid_argument, "rasterize_to_uv: resolution must be >= 4");
    require(power_of_two(resolution), errc::invalid_argument,
            "rasterize_to_uv: resolution must be a power of two");
    require(values.rows() == layout.vertex_count(), errc::invalid_argument,
            "rasterize_to_uv: value row count must match layout vertex count");
    require(mesh.vertex_count() == layout.vertex_count(), errc::contract_violation,
            "rasterize_to_uv: mesh/layout vertex count mismatch");

    const int w = resolution, h = resolution;
    const int channels = int(values.cols());
    require(channels >= 1 && channels <= 16, errc::invalid_argument,
            "rasterize_to_uv: supports 1..16 channels");

    ModalityMap map;
    map.height = h;
    map.width = w;
    map.channels = channels;
    map.modality = modality;
    map.value_range = value_range;
    map.data.assign(std::size_t(h) * w * channels, 0.0f);
    map.mask.assign(std::size_t(h) * w, 0);

    // Triangle vertices in pixel space: u*W, so pixel x covers [x, x+1) and
    // its center sits at x + 0.5.
    for (std::size_t fi = 0; fi < mesh.faces.size(); ++fi) {
        const auto& f = mesh.faces[fi];
        const double ax = layout.uv[std::size_t(f[0])][0] * w, ay = layout.uv[std::size_t(f[0])][1] * h;
        const double bx = layout.uv[std::size_t(f[1])][0] * w, by = layout.uv[std::size_t(f[1])][1] * h;
        const double cx = layout.uv[std::size_t(f[2])][0] * w, cy = layout.uv[std::size_t(f[2])][1] * h;

        const double area2 = edge_fn(ax, ay, bx, by, cx, cy);
        if (area2 == 0.0)
            continue;
        const double sign = area2 > 0.0 ? 1.0 : -1.0;

        const int x_lo = std::max(0, int(std::floor(std::min({ax, bx, cx}) - 0.5)));
        const int x_hi = std::min(w - 1, int(std::ceil(std::max({ax, bx, cx}) - 0.5)));
        const int y_lo = std::max(0, int(std::floor(std::min({ay, by, cy}) - 0.5)));
        const int y_hi = std::min(h - 1, int(std::ceil(std::max({ay, by, cy}) - 0.5)));

        for (int y = y_lo; y <= y_hi; ++y) {
            const double py = y + 0.5;
            for (int x = x_lo; x <= x_hi; ++x) {
                if (map.mask[std::size_t(y) * w + x])
                    continue; // lowest face index wins ties
                const double px = x + 0.5;
                const double w0 = sign * edge_fn(bx, by, cx, cy, px, py);
                const double w1 = sign * edge_fn(cx, cy, ax, ay, px, py);
                const double w2 = sign * edge_fn(ax, ay, bx, by, px, py);
                if (w0 < 0.0 || w1 < 0.0 || w2 < 0.0)
                    continue;
                const double denom = w0 + w1 + w2;
                map.mask[std::size_t(y) * w + x] = 1;
                for (int c = 0; c < channels; ++c) {
                    const double v = (w0 * values(f[0], c) + w1 * values(f[1], c) + w2 * values(f[2], c)) / denom;
                    map.at(y, x, c) = float(v);
                }
            }
        }
    }

    // Iterative dilation, one ring per round, reading the previous round's
    // state only so the result is traversal-order-free. Each new pixel takes
    // the mean of first-order continuations from its filled neighbors
    // (2*f(p) - f(p + (p - q)) when the pixel behind p is filled too), which
    // keeps the first gutter ring accurate to O(h^2) instead of flattening
    // the field at the chart border. Fills are clamped to the value range.
    std::vector<std::uint8_t> filled = map.mask;
    std::size_t remaining = 0;
    for (std::uint8_t m : filled)
        remaining += m ? 0 : 1;
    const double lo = value_range[0], hi = value_range[1];
    while (remaining > 0) {
        const std::vector<std::uint8_t> prev_filled = filled;
        const std::vector<float> prev_data = map.data;
        auto is_filled = [&](int yy, int xx) {
            return yy >= 0 && yy < h && xx >= 0 && xx < w && prev_filled[std::size_t(yy) * w + xx] != 0;
        };
        std::size_t progressed = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (prev_filled[std::size_t(y) * w + x])
                    continue;
                double acc[16] = {0};
                int count = 0;
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dy == 0 && dx == 0)
                            continue;
                        const int ny = y + dy, nx = x + dx;
                        if (!is_filled(ny, nx))
                            continue;
                        const int by = ny + dy, bx = nx + dx; // one step further inward
                        const bool linear = is_filled(by, bx);
                        ++count;
                        for (int c = 0; c < channels; ++c) {
                            const double fp = prev_data[(std::size_t(ny) * w + nx) * channels + c];
                            acc[c] += linear
                                          ? 2.0 * fp - prev_data[(std::size_t(by) * w + bx) * channels + c]
                                          : fp;
                        }
                    }
                if (count == 0)
                    continue;
                for (int c = 0; c < channels; ++c)
                    map.at(y, x, c) = float(std::clamp(acc[c] / count, lo, hi));
                filled[std::size_t(y) * w + x] = 1;
                ++progressed;
            }
        require(progressed > 0, errc::degenerate_input, "rasterize_to_uv: no covered pixels to dilate from");
        remaining -= progressed;
    }
    return map;
}

Eigen::MatrixXd sample_from_uv(const ModalityMap& map, const geometry::UVLayout& layout) {
    for (const auto& p : layout.uv)
        require(p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0, errc::invalid_argument,
                "sample_from_uv: layout coordinate outside [0,1]");

    const int w = map.width, h = map.height, channels = map.channels;
    Eigen::MatrixXd out(layout.vertex_count(), channels);
    for (int i = 0; i < layout.vertex_count(); ++i) {
        // Clamp-to-edge in pixel-center coordinates.
        const double px = std::clamp(layout.uv[std::size_t(i)][0] * w - 0.5, 0.0, double(w - 1));
        const double py = std::clamp(layout.uv[std::size_t(i)][1] * h - 0.5, 0.0, double(h - 1));
        const int x0 = int(std::floor(px));
        const int y0 = int(std::floor(py));
        const int x1 = std::min(x0 + 1, w - 1);
        const int y1 = std::min(y0 + 1, h - 1);
        const double fx = px - x0;
        const double fy = py - y0;
        for (int c = 0; c < channels; ++c) {
            const double v00 = map.at(y0, x0, c), v01 = map.at(y0, x1, c);
            const double v10 = map.at(y1, x0, c), v11 = map.at(y1, x1, c);
            out(i, c) = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) + fy * ((1.0 - fx) * v10 + fx * v11);
        }
    }
    return out;
}

} // namespace tbgan::uvcodec
