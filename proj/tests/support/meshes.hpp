/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/support/meshes.hpp
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

#include "core/rng.hpp"
#include "geometry/mesh.hpp"
#include "geometry/procrustes.hpp"

#include <Eigen/Geometry>

#include <cmath>
#include <map>

namespace tbgan::testing {

/// Icosphere with 20 * 4^subdivisions faces, vertices on the unit sphere.
inline geometry::Mesh icosphere(int subdivisions) {
    using geometry::Mesh;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    Mesh m;
    const double pts[12][3] = {{-1, phi, 0}, {1, phi, 0},   {-1, -phi, 0}, {1, -phi, 0},
                               {0, -1, phi}, {0, 1, phi},   {0, -1, -phi}, {0, 1, -phi},
                               {phi, 0, -1}, {phi, 0, 1},   {-phi, 0, -1}, {-phi, 0, 1}};
    for (const auto& p : pts)
        m.vertices.push_back(Eigen::Vector3d(p[0], p[1], p[2]).normalized());
    const int fs[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                           {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                           {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                           {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (const auto& f : fs)
        m.faces.push_back({f[0], f[1], f[2]});

    for (int s = 0; s < subdivisions; ++s) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int a, int b) {
            const auto key = std::minmax(a, b);
            auto it = midpoint.find(key);
            if (it != midpoint.end())
                return it->second;
            const int idx = int(m.vertices.size());
            m.vertices.push_back(
                ((m.vertices[std::size_t(a)] + m.vertices[std::size_t(b)]) * 0.5).normalized());
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<std::array<int, 3>> next;
        for (const auto& f : m.faces) {
            const int ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        m.faces = std::move(next);
    }
    geometry::ensure_topology_id(m);
    return m;
}

/// Axis-aligned grid in the z = z0 plane, (nx+1)*(ny+1) vertices.
inline geometry::Mesh planar_grid(int nx, int ny, double z0 = 0.0) {
    geometry::Mesh m;
    for (int y = 0; y <= ny; ++y)
        for (int x = 0; x <= nx; ++x)
            m.vertices.emplace_back(double(x) / nx, double(y) / ny, z0);
    auto vid = [nx](int x, int y) { return y * (nx + 1) + x; };
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x) {
            m.faces.push_back({vid(x, y), vid(x + 1, y), vid(x + 1, y + 1)});
            m.faces.push_back({vid(x, y), vid(x + 1, y + 1), vid(x, y + 1)});
        }
    geometry::ensure_topology_id(m);
    return m;
}

/// Random vertex cloud with a fan triangulation; good enough where only the
/// vertex correspondence matters.
inline geometry::Mesh random_mesh(Rng& rng, int n_vertices) {
    geometry::Mesh m;
    for (int i = 0; i < n_vertices; ++i)
        m.vertices.emplace_back(rng.normal(), rng.normal(), rng.normal());
    for (int i = 1; i + 1 < n_vertices; ++i)
        m.faces.push_back({0, i, i + 1});
    geometry::ensure_topology_id(m);
    return m;
}

/// Open face-like patch around +z: a (nu+1) x (nv+1) grid over azimuth and
/// height on a bumpy cylinder-ish surface. Unwraps without seam crossings.
inline geometry::Mesh spherical_patch(int nu, int nv, double azimuth_span = 2.2) {
    geometry::Mesh patch;
    for (int j = 0; j <= nv; ++j)
        for (int i = 0; i <= nu; ++i) {
            const double az = (double(i) / nu - 0.5) * azimuth_span;
            const double y = double(j) / nv * 2.0 - 1.0;
            // Keep the surface in front of its own centroid near az = 0 so the
            // centroid-axis unwrap never wraps past the back seam.
            const double r = 1.05 + 0.12 * std::sin(2.0 * az + 1.3 * y);
            patch.vertices.emplace_back(r * std::sin(az), y, r * std::cos(az));
        }
    auto vid = [nu](int i, int j) { return j * (nu + 1) + i; };
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            patch.faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
            patch.faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
        }
    geometry::ensure_topology_id(patch);
    return patch;
}

inline geometry::SimilarityTransform random_similarity(Rng& rng) {
    geometry::SimilarityTransform t;
    Eigen::Vector3d axis(rng.normal(), rng.normal(), rng.normal());
    axis.normalize();
    t.rotation = Eigen::AngleAxisd(rng.uniform(0.0, 3.0), axis).toRotationMatrix();
    t.scale = std::exp(rng.uniform(-1.0, 1.0));
    t.translation = Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()) * 2.0;
    return t;
}

} // namespace tbgan::testing
