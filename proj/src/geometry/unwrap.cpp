/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/unwrap.cpp
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
#include "geometry/unwrap.hpp"

#include "core/error.hpp"

#include <cmath>

namespace tbgan::geometry {

void UVLayout::validate() const {
    for (const auto& p : uv)
        require(p[0] >= 0.0 && p[0] <= 1.0 && p[1] >= 0.0 && p[1] <= 1.0, errc::contract_violation,
                "UVLayout: coordinate outside [0,1]");
}

UVLayout cylindrical_unwrap(const Mesh& tmpl, double margin) {
    require(tmpl.vertex_count() >= 3, errc::invalid_argument, "cylindrical_unwrap: too few vertices");
    require(margin >= 0.0 && margin < 0.5, errc::invalid_argument, "cylindrical_unwrap: margin outside [0, 0.5)");

    const Eigen::Vector3d c = tmpl.centroid();
    double y_min = tmpl.vertices.front().y(), y_max = y_min;
    for (const auto& v : tmpl.vertices) {
        y_min = std::min(y_min, v.y());
        y_max = std::max(y_max, v.y());
    }
    require(y_max > y_min, errc::degenerate_input, "cylindrical_unwrap: template has zero height");

    constexpr double two_pi = 6.283185307179586476925286766559;
    UVLayout layout;
    layout.topology_id = tmpl.topology_id;
    layout.uv.resize(tmpl.vertices.size());
    for (std::size_t i = 0; i < tmpl.vertices.size(); ++i) {
        const Eigen::Vector3d& v = tmpl.vertices[i];
        // atan2(x', z') is 0 facing +z, so u = 0.5 at the face front and the
        // +-pi discontinuity (the seam) lands at the back.
        const double theta = std::atan2(v.x() - c.x(), v.z() - c.z());
        layout.uv[i][0] = 0.5 + theta / two_pi;
        layout.uv[i][1] = (v.y() - y_min) / (y_max - y_min);
    }

    for (std::size_t fi = 0; fi < tmpl.faces.size(); ++fi) {
        const auto& f = tmpl.faces[fi];
        double u_min = 1.0, u_max = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double u = layout.uv[std::size_t(f[std::size_t(k)])][0];
            u_min = std::min(u_min, u);
            u_max = std::max(u_max, u);
        }
        if (u_max - u_min > 0.5)
            fail(errc::unwrap_fold,
                 "cylindrical_unwrap: face " + std::to_string(fi) + " spans the back seam");
    }

    if (margin > 0.0) {
        const double squeeze = 1.0 - 2.0 * margin;
        for (auto& p : layout.uv) {
            p[0] = margin + squeeze * p[0];
            p[1] = margin + squeeze * p[1];
        }
    }
    return layout;
}

} // namespace tbgan::geometry
