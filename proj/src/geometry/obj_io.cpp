/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/geometry/obj_io.cpp
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
#include "geometry/obj_io.hpp"

#include "core/binio.hpp"
#include "core/error.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace tbgan::geometry {

namespace {

int parse_face_vertex(const std::string& token, std::size_t line_no, int vertex_count, int* vt_index) {
    // Accepts "v", "v/vt", "v//vn", "v/vt/vn"; only positive 1-based indices.
    std::size_t slash = token.find('/');
    const std::string v_part = token.substr(0, slash);
    int v = 0;
    try {
        v = std::stoi(v_part);
    } catch (...) {
        fail(errc::format_error, "OBJ line " + std::to_string(line_no) + ": bad face index '" + token + "'");
    }
    require(v >= 1 && v <= vertex_count, errc::format_error,
            "OBJ line " + std::to_string(line_no) + ": face index out of range");
    *vt_index = -1;
    if (slash != std::string::npos) {
        const std::string rest = token.substr(slash + 1);
        const std::string vt_part = rest.substr(0, rest.find('/'));
        if (!vt_part.empty()) {
            try {
                *vt_index = std::stoi(vt_part);
            } catch (...) {
                fail(errc::format_error, "OBJ line " + std::to_string(line_no) + ": bad vt index");
            }
        }
    }
    return v - 1;
}

} // namespace

ObjContents load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open: " + path.string());

    ObjContents out;
    std::vector<std::array<double, 2>> vts;
    bool vt_aligned = true; // every face reference uses the same index for v and vt

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag.empty() || tag[0] == '#')
            continue;
        if (tag == "v") {
            double x, y, z;
            require(bool(ls >> x >> y >> z), errc::format_error,
                    "OBJ line " + std::to_string(line_no) + ": malformed vertex");
            out.mesh.vertices.emplace_back(x, y, z);
            double r, g, b;
            if (ls >> r >> g >> b)
                out.colors.emplace_back(r, g, b);
        } else if (tag == "vt") {
            double u, v;
            require(bool(ls >> u >> v), errc::format_error,
                    "OBJ line " + std::to_string(line_no) + ": malformed texture coordinate");
            vts.push_back({u, v});
        } else if (tag == "f") {
            std::array<int, 3> face{};
            std::string token;
            int count = 0;
            while (ls >> token) {
                require(count < 3, errc::format_error,
                        "OBJ line " + std::to_string(line_no) + ": polygonal faces are not supported");
                int vt = -1;
                face[std::size_t(count)] =
                    parse_face_vertex(token, line_no, int(out.mesh.vertices.size()), &vt);
                if (vt >= 1 && vt - 1 != face[std::size_t(count)])
                    vt_aligned = false;
                ++count;
            }
            require(count == 3, errc::format_error,
                    "OBJ line " + std::to_string(line_no) + ": face needs exactly 3 vertices");
            out.mesh.faces.push_back(face);
        }
    }
    require(!out.mesh.vertices.empty(), errc::format_error, path.string() + ": no vertices");
    if (!out.colors.empty())
        require(out.colors.size() == out.mesh.vertices.size(), errc::format_error,
                path.string() + ": some vertices carry colors, some do not");

    ensure_topology_id(out.mesh);
    out.mesh.validate();

    if (vt_aligned && vts.size() == out.mesh.vertices.size()) {
        UVLayout layout;
        layout.uv = std::move(vts);
        layout.topology_id = out.mesh.topology_id;
        out.layout = std::move(layout);
    }
    return out;
}

void save_obj(const std::filesystem::path& path, const Mesh& mesh, const UVLayout* layout,
              const std::vector<Eigen::Vector3d>* colors) {
    if (layout)
        require(int(layout->uv.size()) == mesh.vertex_count(), errc::contract_violation,
                "save_obj: layout vertex count mismatch");
    if (colors)
        require(int(colors->size()) == mesh.vertex_count(), errc::contract_violation,
                "save_obj: color count mismatch");

    std::string text;
    text.reserve(std::size_t(mesh.vertex_count()) * 48);
    char buf[160];
    for (int i = 0; i < mesh.vertex_count(); ++i) {
        const auto& v = mesh.vertices[std::size_t(i)];
        if (colors) {
            const auto& c = (*colors)[std::size_t(i)];
            std::snprintf(buf, sizeof buf, "v %.8g %.8g %.8g %.8g %.8g %.8g\n", v.x(), v.y(), v.z(),
                          c.x(), c.y(), c.z());
        } else {
            std::snprintf(buf, sizeof buf, "v %.8g %.8g %.8g\n", v.x(), v.y(), v.z());
        }
        text += buf;
    }
    if (layout)
        for (const auto& p : layout->uv) {
            std::snprintf(buf, sizeof buf, "vt %.8g %.8g\n", p[0], p[1]);
            text += buf;
        }
    for (const auto& f : mesh.faces) {
        if (layout)
            std::snprintf(buf, sizeof buf, "f %d/%d %d/%d %d/%d\n", f[0] + 1, f[0] + 1, f[1] + 1,
                          f[1] + 1, f[2] + 1, f[2] + 1);
        else
            std::snprintf(buf, sizeof buf, "f %d %d %d\n", f[0] + 1, f[1] + 1, f[2] + 1);
        text += buf;
    }
    write_file_atomic(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

} // namespace tbgan::geometry
