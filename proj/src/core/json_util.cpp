/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/json_util.cpp
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
#include "core/json_util.hpp"

#include "core/binio.hpp"
#include "core/error.hpp"

#include <fstream>
#include <sstream>

namespace tbgan {

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    require(in.good(), errc::io_error, "cannot open: " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(errc::format_error, path.string() + ": " + e.what());
    }
}

void save_json(const std::filesystem::path& path, const json& doc) {
    const std::string text = doc.dump(2) + "\n";
    write_file_atomic(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

const json& json_field(const json& doc, const std::string& key, const std::string& context) {
    auto it = doc.find(key);
    if (it == doc.end())
        fail(errc::format_error, context + ": missing field '" + key + "'");
    return *it;
}

std::uint64_t json_hash(const json& doc) {
    // nlohmann::json objects are stored key-sorted, so dump() is canonical.
    const std::string text = doc.dump();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i)
        os << ((h >> (4 * i)) & 0xf);
    return os.str();
}

} // namespace tbgan
