/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/binio.cpp
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
#include "core/binio.hpp"

#include "core/error.hpp"

#include <array>
#include <cstring>
#include <fstream>

namespace tbgan {

namespace {

std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

} // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    static const auto table = make_crc_table();
    std::uint32_t c = 0xffffffffu;
    for (std::uint8_t b : bytes)
        c = table[(c ^ b) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(out.good(), errc::io_error, "cannot open for writing: " + tmp.string());
        out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
        require(out.good(), errc::io_error, "short write: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    require(!ec, errc::io_error, "rename failed: " + path.string() + " (" + ec.message() + ")");
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path, std::int64_t expected_size) {
    std::ifstream in(path, std::ios::binary | std::ios::ate);
    require(in.good(), errc::io_error, "cannot open: " + path.string());
    const auto size = std::int64_t(in.tellg());
    if (expected_size >= 0 && size != expected_size)
        fail(errc::truncated_file, path.string() + ": expected " + std::to_string(expected_size) +
                                       " bytes, found " + std::to_string(size));
    in.seekg(0);
    std::vector<std::uint8_t> bytes(static_cast<std::size_t>(size), 0);
    in.read(reinterpret_cast<char*>(bytes.data()), size);
    require(in.good(), errc::io_error, "short read: " + path.string());
    return bytes;
}

} // namespace tbgan
