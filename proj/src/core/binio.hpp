/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/binio.hpp
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

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tbgan {

static_assert(std::endian::native == std::endian::little,
              "container formats are little-endian; big-endian hosts are unsupported");

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

/// Writes bytes atomically: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

/// Reads the whole file; throws io_error if missing, truncated_file if
/// expected_size is given and does not match.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path, std::int64_t expected_size = -1);

template <typename T>
std::span<const std::uint8_t> as_bytes_of(const std::vector<T>& v) {
    return {reinterpret_cast<const std::uint8_t*>(v.data()), v.size() * sizeof(T)};
}

template <typename T>
std::vector<T> from_bytes_of(const std::vector<std::uint8_t>& bytes) {
    std::vector<T> out(bytes.size() / sizeof(T));
    std::memcpy(out.data(), bytes.data(), out.size() * sizeof(T));
    return out;
}

} // namespace tbgan
