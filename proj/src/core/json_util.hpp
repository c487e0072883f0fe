/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/json_util.hpp
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

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

namespace tbgan {

using json = nlohmann::json;

json load_json(const std::filesystem::path& path);
void save_json(const std::filesystem::path& path, const json& doc);

/// Fetches doc[key] or throws format_error naming the missing field.
const json& json_field(const json& doc, const std::string& key, const std::string& context);

/// FNV-1a over the canonical (sorted-key) dump; stable under key reordering.
std::uint64_t json_hash(const json& doc);

std::string hash_hex(std::uint64_t h);

} // namespace tbgan
