/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/uvcodec/bundle_io.hpp
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

#include "uvcodec/modality.hpp"

#include <filesystem>

namespace tbgan::uvcodec {

/// Bundle container: a directory holding meta.json, one raw little-endian
/// row-major float32 file per modality, and the mask bit-packed LSB-first.
/// Layout details in docs/formats.md. read(write(b)) == b bit-exact.
void write_bundle(const ModalityBundle& bundle, const std::filesystem::path& dir);
ModalityBundle read_bundle(const std::filesystem::path& dir);

inline constexpr int kBundleFormatVersion = 1;

} // namespace tbgan::uvcodec
