/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: src/core/error.hpp
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

#include <stdexcept>
#include <string>

namespace tbgan {

enum class errc {
    invalid_argument,   // bad parameters, malformed config
    degenerate_input,   // collinear vertices, all-zero corpus, rank collapse
    unwrap_fold,        // triangle spans the cylindrical seam
    contract_violation, // topology/resolution/dimension mismatch between objects
    io_error,           // filesystem failures
    format_error,       // unparseable or wrong-version container
    truncated_file,     // container file shorter than declared
    checksum_mismatch,  // container payload does not match its recorded checksum
    numeric_divergence, // NaN/Inf in training losses or gradients
};

/// Exception carrying a machine-readable error class next to the message.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& message) : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) { throw error(code, message); }

inline void require(bool condition, errc code, const std::string& message) {
    if (!condition)
        fail(code, message);
}

} // namespace tbgan
