/*
 * tbgan: coupled 3D face synthesis with a trunk-branch GAN.
 *
 * File: tests/acceptance/acceptance.hpp
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

#include <functional>
#include <string>
#include <vector>

namespace tbgan::acceptance {

struct Criterion {
    int id;
    const char* title;
    std::function<bool(std::string& detail)> run;
};

const std::vector<Criterion>& all_criteria();

} // namespace tbgan::acceptance
