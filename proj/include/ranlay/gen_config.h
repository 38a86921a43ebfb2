// Copyright 2026 The ranlay Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef RANLAY_GEN_CONFIG_H_
#define RANLAY_GEN_CONFIG_H_

#include <filesystem>
#include <string_view>

#include <json.hpp>

#include "ranlay/composer.h"

namespace ranlay {

inline constexpr int kGenConfigVersion = 1;

// Generation config file: a JSON object (// and /* */ comments allowed)
// with a mandatory "version": 1 and any subset of the GenConfig fields;
// absent fields keep the values of `base`. Unknown keys are rejected.
// Sets *has_seed when the file provides "seed".
GenConfig ParseGenConfig(std::string_view text, std::string_view source_name,
                         const GenConfig& base = {}, bool* has_seed = nullptr);
GenConfig LoadGenConfig(const std::filesystem::path& path,
                        const GenConfig& base = {}, bool* has_seed = nullptr);

// Full config in the file schema; parsing it back yields the same config.
nlohmann::json GenConfigToJson(const GenConfig& cfg);

}  // namespace ranlay

#endif  // RANLAY_GEN_CONFIG_H_
