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
#ifndef RANLAY_REPORT_H_
#define RANLAY_REPORT_H_

#include <filesystem>

#include <json.hpp>

#include "ranlay/composer.h"
#include "ranlay/crop_bank.h"
#include "ranlay/metrics.h"
#include "ranlay/stats.h"

namespace ranlay {

inline constexpr int kReportVersion = 1;

// "stats" section: counts, raw ratios and rounded percentages per class.
nlohmann::json StatsJson(const DatasetStats& s);

// report.json for a generation run: config echo with seed, stats of the
// emitted labels, bank summary and placement statistics.
nlohmann::json GenerationReportJson(const GenConfig& cfg, const CropBank& bank,
                                    const GenerationResult& result);

// Columns Precision, Recall, mAP50, mAP50-95 per class and for "all", plus
// per-threshold AP and the TP/FP/FN ledger.
nlohmann::json EvalReportJson(const EvalReport& r, const EvalOptions& options);

// Serializes with a trailing newline.
void WriteJson(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace ranlay

#endif  // RANLAY_REPORT_H_
