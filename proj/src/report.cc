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
#include "ranlay/report.h"

#include <fstream>
#include <map>

#include <fmt/format.h>

#include "ranlay/error.h"
#include "ranlay/gen_config.h"

namespace ranlay {

using nlohmann::json;

json StatsJson(const DatasetStats& s) {
  json counts = json::object();
  json ratios = json::object();
  json percentages = json::object();
  for (LayoutClass c : kAllClasses) {
    const std::string name(ClassName(c));
    counts[name] = s.counts[ClassIndex(c)];
    ratios[name] = s.ratios[ClassIndex(c)];
    percentages[name] = s.percentages[ClassIndex(c)];
  }
  return {{"counts", std::move(counts)},
          {"ratios", std::move(ratios)},
          {"percentages", std::move(percentages)},
          {"total", s.total},
          {"pages", s.pages},
          {"mean_elements_per_page", s.mean_elements_per_page},
          {"mean_fill_ratio", s.mean_fill_ratio}};
}

json GenerationReportJson(const GenConfig& cfg, const CropBank& bank,
                          const GenerationResult& result) {
  json bank_counts = json::object();
  json bank_skipped = json::object();
  for (LayoutClass c : kAllClasses) {
    bank_counts[std::string(ClassName(c))] = bank.count(c);
    bank_skipped[std::string(ClassName(c))] = bank.skipped(c);
  }
  int64_t rejections = 0;
  std::map<std::string, int64_t> stops;
  for (StopReason r : {StopReason::kMaxElements, StopReason::kMaxRejections,
                       StopReason::kVerticalExhaustion}) {
    stops[std::string(StopReasonName(r))] = 0;
  }
  for (const PageSummary& p : result.pages) {
    rejections += p.rejections;
    ++stops[std::string(StopReasonName(p.stop))];
  }
  const double pages = static_cast<double>(result.pages.size());
  return {{"version", kReportVersion},
          {"status", "ok"},
          {"seed", cfg.master_seed},
          {"config", GenConfigToJson(cfg)},
          {"stats", StatsJson(ClassDistribution(result.dataset))},
          {"bank",
           {{"crops", std::move(bank_counts)},
            {"skipped", std::move(bank_skipped)},
            {"whole_pages", bank.whole_pages().size()}}},
          {"placement",
           {{"rejections_total", rejections},
            {"rejections_mean_per_page", pages > 0 ? rejections / pages : 0.0},
            {"stop_reasons", stops}}}};
}

json EvalReportJson(const EvalReport& r, const EvalOptions& options) {
  json classes = json::object();
  for (LayoutClass c : kAllClasses) {
    const ClassEval& ce = r.classes[ClassIndex(c)];
    json ap = json::object();
    json ledger = json::object();
    for (int k = 0; k < kNumIouThresholds; ++k) {
      const std::string t = fmt::format("{:.2f}", IouThreshold(k));
      ap[t] = ce.ap[k];
      ledger[t] = {{"tp", ce.tp[k]}, {"fp", ce.fp[k]}, {"fn", ce.fn[k]}};
    }
    json row = {{"gt", ce.num_gt},
                {"predictions", ce.num_pred},
                {"evaluated", ce.evaluated},
                {"ap", std::move(ap)},
                {"ledger", std::move(ledger)}};
    if (ce.evaluated) {
      row["Precision"] = ce.precision;
      row["Recall"] = ce.recall;
      row["mAP50"] = ce.ap50;
      row["mAP50-95"] = ce.ap50_95;
    } else {
      row["Precision"] = nullptr;
      row["Recall"] = nullptr;
      row["mAP50"] = nullptr;
      row["mAP50-95"] = nullptr;
    }
    classes[std::string(ClassName(c))] = std::move(row);
  }
  return {{"version", kReportVersion},
          {"conf_thresh", options.conf_thresh},
          {"pr_iou", options.pr_iou},
          {"pages_evaluated", r.pages_evaluated},
          {"unmatched_pages", r.unmatched_pages},
          {"classes", std::move(classes)},
          {"all",
           {{"Precision", r.precision},
            {"Recall", r.recall},
            {"mAP50", r.map50},
            {"mAP50-95", r.map50_95},
            {"classes_evaluated", r.classes_evaluated}}}};
}

void WriteJson(const json& j, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  out << j.dump(1) << "\n";
  if (!out) throw Error(ErrorCode::kIo, fmt::format("cannot write {}", path.string()));
}

}  // namespace ranlay
