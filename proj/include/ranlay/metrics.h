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
#ifndef RANLAY_METRICS_H_
#define RANLAY_METRICS_H_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranlay/layout.h"

namespace ranlay {

inline constexpr int kNumIouThresholds = 10;

// 0.50, 0.55, ..., 0.95, each computed as (50 + 5k) / 100.
double IouThreshold(int k);

// Recall sampling points for interpolated AP: k / 100 for k = 0..100.
inline constexpr int kNumRecallPoints = 101;

struct ScoredPrediction {
  double confidence = 0;
  bool true_positive = false;

  bool operator==(const ScoredPrediction&) const = default;
};

struct ClassLedger {
  // One entry per prediction of this class, in input order (page order
  // after merging). Confidence ties resolve by input position.
  std::vector<ScoredPrediction> predictions;
  int64_t num_gt = 0;
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  bool operator==(const ClassLedger&) const = default;
};

struct MatchLedger {
  std::array<ClassLedger, kNumClasses> classes;

  // Appends other's predictions after this ledger's and sums the counts.
  void Merge(const MatchLedger& other);

  bool operator==(const MatchLedger&) const = default;
};

// Greedy per-class matching on one page. Predictions are visited by
// descending confidence (stable, so ties keep input order); each takes the
// still-unmatched ground truth of its class with the highest IoU, provided
// IoU >= iou_thresh (IoU ties go to the lower ground-truth index).
MatchLedger MatchDetections(const std::vector<Detection>& preds,
                            const std::vector<LayoutElement>& gts,
                            double iou_thresh);

// 101-point interpolated AP: precision is made non-increasing from the
// right and sampled at the first sweep position whose recall reaches each
// recall point (0 when none does). nullopt when the class has no ground
// truth.
std::optional<double> AveragePrecision(const ClassLedger& ledger);

struct EvalOptions {
  // Operating point for the precision/recall columns.
  double conf_thresh = 0.25;
  double pr_iou = 0.5;
};

struct ClassEval {
  int64_t num_gt = 0;
  int64_t num_pred = 0;
  // False when the class has no ground truth; such classes are left out of
  // every aggregate.
  bool evaluated = false;
  std::array<double, kNumIouThresholds> ap{};
  double ap50 = 0;
  double ap50_95 = 0;
  double precision = 0;
  double recall = 0;
  std::array<int64_t, kNumIouThresholds> tp{};
  std::array<int64_t, kNumIouThresholds> fp{};
  std::array<int64_t, kNumIouThresholds> fn{};
};

struct EvalReport {
  std::array<ClassEval, kNumClasses> classes;
  // Means over evaluated classes.
  double precision = 0;
  double recall = 0;
  double map50 = 0;
  double map50_95 = 0;
  int classes_evaluated = 0;
  size_t pages_evaluated = 0;
  // Image paths present in only one of the two inputs.
  std::vector<std::string> unmatched_pages;
};

// Pages are aligned by image path and only the intersection is scored.
// Per-page matching runs on OpenMP threads; the result equals
// EvaluateSerial exactly.
EvalReport Evaluate(const std::vector<DetectionPage>& preds, const Dataset& gts,
                    const EvalOptions& options = {});
EvalReport EvaluateSerial(const std::vector<DetectionPage>& preds,
                          const Dataset& gts, const EvalOptions& options = {});

// Precision / Recall / mAP50 / mAP50-95 per class plus an "all" row.
std::string FormatEvalTable(const EvalReport& r);

}  // namespace ranlay

#endif  // RANLAY_METRICS_H_
