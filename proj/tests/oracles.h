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
// Independent reference implementations used only by the tests. Each one
// follows the textbook definition directly and shares no code with the
// library path it checks.
#ifndef RANLAY_TESTS_ORACLES_H_
#define RANLAY_TESTS_ORACLES_H_

#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "ranlay/layout.h"

namespace ranlay::testing {

// IoU by counting unit cells of integer-coordinate boxes.
double PixelCountIou(const BBox& a, const BBox& b);

// All (i, j), i < j, with positive overlap, by checking every pair.
std::vector<std::pair<size_t, size_t>> BruteForceOverlaps(
    const std::vector<BBox>& boxes);

// (kind, page, element, other) tuples; kind uses ViolationKind ordinals.
using ViolationKey = std::tuple<int, size_t, size_t, size_t>;
// Pairs of boxes that intersect or sit closer than `gap` apart, plus boxes
// that leave the [margin, size - margin] area.
size_t CountLayoutViolations(const std::vector<BBox>& boxes, int canvas_w,
                             int canvas_h, int margin, int gap);

std::vector<ViolationKey> BruteForceViolations(const Dataset& d, bool no_overlap);

// Greedy matching outcome for one class on one page, found by enumerating
// every injective partial assignment and keeping the lexicographically best
// per-prediction sequence of (IoU, -gt index) in confidence order.
// Returns, per prediction (input order), whether it is a true positive.
std::vector<bool> EnumeratedGreedyMatch(const std::vector<Detection>& preds,
                                        const std::vector<BBox>& gts,
                                        double iou_thresh);

struct OracleScore {
  double confidence;
  bool tp;
};

// 101-point interpolated AP by definition: for each recall point r, the
// maximum precision over all sweep positions with recall >= r.
double DefinitionAp(std::vector<OracleScore> scores, long num_gt);

struct OracleReport {
  std::array<bool, kNumClasses> evaluated{};
  std::array<std::array<double, 10>, kNumClasses> ap{};
  std::array<double, kNumClasses> precision{};
  std::array<double, kNumClasses> recall{};
  double precision_all = 0;
  double recall_all = 0;
  double map50 = 0;
  double map50_95 = 0;
};

OracleReport BruteForceEvaluate(const std::vector<DetectionPage>& preds,
                                const Dataset& gts, double conf_thresh,
                                double pr_iou);

// Grouping oracle for manifests: sorted multiset of (path, class, box).
using RowKey = std::tuple<std::string, int, double, double, double, double>;
std::vector<RowKey> RowMultiset(const Dataset& d);

}  // namespace ranlay::testing

#endif  // RANLAY_TESTS_ORACLES_H_
