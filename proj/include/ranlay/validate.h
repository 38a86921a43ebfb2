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
#ifndef RANLAY_VALIDATE_H_
#define RANLAY_VALIDATE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ranlay/layout.h"

namespace ranlay {

enum class ViolationKind {
  kPageDimensions,
  kDuplicateImagePath,
  kOutOfBounds,
  kNonPositiveArea,
  kUnknownClass,
  kOverlap,
};

std::string_view ViolationKindName(ViolationKind kind);

inline constexpr size_t kNoIndex = static_cast<size_t>(-1);

struct Violation {
  ViolationKind kind;
  size_t page = kNoIndex;
  // Element index within the page; kNoIndex for page-level violations.
  size_t element = kNoIndex;
  // Second element of an overlapping pair (element < other).
  size_t other = kNoIndex;
  std::string message;
};

struct ValidationPolicy {
  bool no_overlap = false;
};

// Every violation in the dataset, ordered by page, then page-level checks,
// per-element checks in element order, and overlapping pairs in (i, j)
// order. Elements with non-finite coordinates are excluded from the overlap
// check.
std::vector<Violation> Validate(const Dataset& d, const ValidationPolicy& policy);

// Overlapping pairs (i < j, positive intersection area) on one page, sorted.
// Sweep over x_min; O(n log n + k) for k reported pairs.
std::vector<std::pair<size_t, size_t>> OverlappingPairs(
    const std::vector<BBox>& boxes);

}  // namespace ranlay

#endif  // RANLAY_VALIDATE_H_
