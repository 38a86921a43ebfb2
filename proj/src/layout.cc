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
#include "ranlay/layout.h"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace ranlay {

namespace {

constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "Text", "Title", "List", "Table", "Figure"};

bool EqualsIgnoreCase(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string_view ClassName(LayoutClass c) {
  if (!IsKnownClass(c)) return "?";
  return kClassNames[ClassIndex(c)];
}

std::optional<LayoutClass> ParseClassName(std::string_view name) {
  for (LayoutClass c : kAllClasses) {
    if (EqualsIgnoreCase(name, kClassNames[ClassIndex(c)])) return c;
  }
  return std::nullopt;
}

ClassMap::ClassMap() : ids_{0, 1, 2, 3, 4} {}

ClassMap::ClassMap(const std::array<int, kNumClasses>& ids) : ids_(ids) {
  std::set<int> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size() || *seen.begin() < 0) {
    throw std::invalid_argument("class ids must be distinct and non-negative");
  }
}

std::optional<LayoutClass> ClassMap::ClassOf(int id) const {
  for (LayoutClass c : kAllClasses) {
    if (ids_[ClassIndex(c)] == id) return c;
  }
  return std::nullopt;
}

size_t Dataset::ElementCount() const {
  size_t n = 0;
  for (const auto& p : pages) n += p.elements.size();
  return n;
}

}  // namespace ranlay
