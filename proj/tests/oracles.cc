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
#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace ranlay::testing {

namespace {

constexpr size_t kNone = static_cast<size_t>(-1);

double ClosedIou(const BBox& a, const BBox& b) {
  double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (iw <= 0 || ih <= 0) return 0.0;
  double inter = iw * ih;
  double ua = (a.x_max - a.x_min) * (a.y_max - a.y_min) +
              (b.x_max - b.x_min) * (b.y_max - b.y_min) - inter;
  return inter / ua;
}

bool AllFinite(const BBox& b) {
  return std::isfinite(b.x_min) && std::isfinite(b.y_min) &&
         std::isfinite(b.x_max) && std::isfinite(b.y_max);
}

using Key = std::vector<std::pair<double, long>>;

void Enumerate(const std::vector<size_t>& order,
               const std::vector<Detection>& preds,
               const std::vector<BBox>& gts, double thr, size_t depth,
               std::vector<bool>& used, std::vector<long>& assign, Key& key,
               Key& best_key, std::vector<long>& best_assign) {
  if (depth == order.size()) {
    if (best_assign.empty() || key > best_key) {
      best_key = key;
      best_assign = assign;
    }
    return;
  }
  const Detection& p = preds[order[depth]];
  key.push_back({-1.0, 0});
  assign.push_back(-1);
  Enumerate(order, preds, gts, thr, depth + 1, used, assign, key, best_key,
            best_assign);
  key.pop_back();
  assign.pop_back();
  for (size_t g = 0; g < gts.size(); ++g) {
    if (used[g]) continue;
    double iou = ClosedIou(p.bbox, gts[g]);
    if (!(iou >= thr)) continue;
    used[g] = true;
    key.push_back({iou, -static_cast<long>(g)});
    assign.push_back(static_cast<long>(g));
    Enumerate(order, preds, gts, thr, depth + 1, used, assign, key, best_key,
              best_assign);
    key.pop_back();
    assign.pop_back();
    used[g] = false;
  }
}

}  // namespace

double PixelCountIou(const BBox& a, const BBox& b) {
  const int x0 = static_cast<int>(std::min(a.x_min, b.x_min));
  const int y0 = static_cast<int>(std::min(a.y_min, b.y_min));
  const int x1 = static_cast<int>(std::max(a.x_max, b.x_max));
  const int y1 = static_cast<int>(std::max(a.y_max, b.y_max));
  long inter = 0;
  long uni = 0;
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) {
      // Cell [x, x+1) x [y, y+1).
      bool in_a = x >= a.x_min && x + 1 <= a.x_max && y >= a.y_min && y + 1 <= a.y_max;
      bool in_b = x >= b.x_min && x + 1 <= b.x_max && y >= b.y_min && y + 1 <= b.y_max;
      inter += in_a && in_b;
      uni += in_a || in_b;
    }
  }
  return uni == 0 ? 0.0 : static_cast<double>(inter) / uni;
}

std::vector<std::pair<size_t, size_t>> BruteForceOverlaps(
    const std::vector<BBox>& boxes) {
  std::vector<std::pair<size_t, size_t>> out;
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      if (!AllFinite(boxes[i]) || !AllFinite(boxes[j])) continue;
      double iw = std::min(boxes[i].x_max, boxes[j].x_max) -
                  std::max(boxes[i].x_min, boxes[j].x_min);
      double ih = std::min(boxes[i].y_max, boxes[j].y_max) -
                  std::max(boxes[i].y_min, boxes[j].y_min);
      if (iw > 0 && ih > 0) out.emplace_back(i, j);
    }
  }
  return out;
}

size_t CountLayoutViolations(const std::vector<BBox>& boxes, int canvas_w,
                             int canvas_h, int margin, int gap) {
  size_t bad = 0;
  for (const BBox& b : boxes) {
    if (!(b.x_min >= margin && b.y_min >= margin && b.x_max <= canvas_w - margin &&
          b.y_max <= canvas_h - margin && b.x_min < b.x_max && b.y_min < b.y_max)) {
      ++bad;
    }
  }
  for (size_t i = 0; i < boxes.size(); ++i) {
    for (size_t j = i + 1; j < boxes.size(); ++j) {
      const BBox& a = boxes[i];
      const BBox& b = boxes[j];
      double dx = std::max(b.x_min - a.x_max, a.x_min - b.x_max);
      double dy = std::max(b.y_min - a.y_max, a.y_min - b.y_max);
      if (std::max(dx, dy) < gap || (dx < 0 && dy < 0)) ++bad;
    }
  }
  return bad;
}

std::vector<ViolationKey> BruteForceViolations(const Dataset& d, bool no_overlap) {
  std::vector<ViolationKey> out;
  std::set<std::string> paths;
  for (size_t p = 0; p < d.pages.size(); ++p) {
    const auto& page = d.pages[p];
    if (page.width <= 0 || page.height <= 0) out.emplace_back(0, p, kNone, kNone);
    if (!paths.insert(page.image_path).second) out.emplace_back(1, p, kNone, kNone);
    std::vector<BBox> boxes;
    for (size_t i = 0; i < page.elements.size(); ++i) {
      const BBox& b = page.elements[i].bbox;
      boxes.push_back(b);
      bool inside = AllFinite(b) && b.x_min >= 0 && b.y_min >= 0 &&
                    b.x_max <= page.width && b.y_max <= page.height;
      if (!inside) out.emplace_back(2, p, i, kNone);
      if (!(b.x_max - b.x_min > 0 && b.y_max - b.y_min > 0)) out.emplace_back(3, p, i, kNone);
      int label = static_cast<int>(page.elements[i].label);
      if (label < 0 || label > 4) out.emplace_back(4, p, i, kNone);
    }
    if (no_overlap) {
      for (auto [i, j] : BruteForceOverlaps(boxes)) out.emplace_back(5, p, i, j);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<bool> EnumeratedGreedyMatch(const std::vector<Detection>& preds,
                                        const std::vector<BBox>& gts,
                                        double iou_thresh) {
  std::vector<size_t> order(preds.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Confidence descending, input order on ties (insertion sort keeps it
  // stable without relying on the library's sort).
  for (size_t i = 1; i < order.size(); ++i) {
    for (size_t j = i; j > 0 && preds[order[j]].confidence > preds[order[j - 1]].confidence; --j) {
      std::swap(order[j], order[j - 1]);
    }
  }
  std::vector<bool> used(gts.size(), false);
  std::vector<long> assign;
  std::vector<long> best_assign;
  Key key;
  Key best_key;
  Enumerate(order, preds, gts, iou_thresh, 0, used, assign, key, best_key,
            best_assign);
  std::vector<bool> tp(preds.size(), false);
  for (size_t k = 0; k < order.size(); ++k) tp[order[k]] = best_assign[k] >= 0;
  return tp;
}

double DefinitionAp(std::vector<OracleScore> scores, long num_gt) {
  for (size_t i = 1; i < scores.size(); ++i) {
    for (size_t j = i; j > 0 && scores[j].confidence > scores[j - 1].confidence; --j) {
      std::swap(scores[j], scores[j - 1]);
    }
  }
  std::vector<double> recall;
  std::vector<double> precision;
  long tp = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    tp += scores[i].tp;
    recall.push_back(static_cast<double>(tp) / num_gt);
    precision.push_back(static_cast<double>(tp) / static_cast<double>(i + 1));
  }
  double sum = 0;
  for (int k = 0; k <= 100; ++k) {
    const double r = k / 100.0;
    double best = 0;
    for (size_t i = 0; i < recall.size(); ++i) {
      if (recall[i] >= r) best = std::max(best, precision[i]);
    }
    sum += best;
  }
  return sum / 101.0;
}

OracleReport BruteForceEvaluate(const std::vector<DetectionPage>& preds,
                                const Dataset& gts, double conf_thresh,
                                double pr_iou) {
  std::map<std::string, std::vector<Detection>> by_path;
  for (const auto& p : preds) {
    auto& v = by_path[p.image_path];
    v.insert(v.end(), p.detections.begin(), p.detections.end());
  }
  OracleReport r;
  int evaluated = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    long num_gt = 0;
    for (const auto& page : gts.pages) {
      if (!by_path.count(page.image_path)) continue;
      for (const auto& e : page.elements) num_gt += static_cast<int>(e.label) == c;
    }
    r.evaluated[c] = num_gt > 0;
    // Per page: this class's predictions and ground truths.
    auto run = [&](double thr, double min_conf, long* tp_out, long* np_out) {
      std::vector<OracleScore> scores;
      long tp_total = 0;
      long np = 0;
      for (const auto& page : gts.pages) {
        auto it = by_path.find(page.image_path);
        if (it == by_path.end()) continue;
        std::vector<Detection> cp;
        for (const auto& d : it->second) {
          if (static_cast<int>(d.label) == c && d.confidence >= min_conf) cp.push_back(d);
        }
        std::vector<BBox> cg;
        for (const auto& e : page.elements) {
          if (static_cast<int>(e.label) == c) cg.push_back(e.bbox);
        }
        std::vector<bool> tp = EnumeratedGreedyMatch(cp, cg, thr);
        for (size_t i = 0; i < cp.size(); ++i) {
          scores.push_back({cp[i].confidence, static_cast<bool>(tp[i])});
          tp_total += tp[i];
          ++np;
        }
      }
      if (tp_out) *tp_out = tp_total;
      if (np_out) *np_out = np;
      return scores;
    };
    if (!r.evaluated[c]) continue;
    ++evaluated;
    double ap_sum = 0;
    for (int k = 0; k < 10; ++k) {
      const double thr = (50.0 + 5.0 * k) / 100.0;
      r.ap[c][k] = DefinitionAp(run(thr, -1.0, nullptr, nullptr), num_gt);
      ap_sum += r.ap[c][k];
    }
    long tp = 0;
    long np = 0;
    run(pr_iou, conf_thresh, &tp, &np);
    r.precision[c] = np > 0 ? static_cast<double>(tp) / np : 0.0;
    r.recall[c] = static_cast<double>(tp) / num_gt;
    r.precision_all += r.precision[c];
    r.recall_all += r.recall[c];
    r.map50 += r.ap[c][0];
    r.map50_95 += ap_sum / 10.0;
  }
  if (evaluated > 0) {
    r.precision_all /= evaluated;
    r.recall_all /= evaluated;
    r.map50 /= evaluated;
    r.map50_95 /= evaluated;
  }
  return r;
}

std::vector<RowKey> RowMultiset(const Dataset& d) {
  std::vector<RowKey> rows;
  for (const auto& page : d.pages) {
    for (const auto& e : page.elements) {
      rows.emplace_back(page.image_path, static_cast<int>(e.label), e.bbox.x_min,
                        e.bbox.y_min, e.bbox.x_max, e.bbox.y_max);
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

}  // namespace ranlay::testing
