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
#include "ranlay/metrics.h"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include <fmt/format.h>

namespace ranlay {

double IouThreshold(int k) { return (50.0 + 5.0 * k) / 100.0; }

void MatchLedger::Merge(const MatchLedger& other) {
  for (int k = 0; k < kNumClasses; ++k) {
    ClassLedger& a = classes[k];
    const ClassLedger& b = other.classes[k];
    a.predictions.insert(a.predictions.end(), b.predictions.begin(),
                         b.predictions.end());
    a.num_gt += b.num_gt;
    a.tp += b.tp;
    a.fp += b.fp;
    a.fn += b.fn;
  }
}

MatchLedger MatchDetections(const std::vector<Detection>& preds,
                            const std::vector<LayoutElement>& gts,
                            double iou_thresh) {
  MatchLedger ledger;
  for (LayoutClass c : kAllClasses) {
    std::vector<size_t> pred_idx;
    std::vector<size_t> gt_idx;
    for (size_t i = 0; i < preds.size(); ++i) {
      if (preds[i].label == c) pred_idx.push_back(i);
    }
    for (size_t j = 0; j < gts.size(); ++j) {
      if (gts[j].label == c) gt_idx.push_back(j);
    }
    ClassLedger& cl = ledger.classes[ClassIndex(c)];
    cl.num_gt = static_cast<int64_t>(gt_idx.size());
    cl.predictions.resize(pred_idx.size());

    std::vector<size_t> order(pred_idx.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return preds[pred_idx[a]].confidence > preds[pred_idx[b]].confidence;
    });
    std::vector<bool> taken(gt_idx.size(), false);
    for (size_t o : order) {
      const Detection& p = preds[pred_idx[o]];
      double best = -1;
      size_t best_g = gt_idx.size();
      for (size_t g = 0; g < gt_idx.size(); ++g) {
        if (taken[g]) continue;
        double iou = Iou(p.bbox, gts[gt_idx[g]].bbox);
        if (iou >= iou_thresh && iou > best) {
          best = iou;
          best_g = g;
        }
      }
      const bool tp = best_g < gt_idx.size();
      if (tp) taken[best_g] = true;
      cl.predictions[o] = ScoredPrediction{p.confidence, tp};
      ++(tp ? cl.tp : cl.fp);
    }
    cl.fn = cl.num_gt - cl.tp;
  }
  return ledger;
}

std::optional<double> AveragePrecision(const ClassLedger& ledger) {
  if (ledger.num_gt <= 0) return std::nullopt;
  const auto& preds = ledger.predictions;
  std::vector<size_t> order(preds.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return preds[a].confidence > preds[b].confidence;
  });
  std::vector<double> recall(order.size());
  std::vector<double> precision(order.size());
  int64_t tp = 0;
  int64_t fp = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    ++(preds[order[i]].true_positive ? tp : fp);
    recall[i] = static_cast<double>(tp) / ledger.num_gt;
    precision[i] = static_cast<double>(tp) / (tp + fp);
  }
  for (size_t i = precision.size(); i-- > 1;) {
    precision[i - 1] = std::max(precision[i - 1], precision[i]);
  }
  double sum = 0;
  for (int k = 0; k < kNumRecallPoints; ++k) {
    const double r = k / 100.0;
    auto it = std::lower_bound(recall.begin(), recall.end(), r);
    if (it != recall.end()) sum += precision[it - recall.begin()];
  }
  return sum / kNumRecallPoints;
}

namespace {

struct AlignedPage {
  const std::vector<Detection>* preds;
  const AnnotatedPage* gt;
};

// Predictions merged per image path, paired with ground-truth pages in
// ground-truth order.
struct Alignment {
  std::vector<std::vector<Detection>> preds;
  std::vector<AlignedPage> pages;
  std::vector<std::string> unmatched;
};

// Index kNumIouThresholds holds the operating-point ledger.
using PageLedgers = std::array<MatchLedger, kNumIouThresholds + 1>;

PageLedgers ScorePage(const AlignedPage& page, const EvalOptions& options) {
  PageLedgers out;
  for (int k = 0; k < kNumIouThresholds; ++k) {
    out[k] = MatchDetections(*page.preds, page.gt->elements, IouThreshold(k));
  }
  std::vector<Detection> confident;
  for (const Detection& d : *page.preds) {
    if (d.confidence >= options.conf_thresh) confident.push_back(d);
  }
  out[kNumIouThresholds] =
      MatchDetections(confident, page.gt->elements, options.pr_iou);
  return out;
}

Alignment Align(const std::vector<DetectionPage>& preds, const Dataset& gts) {
  Alignment a;
  std::unordered_map<std::string, size_t> pred_of;
  std::vector<std::string> pred_paths;
  for (const auto& p : preds) {
    auto [it, inserted] = pred_of.try_emplace(p.image_path, a.preds.size());
    if (inserted) {
      a.preds.emplace_back();
      pred_paths.push_back(p.image_path);
    }
    auto& dst = a.preds[it->second];
    dst.insert(dst.end(), p.detections.begin(), p.detections.end());
  }
  std::vector<bool> used(a.preds.size(), false);
  for (const auto& page : gts.pages) {
    auto it = pred_of.find(page.image_path);
    if (it == pred_of.end()) {
      a.unmatched.push_back(page.image_path);
      continue;
    }
    used[it->second] = true;
    a.pages.push_back(AlignedPage{&a.preds[it->second], &page});
  }
  for (size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) a.unmatched.push_back(pred_paths[i]);
  }
  return a;
}

EvalReport Summarize(const std::vector<PageLedgers>& per_page,
                     std::vector<std::string> unmatched) {
  PageLedgers total;
  for (const PageLedgers& p : per_page) {
    for (int k = 0; k <= kNumIouThresholds; ++k) total[k].Merge(p[k]);
  }
  EvalReport r;
  r.pages_evaluated = per_page.size();
  r.unmatched_pages = std::move(unmatched);
  for (LayoutClass c : kAllClasses) {
    const int ci = ClassIndex(c);
    ClassEval& ce = r.classes[ci];
    ce.num_gt = total[0].classes[ci].num_gt;
    ce.num_pred = static_cast<int64_t>(total[0].classes[ci].predictions.size());
    ce.evaluated = ce.num_gt > 0;
    double ap_sum = 0;
    for (int k = 0; k < kNumIouThresholds; ++k) {
      const ClassLedger& cl = total[k].classes[ci];
      ce.ap[k] = AveragePrecision(cl).value_or(0.0);
      ce.tp[k] = cl.tp;
      ce.fp[k] = cl.fp;
      ce.fn[k] = cl.fn;
      ap_sum += ce.ap[k];
    }
    ce.ap50 = ce.ap[0];
    ce.ap50_95 = ap_sum / kNumIouThresholds;
    const ClassLedger& op = total[kNumIouThresholds].classes[ci];
    ce.precision = op.tp + op.fp > 0 ? static_cast<double>(op.tp) / (op.tp + op.fp) : 0.0;
    ce.recall = op.num_gt > 0 ? static_cast<double>(op.tp) / op.num_gt : 0.0;
    if (ce.evaluated) {
      ++r.classes_evaluated;
      r.precision += ce.precision;
      r.recall += ce.recall;
      r.map50 += ce.ap50;
      r.map50_95 += ce.ap50_95;
    }
  }
  if (r.classes_evaluated > 0) {
    r.precision /= r.classes_evaluated;
    r.recall /= r.classes_evaluated;
    r.map50 /= r.classes_evaluated;
    r.map50_95 /= r.classes_evaluated;
  }
  return r;
}

}  // namespace

EvalReport Evaluate(const std::vector<DetectionPage>& preds, const Dataset& gts,
                    const EvalOptions& options) {
  Alignment a = Align(preds, gts);
  std::vector<PageLedgers> per_page(a.pages.size());
  const long n = static_cast<long>(a.pages.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) per_page[i] = ScorePage(a.pages[i], options);
  return Summarize(per_page, std::move(a.unmatched));
}

EvalReport EvaluateSerial(const std::vector<DetectionPage>& preds,
                          const Dataset& gts, const EvalOptions& options) {
  Alignment a = Align(preds, gts);
  std::vector<PageLedgers> per_page;
  per_page.reserve(a.pages.size());
  for (const AlignedPage& p : a.pages) per_page.push_back(ScorePage(p, options));
  return Summarize(per_page, std::move(a.unmatched));
}

std::string FormatEvalTable(const EvalReport& r) {
  std::string out = fmt::format("{:<8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>10}\n",
                                "Class", "GT", "Preds", "Precision", "Recall",
                                "mAP50", "mAP50-95");
  for (LayoutClass c : kAllClasses) {
    const ClassEval& ce = r.classes[ClassIndex(c)];
    if (!ce.evaluated) {
      out += fmt::format("{:<8} {:>8} {:>8} {:>10} {:>10} {:>10} {:>10}\n",
                         ClassName(c), ce.num_gt, ce.num_pred, "-", "-", "-", "-");
      continue;
    }
    out += fmt::format("{:<8} {:>8} {:>8} {:>10.3f} {:>10.3f} {:>10.3f} {:>10.3f}\n",
                       ClassName(c), ce.num_gt, ce.num_pred, ce.precision,
                       ce.recall, ce.ap50, ce.ap50_95);
  }
  int64_t gt = 0;
  int64_t pred = 0;
  for (const auto& ce : r.classes) {
    gt += ce.num_gt;
    pred += ce.num_pred;
  }
  out += fmt::format("{:<8} {:>8} {:>8} {:>10.3f} {:>10.3f} {:>10.3f} {:>10.3f}\n",
                     "all", gt, pred, r.precision, r.recall, r.map50, r.map50_95);
  return out;
}

}  // namespace ranlay
