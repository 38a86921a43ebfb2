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
#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "ranlay/annot_io.h"
#include "ranlay/composer.h"
#include "ranlay/crop_bank.h"
#include "ranlay/error.h"
#include "ranlay/gen_config.h"
#include "ranlay/metrics.h"
#include "ranlay/report.h"
#include "ranlay/stats.h"
#include "ranlay/validate.h"

namespace ranlay {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Thrown for problems with the command line itself, including flag values
// that only turn out to be invalid after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool quiet = false;

template <typename... Args>
void Info(fmt::format_string<Args...> f, Args&&... args) {
  if (!quiet) fmt::print(f, std::forward<Args>(args)...);
}

void PrintWarnings(const Warnings& warnings) {
  for (const auto& w : warnings) fmt::print(stderr, "warning: {}\n", w);
}

std::optional<DatasetFormat> FormatFlag(const std::string& name) {
  if (name.empty()) return std::nullopt;
  auto f = ParseDatasetFormat(name);
  if (!f) throw UsageError(fmt::format("unknown format '{}'", name));
  return f;
}

DatasetFormat ResolveFormat(const fs::path& path, const std::string& flag) {
  if (auto f = FormatFlag(flag)) return *f;
  try {
    return DetectFormat(path);
  } catch (const Error& e) {
    throw UsageError(fmt::format("{} (pass --format)", e.detail()));
  }
}

void SetWorkers(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

std::array<double, kNumClasses> ParseWeights(const std::string& list) {
  std::array<double, kNumClasses> w{};
  size_t pos = 0;
  while (pos <= list.size()) {
    size_t end = list.find(',', pos);
    if (end == std::string::npos) end = list.size();
    const std::string item = list.substr(pos, end - pos);
    const size_t eq = item.find('=');
    std::optional<LayoutClass> c;
    if (eq != std::string::npos) c = ParseClassName(item.substr(0, eq));
    if (!c) {
      throw UsageError(fmt::format("--class-weights: bad entry '{}', expected name=weight", item));
    }
    try {
      size_t used = 0;
      w[ClassIndex(*c)] = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("--class-weights: bad weight in '{}'", item));
    }
    pos = end + 1;
  }
  return w;
}

std::array<int64_t, kNumClasses> ParseCounts(const std::string& list) {
  std::array<int64_t, kNumClasses> out{};
  size_t pos = 0;
  for (int k = 0; k < kNumClasses; ++k) {
    size_t end = list.find(',', pos);
    if ((end == std::string::npos) != (k == kNumClasses - 1)) {
      throw UsageError("--counts needs five comma-separated integers");
    }
    if (end == std::string::npos) end = list.size();
    try {
      size_t used = 0;
      const std::string item = list.substr(pos, end - pos);
      out[k] = std::stoll(item, &used);
      if (used != item.size() || out[k] < 0) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--counts needs five non-negative integers");
    }
    pos = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string config;
  std::string source;
  std::string source_format;
  std::string image_root;
  std::string bank;
  std::string out;
  std::string format;
  std::optional<int> pages;
  std::optional<uint64_t> seed;
  int workers = 0;
  std::optional<int> canvas_w, canvas_h, gap, margin, max_elements, max_rejections;
  std::optional<int> min_crop_px;
  std::optional<bool> scale_to_fit;
  std::string class_weights;
  std::optional<double> flip_prob, jitter_px, whole_page_prob;
};

GenConfig ResolveGenConfig(const GenerateArgs& a) {
  GenConfig cfg;
  bool has_seed = false;
  try {
    if (!a.config.empty()) cfg = LoadGenConfig(a.config, cfg, &has_seed);
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  if (a.seed) {
    cfg.master_seed = *a.seed;
    has_seed = true;
  }
  if (!has_seed) {
    throw UsageError("generate needs --seed (or \"seed\" in the config file)");
  }
  if (a.pages) cfg.page_count = *a.pages;
  if (a.canvas_w) cfg.canvas_w = *a.canvas_w;
  if (a.canvas_h) cfg.canvas_h = *a.canvas_h;
  if (a.gap) cfg.gap = *a.gap;
  if (a.margin) cfg.margin = *a.margin;
  if (a.max_elements) cfg.max_elements_per_page = *a.max_elements;
  if (a.max_rejections) cfg.max_rejections = *a.max_rejections;
  if (a.min_crop_px) cfg.min_crop_px = *a.min_crop_px;
  if (a.scale_to_fit) cfg.scale_to_fit = *a.scale_to_fit;
  if (a.flip_prob) cfg.noise.class_flip_prob = *a.flip_prob;
  if (a.jitter_px) cfg.noise.bbox_jitter_px = *a.jitter_px;
  if (a.whole_page_prob) cfg.whole_page_prob = *a.whole_page_prob;
  try {
    if (!a.class_weights.empty()) {
      cfg.class_weights = ClassWeights::FromUnnormalized(ParseWeights(a.class_weights));
    }
    if (a.format == "yolo") {
      cfg.write_yolo = true;
      cfg.write_coco = false;
    } else if (a.format == "coco") {
      cfg.write_yolo = false;
      cfg.write_coco = true;
    } else if (a.format == "both") {
      cfg.write_yolo = cfg.write_coco = true;
    } else if (!a.format.empty()) {
      throw UsageError(fmt::format("--format must be yolo, coco or both, not '{}'", a.format));
    }
    if (!cfg.write_yolo && !cfg.write_coco) {
      throw UsageError("at least one of the YOLO and COCO outputs must be enabled");
    }
    ValidateConfig(cfg);
  } catch (const Error& e) {
    throw UsageError(e.detail());
  }
  return cfg;
}

CropBank LoadSourceBank(const std::string& source, const std::string& source_format,
                        const std::string& image_root, const BankOptions& options) {
  const fs::path path(source);
  const DatasetFormat format = ResolveFormat(path, source_format);
  Warnings warnings;
  Dataset d = LoadDataset(path, format, {}, &warnings);
  PrintWarnings(warnings);
  const fs::path root =
      image_root.empty() ? DefaultImageRoot(path, format) : fs::path(image_root);
  return BuildBank(d, root, options);
}

void WriteFailureReport(const fs::path& out, const GenConfig* cfg, const std::string& msg) {
  std::error_code ec;
  fs::create_directories(out, ec);
  json j = {{"version", kReportVersion}, {"status", "failed"}, {"error", msg}};
  if (cfg) j["config"] = GenConfigToJson(*cfg);
  try {
    WriteJson(j, out / "report.json");
  } catch (const std::exception&) {
  }
}

int RunGenerate(const GenerateArgs& a) {
  if (a.source.empty() == a.bank.empty()) {
    throw UsageError("generate needs exactly one of --source or --bank");
  }
  const GenConfig cfg = ResolveGenConfig(a);
  const fs::path out(a.out);
  try {
    CropBank bank;
    if (!a.bank.empty()) {
      bank = LoadBank(a.bank);
    } else {
      bank = LoadSourceBank(a.source, a.source_format, a.image_root,
                            {cfg.min_crop_px, cfg.whole_page_prob > 0});
    }
    if (bank.empty()) {
      throw Error(ErrorCode::kEmptyClass,
                  "empty crop bank: the source yielded no usable crops");
    }
    Info("crop bank: {} crops, {} skipped, {} whole pages\n", bank.total(),
         bank.total_skipped(), bank.whole_pages().size());
    GenerationResult result = GenerateDataset(bank, cfg, out, a.workers);
    DatasetStats stats = ClassDistribution(result.dataset);
    Info("generated {} pages into {}\n", result.dataset.pages.size(), out.string());
    Info("{}", FormatDistributionTable(stats));
  } catch (const Error& e) {
    WriteFailureReport(out, &cfg, e.what());
    throw;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// bank

struct BankArgs {
  std::string source;
  std::string format;
  std::string image_root;
  std::string out;
  int min_crop_px = 8;
  bool whole_pages = false;
  int workers = 0;
};

int RunBank(const BankArgs& a) {
  if (a.min_crop_px < 1) throw UsageError("--min-crop-px must be >= 1");
  SetWorkers(a.workers);
  CropBank bank = LoadSourceBank(a.source, a.format, a.image_root,
                                 {a.min_crop_px, a.whole_pages});
  SaveBank(bank, a.out);
  for (LayoutClass c : kAllClasses) {
    Info("{:<8} {:>8} crops {:>6} skipped\n", ClassName(c), bank.count(c), bank.skipped(c));
  }
  Info("whole pages {}\nsaved to {}\n", bank.whole_pages().size(), a.out);
  if (bank.empty()) {
    fmt::print(stderr, "error: empty crop bank\n");
    return kExitData;
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsArgs {
  std::string input;
  std::string format;
  std::string counts;
  std::string json_out;
};

int RunStats(const StatsArgs& a) {
  if (a.input.empty() == a.counts.empty()) {
    throw UsageError("stats needs a dataset path or --counts");
  }
  DatasetStats s;
  if (!a.counts.empty()) {
    s = StatsFromCounts(ParseCounts(a.counts));
  } else {
    Warnings warnings;
    Dataset d = LoadDataset(a.input, ResolveFormat(a.input, a.format), {}, &warnings);
    PrintWarnings(warnings);
    s = ClassDistribution(d);
  }
  fmt::print("{}", FormatDistributionTable(s));
  if (!a.json_out.empty()) WriteJson(StatsJson(s), a.json_out);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate

struct ValidateArgs {
  std::string input;
  std::string format;
  bool no_overlap = false;
};

int RunValidate(const ValidateArgs& a) {
  Warnings warnings;
  Dataset d = LoadDataset(a.input, ResolveFormat(a.input, a.format), {}, &warnings);
  PrintWarnings(warnings);
  auto violations = Validate(d, {a.no_overlap});
  for (const auto& v : violations) {
    fmt::print("{}: {}\n", ViolationKindName(v.kind), v.message);
  }
  Info("{} pages, {} elements, {} violations\n", d.pages.size(), d.ElementCount(),
       violations.size());
  return violations.empty() ? kExitOk : kExitData;
}

// ---------------------------------------------------------------------------
// convert

struct ConvertArgs {
  std::string from;
  std::string from_format;
  std::string to;
  std::string to_format;
  std::string image_root;
  bool no_images = false;
};

int RunConvert(const ConvertArgs& a) {
  const fs::path from(a.from);
  const fs::path to(a.to);
  const DatasetFormat src = ResolveFormat(from, a.from_format);
  const DatasetFormat dst = ResolveFormat(to, a.to_format);
  Warnings warnings;
  Dataset d = LoadDataset(from, src, {}, &warnings);
  PrintWarnings(warnings);
  switch (dst) {
    case DatasetFormat::kManifest:
      WriteManifest(d, to);
      break;
    case DatasetFormat::kCoco:
      WriteCoco(d, to);
      break;
    case DatasetFormat::kYolo: {
      WriteYoloLabels(d, to / "labels");
      if (a.no_images) break;
      const fs::path root =
          a.image_root.empty() ? DefaultImageRoot(from, src) : fs::path(a.image_root);
      fs::create_directories(to / "images");
      for (auto& page : d.pages) {
        fs::path image(page.image_path);
        if (image.is_relative()) image = root / image;
        std::error_code ec;
        fs::copy_file(image, to / "images" / image.filename(),
                      fs::copy_options::overwrite_existing, ec);
        if (ec) {
          throw Error(ErrorCode::kImageUnreadable,
                      fmt::format("cannot copy {}: {}", image.string(), ec.message()));
        }
      }
      break;
    }
  }
  Info("wrote {} pages, {} elements to {}\n", d.pages.size(), d.ElementCount(), to.string());
  return kExitOk;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  std::string gt;
  std::string gt_format;
  std::string pred;
  double conf = 0.25;
  double iou = 0.5;
  std::string json_out;
  int workers = 0;
};

int RunEvaluate(const EvaluateArgs& a) {
  if (!(a.conf >= 0 && a.conf <= 1) || !(a.iou > 0 && a.iou <= 1)) {
    throw UsageError("--conf must be in [0, 1] and --iou in (0, 1]");
  }
  SetWorkers(a.workers);
  Warnings warnings;
  Dataset gts = LoadDataset(a.gt, ResolveFormat(a.gt, a.gt_format), {}, &warnings);
  const fs::path pred(a.pred);
  std::vector<DetectionPage> preds;
  if (fs::is_directory(pred)) {
    preds = ReadYoloPredictions(fs::is_directory(pred / "labels") ? pred / "labels" : pred, gts);
  } else {
    preds = ReadCocoResults(pred, gts, &warnings);
  }
  PrintWarnings(warnings);
  const EvalOptions options{a.conf, a.iou};
  EvalReport r = Evaluate(preds, gts, options);
  for (const auto& p : r.unmatched_pages) {
    fmt::print(stderr, "warning: {} has no counterpart and was not evaluated\n", p);
  }
  fmt::print("{}", FormatEvalTable(r));
  Info("pages {}  conf >= {}  IoU {} for P/R\n", r.pages_evaluated, a.conf, a.iou);
  if (!a.json_out.empty()) WriteJson(EvalReportJson(r, options), a.json_out);
  return kExitOk;
}

int Main(int argc, char** argv) {
  CLI::App app{"Synthetic document layout dataset toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("-q,--quiet", quiet, "Only print results and errors");

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Compose synthetic pages from a source corpus or crop bank");
  g->add_option("-c,--config", gen.config, "JSON config file")->check(CLI::ExistingFile);
  g->add_option("-s,--source,--manifest", gen.source, "Source dataset (manifest .csv, COCO .json or YOLO dir)");
  g->add_option("--source-format", gen.source_format, "Source format: manifest, coco or yolo");
  g->add_option("--image-root", gen.image_root, "Directory the source image paths are relative to");
  g->add_option("--bank", gen.bank, "Cached crop bank directory (see 'bank')");
  g->add_option("-o,--out", gen.out, "Output directory")->required();
  g->add_option("-n,--pages", gen.pages, "Number of pages");
  g->add_option("--seed", gen.seed, "Master seed (required unless set in the config)");
  g->add_option("-j,--workers", gen.workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  g->add_option("--format", gen.format, "Label output: yolo, coco or both");
  g->add_option("--canvas-w", gen.canvas_w, "Canvas width in px");
  g->add_option("--canvas-h", gen.canvas_h, "Canvas height in px");
  g->add_option("--gap", gen.gap, "Gap between crops in px");
  g->add_option("--margin", gen.margin, "Canvas margin in px");
  g->add_option("--max-elements", gen.max_elements, "Maximum elements per page");
  g->add_option("--max-rejections", gen.max_rejections, "Consecutive rejections before a page is closed");
  g->add_option("--scale-to-fit", gen.scale_to_fit, "Downscale crops larger than the usable area (true/false)");
  g->add_option("--class-weights", gen.class_weights, "Sampling weights, e.g. text=4,title=2,list=1,table=1,figure=1");
  g->add_option("--flip-prob", gen.flip_prob, "Label noise: class flip probability");
  g->add_option("--jitter-px", gen.jitter_px, "Label noise: box edge jitter in px");
  g->add_option("--min-crop-px", gen.min_crop_px, "Skip source elements smaller than this");
  g->add_option("--whole-page-prob", gen.whole_page_prob, "Chance of pasting a whole source page");

  BankArgs bank;
  auto* b = app.add_subcommand("bank", "Extract and cache a crop bank");
  b->add_option("source", bank.source, "Source dataset")->required();
  b->add_option("--format", bank.format, "Source format: manifest, coco or yolo");
  b->add_option("--image-root", bank.image_root, "Directory the image paths are relative to");
  b->add_option("-o,--out", bank.out, "Bank directory")->required();
  b->add_option("--min-crop-px", bank.min_crop_px, "Skip elements smaller than this");
  b->add_flag("--whole-pages", bank.whole_pages, "Also store whole source pages");
  b->add_option("-j,--workers", bank.workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Class distribution and page statistics");
  s->add_option("input", stats.input, "Dataset path");
  s->add_option("--format", stats.format, "Dataset format: manifest, coco or yolo");
  s->add_option("--counts", stats.counts, "Five class counts instead of a dataset, e.g. 10,5,2,2,1");
  s->add_option("--json", stats.json_out, "Also write the statistics as JSON");

  ValidateArgs val;
  auto* v = app.add_subcommand("validate", "Check a dataset for structural problems");
  v->add_option("input", val.input, "Dataset path")->required();
  v->add_option("--format", val.format, "Dataset format: manifest, coco or yolo");
  v->add_flag("--no-overlap", val.no_overlap, "Also report overlapping boxes");

  ConvertArgs conv;
  auto* c = app.add_subcommand("convert", "Convert between manifest, COCO and YOLO");
  c->add_option("--from", conv.from, "Input dataset")->required();
  c->add_option("--from-format", conv.from_format, "Input format");
  c->add_option("--to", conv.to, "Output path")->required();
  c->add_option("--to-format", conv.to_format, "Output format");
  c->add_option("--image-root", conv.image_root, "Where input images live (YOLO output copies them)");
  c->add_flag("--no-images", conv.no_images, "Write YOLO labels without copying images");

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "Score detections against ground truth");
  e->add_option("--gt", ev.gt, "Ground-truth dataset")->required();
  e->add_option("--gt-format", ev.gt_format, "Ground-truth format");
  e->add_option("--pred", ev.pred, "YOLO prediction dir (6 columns) or COCO results .json")->required();
  e->add_option("--conf", ev.conf, "Confidence threshold for Precision/Recall");
  e->add_option("--iou", ev.iou, "IoU threshold for Precision/Recall");
  e->add_option("--json", ev.json_out, "Also write the report as JSON");
  e->add_option("-j,--workers", ev.workers, "Worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*g) return RunGenerate(gen);
    if (*b) return RunBank(bank);
    if (*s) return RunStats(stats);
    if (*v) return RunValidate(val);
    if (*c) return RunConvert(conv);
    if (*e) return RunEvaluate(ev);
  } catch (const UsageError& err) {
    fmt::print(stderr, "usage error: {}\n", err.what());
    return kExitUsage;
  } catch (const Error& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitData;
  } catch (const std::exception& err) {
    fmt::print(stderr, "error: {}\n", err.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace ranlay

int main(int argc, char** argv) { return ranlay::Main(argc, argv); }
