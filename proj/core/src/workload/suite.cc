// Copyright 2026 The Manimal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "manimal/workload/suite.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "manimal/common/hashing.h"
#include "manimal/engine/index_gen.h"
#include "manimal/lang/parser.h"
#include "manimal/storage/byte_io.h"
#include "manimal/storage/record_file.h"
#include "manimal/workload/generators.h"

namespace manimal::workload {

namespace {

namespace fs = std::filesystem;
using detectors::OptKind;

struct Sizes {
  uint64_t webpages, visits, tuples, documents;
};

Sizes SizesFor(Scale s) {
  if (s == Scale::kSmall) return {20000, 200000, 100000, 20000};
  return {2000, 20000, 10000, 2000};
}

// Picks a visitDate window holding roughly `fraction` of the records.
std::pair<int64_t, int64_t> DateWindow(const fs::path& visits, double fraction) {
  std::map<int64_t, uint64_t> per_day;
  uint64_t n = 0;
  storage::RecordFileReader r(visits);
  const size_t col = static_cast<size_t>(*r.layout().FieldIndex("visitDate"));
  Record rec;
  while (r.Next(rec)) {
    ++per_day[std::get<int64_t>(rec.values[col])];
    ++n;
  }
  if (per_day.empty()) return {0, -1};
  const double target = std::max(1.0, fraction * static_cast<double>(n));
  // Of the windows of consecutive days that first reach the target, the
  // one whose count lands closest to it.
  const std::vector<std::pair<int64_t, uint64_t>> days(per_day.begin(), per_day.end());
  std::pair<int64_t, int64_t> best{days[0].first, days[0].first};
  double best_err = -1;
  for (size_t i = 0; i < days.size(); ++i) {
    double have = 0;
    for (size_t j = i; j < days.size(); ++j) {
      have += static_cast<double>(days[j].second);
      if (have >= target || j + 1 == days.size()) {
        const double e = std::abs(have - target);
        if (best_err < 0 || e < best_err) {
          best_err = e;
          best = {days[i].first, days[j].first};
        }
        break;
      }
    }
  }
  return best;
}
}  // namespace

std::optional<Scale> ScaleFromName(std::string_view name) {
  if (name == "tiny") return Scale::kTiny;
  if (name == "small") return Scale::kSmall;
  return std::nullopt;
}

std::string_view ScaleName(Scale s) { return s == Scale::kSmall ? "small" : "tiny"; }

lang::TypedJob CompileJob(std::string_view source) { return lang::Typecheck(lang::ParseJob(source)); }

SuiteReport RunSuite(Scale scale, const fs::path& workdir, const SuiteOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  SuiteReport report;
  report.scale = scale;
  fs::create_directories(workdir);
  const Sizes sz = SizesFor(scale);

  const fs::path pages = workdir / "webpages.mmrf";
  const fs::path visits = workdir / "uservisits.mmrf";
  const fs::path tuples = workdir / "tuples.mmrf";
  const fs::path docs = workdir / "documents.mmrf";
  WriteWebPages({.n = sz.webpages, .content_size = 510, .url_length = 30, .seed = 11}, pages);
  WriteUserVisits({.n = sz.visits, .url_pool = LoadUrlPool(pages), .seed = 12}, visits);
  WriteTuples({.n = sz.tuples, .tuple_size = 64, .key_max = 10000, .seed = 13}, tuples);
  WriteDocuments({.n = sz.documents, .words = 24, .seed = 14}, docs);

  BenchmarkParams params;
  params.b1_threshold = 9997;  // 2 of 10000 key values: 0.02%
  std::tie(params.b3_date_lo, params.b3_date_hi) = DateWindow(visits, 0.00095);

  // A fresh catalog per suite run keeps results independent of history.
  const fs::path catalog_path = workdir / "catalog.jsonl";
  fs::remove(catalog_path);
  storage::Catalog catalog(catalog_path);

  for (const auto& model : BenchmarkModels(params)) {
    BenchResult res;
    res.name = model.name;
    res.description = model.description;
    try {
      const fs::path input = model.dataset == Dataset::kTuples       ? tuples
                             : model.dataset == Dataset::kUserVisits ? visits
                             : model.dataset == Dataset::kDocuments  ? docs
                                                                     : pages;
      const lang::TypedJob job = CompileJob(model.source);
      const detectors::AnalysisResult analysis = detectors::Analyze(job);
      for (size_t c = 0; c < kMatrixKinds.size(); ++c) {
        res.cells[c] = Classify(model.truth[c], analysis.Find(kMatrixKinds[c]) != nullptr);
      }
      for (const auto& d : analysis.descriptors) res.descriptors.emplace_back(detectors::OptKindName(d.kind));

      res.input_bytes = storage::FileSize(input);
      res.total_records = storage::RecordFileReader(input).count();
      if (!analysis.specs.empty()) {
        const storage::CatalogEntry e =
            engine::RunIndexGen(analysis.specs.front(), input, &catalog, {.output_dir = workdir / "indexes"});
        res.spec = e.spec_name;
        res.index_bytes = e.size_bytes;
      }
      const optimizer::InputId id{input.string(), Sha256File(input)};
      const auto plan = optimizer::Plan(analysis.descriptors, catalog.Load().entries, id, job.spec.input_schema);
      for (OptKind k : {OptKind::kSelect, OptKind::kProject, OptKind::kDirectOp, OptKind::kDelta}) {
        if (plan.Active(k)) res.active.emplace_back(detectors::OptKindName(k));
      }
      engine::RunOptions run;
      run.threads = options.threads;
      run.reducers = options.reducers;
      res.optimized = engine::RunJob(job, plan, workdir / (model.name + ".opt.mmrf"), run);
      optimizer::ExecutionDescriptor raw;
      raw.input_path = input.string();
      res.baseline = engine::RunJob(job, raw, workdir / (model.name + ".raw.mmrf"), run);
      res.outputs_match = res.optimized.output_digest == res.baseline.output_digest;
    } catch (const std::exception& ex) {
      res.error = ex.what();
    }
    for (Detection d : res.cells) {
      switch (d) {
        case Detection::kDetected: ++report.detected; break;
        case Detection::kUndetected: ++report.undetected; break;
        case Detection::kNotPresent: ++report.not_present; break;
        case Detection::kFalsePositive: ++report.false_positives; break;
      }
    }
    report.results.push_back(std::move(res));
  }
  report.wall_millis = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
  return report;
}

std::string ReportText(const SuiteReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "Detection matrix (scale %s)\n", std::string(ScaleName(r.scale)).c_str());
  out += line;
  std::snprintf(line, sizeof line, "%-10s %-14s %-14s %-14s\n", "benchmark", "select", "project", "delta");
  out += line;
  for (const auto& b : r.results) {
    std::snprintf(line, sizeof line, "%-10s %-14s %-14s %-14s\n", b.name.c_str(),
                  std::string(DetectionName(b.cells[0])).c_str(), std::string(DetectionName(b.cells[1])).c_str(),
                  std::string(DetectionName(b.cells[2])).c_str());
    out += line;
  }
  std::snprintf(line, sizeof line, "detected %d, undetected %d, not present %d, false positives %d\n\n", r.detected,
                r.undetected, r.not_present, r.false_positives);
  out += line;
  std::snprintf(line, sizeof line, "%-10s %-22s %10s %10s %12s %12s %12s %8s %8s %6s\n", "benchmark", "plan",
                "records", "scanned", "bytes(opt)", "bytes(raw)", "index", "ms(opt)", "ms(raw)", "same");
  out += line;
  for (const auto& b : r.results) {
    std::string plan;
    for (const auto& a : b.active) plan += (plan.empty() ? "" : "+") + a;
    if (plan.empty()) plan = "raw";
    std::snprintf(line, sizeof line, "%-10s %-22s %10llu %10llu %12llu %12llu %12llu %8llu %8llu %6s\n",
                  b.name.c_str(), plan.c_str(), static_cast<unsigned long long>(b.total_records),
                  static_cast<unsigned long long>(b.optimized.records_scanned),
                  static_cast<unsigned long long>(b.optimized.bytes_read),
                  static_cast<unsigned long long>(b.baseline.bytes_read),
                  static_cast<unsigned long long>(b.index_bytes),
                  static_cast<unsigned long long>(b.optimized.wall_millis),
                  static_cast<unsigned long long>(b.baseline.wall_millis), b.outputs_match ? "yes" : "NO");
    out += line;
    if (!b.error.empty()) out += "  error: " + b.error + "\n";
  }
  return out;
}

nlohmann::json ReportJson(const SuiteReport& r) {
  using nlohmann::json;
  json benches = json::array();
  for (const auto& b : r.results) {
    json cells = json::object();
    for (size_t c = 0; c < kMatrixKinds.size(); ++c) {
      cells[std::string(detectors::OptKindName(kMatrixKinds[c]))] = std::string(DetectionName(b.cells[c]));
    }
    benches.push_back({{"name", b.name},
                       {"description", b.description},
                       {"matrix", cells},
                       {"descriptors", b.descriptors},
                       {"activeOptimizations", b.active},
                       {"indexSpec", b.spec.empty() ? json(nullptr) : json(b.spec)},
                       {"totalRecords", b.total_records},
                       {"inputBytes", b.input_bytes},
                       {"indexBytes", b.index_bytes},
                       {"optimized", engine::StatsToJson(b.optimized)},
                       {"baseline", engine::StatsToJson(b.baseline)},
                       {"outputsMatch", b.outputs_match},
                       {"error", b.error.empty() ? json(nullptr) : json(b.error)}});
  }
  return {{"scale", std::string(ScaleName(r.scale))},
          {"benchmarks", benches},
          {"counts",
           {{"detected", r.detected},
            {"undetected", r.undetected},
            {"notPresent", r.not_present},
            {"falsePositives", r.false_positives}}},
          {"wallMillis", r.wall_millis}};
}

}  // namespace manimal::workload
