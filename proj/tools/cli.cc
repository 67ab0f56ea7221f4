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

#include "cli.h"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/detectors/descriptor_json.h"
#include "manimal/engine/index_gen.h"
#include "manimal/engine/runner.h"
#include "manimal/storage/byte_io.h"
#include "manimal/storage/record_file.h"
#include "manimal/workload/generators.h"
#include "manimal/workload/suite.h"

namespace manimal::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr const char* kCatalogEnv = "MANIMAL_CATALOG";

lang::TypedJob LoadJob(const std::string& path) {
  return workload::CompileJob(storage::ReadFile(path));
}

void CheckInputSchema(const lang::TypedJob& job, const std::string& input) {
  const storage::RecordFileReader reader(input);
  const RecordLayout& file = reader.layout();
  const RecordLayout& want = job.spec.input_schema;
  if (file.key_type != want.key_type || file.fields != want.fields) {
    throw PlanMismatchError(input + " has layout " + file.name + ", job " + job.spec.name + " expects " + want.name);
  }
}

bool MapLogs(const lang::TypedJob& job) {
  bool any = false;
  lang::ForEachStmt(job.spec.map.body, [&](const lang::Stmt& s) { any = any || s.kind == lang::StmtKind::kLog; });
  return any;
}

std::string CatalogPath(const std::string& flag) {
  if (!flag.empty()) return flag;
  const char* env = std::getenv(kCatalogEnv);
  return env ? env : "";
}

void WriteJson(const json& j, const std::string& dest, std::ostream& out) {
  if (dest == "-") {
    out << j.dump(2) << "\n";
    return;
  }
  storage::WriteFileAtomic(dest, j.dump(2) + "\n");
}

struct AnalyzeArgs {
  std::string job, input;
  bool safe_mode = false;
};

struct IndexArgs {
  std::string job, input, catalog, spec = "combined", dir;
  bool safe_mode = false;
};

struct RunArgs {
  std::string job, input, catalog, output = "output.mmrf", descriptors, stats;
  bool no_opt = false, safe_mode = false, explain = false;
  int reducers = 1, threads = 0;
};

struct GenArgs {
  std::string out, pages;
  uint64_t n = 0, seed = 1;
  uint32_t content_size = 510, url_length = 30, tuple_size = 64, words = 24;
  int32_t rank_min = 1, rank_max = 100, key_max = 10000;
  double theta = 0.99;
};

struct BenchArgs {
  std::string scale = "tiny", workdir = "bench-work", json_out;
  int threads = 0;
};

int Analyze(const AnalyzeArgs& a, std::ostream& out) {
  const lang::TypedJob job = LoadJob(a.job);
  if (!a.input.empty()) CheckInputSchema(job, a.input);
  const auto r = detectors::Analyze(job, {.safe_mode = a.safe_mode});
  out << detectors::AnalysisToJson(r, job).dump(2) << "\n";
  return 0;
}

int Index(const IndexArgs& a, std::ostream& out) {
  const lang::TypedJob job = LoadJob(a.job);
  CheckInputSchema(job, a.input);
  const auto r = detectors::Analyze(job, {.safe_mode = a.safe_mode});
  const detectors::IndexGenSpec* spec = nullptr;
  for (const auto& s : r.specs) {
    if (s.name == a.spec) {
      spec = &s;
      break;
    }
  }
  if (!spec) {
    std::string have;
    for (const auto& s : r.specs) have += (have.empty() ? "" : ", ") + s.name;
    throw SpecError("no '" + a.spec + "' index applies to " + job.spec.name +
                    (have.empty() ? " (the analyzer found no optimizations)" : " (available: " + have + ")"));
  }
  const std::string catalog_path = CatalogPath(a.catalog);
  if (catalog_path.empty()) throw SpecError("index needs --catalog or " + std::string(kCatalogEnv));
  const storage::Catalog catalog(catalog_path);
  const auto entry = engine::RunIndexGen(*spec, a.input, &catalog, {.output_dir = a.dir});
  out << storage::CatalogEntryToJson(entry).dump(2) << "\n";
  return 0;
}

int Run(const RunArgs& a, std::ostream& out, std::ostream& err) {
  const lang::TypedJob job = LoadJob(a.job);
  CheckInputSchema(job, a.input);
  const RecordLayout& schema = job.spec.input_schema;

  optimizer::ExecutionDescriptor plan;
  plan.input_path = a.input;
  if (!a.no_opt) {
    std::vector<detectors::OptimizationDescriptor> descriptors;
    if (!a.descriptors.empty()) {
      // Injected descriptors skip the analyzer but not schema validation.
      descriptors = detectors::DescriptorsFromDocument(json::parse(storage::ReadFile(a.descriptors)));
      detectors::ValidateDescriptors(descriptors, schema);
    } else {
      descriptors = detectors::Analyze(job, {.safe_mode = a.safe_mode}).descriptors;
    }
    std::vector<storage::CatalogEntry> entries;
    const std::string catalog_path = CatalogPath(a.catalog);
    if (!catalog_path.empty()) {
      auto loaded = storage::Catalog(catalog_path).Load();
      for (const auto& m : loaded.malformed) err << "catalog: skipped " << m << "\n";
      entries = std::move(loaded.entries);
    }
    const optimizer::PlanOptions po{.allow_select = !(a.safe_mode && MapLogs(job))};
    plan = optimizer::Plan(descriptors, entries, {a.input, Sha256File(a.input)}, schema, po);
  }
  if (a.explain) out << optimizer::ExecutionDescriptorToJson(plan, schema).dump(2) << "\n";

  engine::RunOptions ro;
  ro.reducers = a.reducers;
  ro.threads = a.threads;
  ro.log = [&](const std::string& line) { err << "log: " << line << "\n"; };
  const auto stats = engine::RunJob(job, plan, a.output, ro);
  if (!a.stats.empty()) WriteJson(engine::StatsToJson(stats), a.stats, out);
  if (a.stats != "-") {
    out << "wrote " << stats.output_records << " records to " << a.output << " (scanned " << stats.records_scanned
        << ", digest " << stats.output_digest.substr(0, 16) << ")\n";
  }
  return 0;
}

int Gen(const std::string& kind, const GenArgs& a, std::ostream& out) {
  if (kind == "webpages") {
    workload::WriteWebPages({.n = a.n,
                             .content_size = a.content_size,
                             .url_length = a.url_length,
                             .rank_min = a.rank_min,
                             .rank_max = a.rank_max,
                             .seed = a.seed},
                            a.out);
  } else if (kind == "uservisits") {
    if (a.pages.empty()) throw Error(ErrorCategory::kUsage, "uservisits needs --pages <webpages file>");
    workload::WriteUserVisits({.n = a.n, .url_pool = workload::LoadUrlPool(a.pages), .theta = a.theta, .seed = a.seed},
                              a.out);
  } else if (kind == "tuples") {
    workload::WriteTuples({.n = a.n, .tuple_size = a.tuple_size, .key_max = a.key_max, .seed = a.seed}, a.out);
  } else {
    workload::WriteDocuments({.n = a.n, .words = a.words, .seed = a.seed}, a.out);
  }
  out << "wrote " << a.n << " " << kind << " records to " << a.out << " (" << storage::FileSize(a.out)
      << " bytes)\n";
  return 0;
}

int Bench(const BenchArgs& a, std::ostream& out) {
  const auto scale = workload::ScaleFromName(a.scale);
  const auto report = workload::RunSuite(*scale, a.workdir, {.threads = a.threads});
  out << workload::ReportText(report);
  if (!a.json_out.empty()) WriteJson(workload::ReportJson(report), a.json_out, out);
  for (const auto& b : report.results) {
    if (!b.error.empty() || !b.outputs_match) return 3;
  }
  return 0;
}

int CatalogCmd(const std::string& action, const std::string& path_flag, std::ostream& out, std::ostream& err) {
  const std::string path = CatalogPath(path_flag);
  if (path.empty()) throw Error(ErrorCategory::kUsage, "catalog path missing (argument or " + std::string(kCatalogEnv) + ")");
  const auto loaded = storage::Catalog(path).Load();
  for (const auto& m : loaded.malformed) err << "catalog: skipped " << m << "\n";
  if (action == "list") {
    for (const auto& e : loaded.entries) out << storage::CatalogEntryToJson(e).dump() << "\n";
    return 0;
  }
  int rc = 0;
  for (const auto& e : loaded.entries) {
    const auto v = storage::Verify(e);
    out << (v.ok ? "ok   " : "FAIL ") << e.index_path << (v.ok ? "" : ": " + v.reason) << "\n";
    if (!v.ok) rc = 3;
  }
  return rc;
}

}  // namespace

int Dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"MiniMap analyzer, index builder and execution engine", "manimal"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "Print optimization descriptors and index specs for a job");
  analyze->add_option("job", aa.job, "MiniMap source")->required()->check(CLI::ExistingFile);
  analyze->add_option("--input", aa.input, "Input RecordFile to check the schema against")->check(CLI::ExistingFile);
  analyze->add_flag("--safe-mode", aa.safe_mode, "Refuse selection when map() logs");

  IndexArgs ia;
  auto* index = app.add_subcommand("index", "Build an index for a job and register it in the catalog");
  index->add_option("job", ia.job, "MiniMap source")->required()->check(CLI::ExistingFile);
  index->add_option("--input", ia.input, "Input RecordFile")->required()->check(CLI::ExistingFile);
  index->add_option("--catalog", ia.catalog, "Catalog file (default $MANIMAL_CATALOG)");
  index->add_option("--spec", ia.spec, "combined|select|project|delta|directop")
      ->check(CLI::IsMember({"combined", "select", "project", "delta", "directop"}));
  index->add_option("--dir", ia.dir, "Directory for index files (default: the catalog's)");
  index->add_flag("--safe-mode", ia.safe_mode, "Refuse selection when map() logs");

  RunArgs ra;
  auto* run = app.add_subcommand("run", "Plan and execute a job");
  run->add_option("job", ra.job, "MiniMap source")->required()->check(CLI::ExistingFile);
  run->add_option("--input", ra.input, "Input RecordFile")->required()->check(CLI::ExistingFile);
  run->add_option("--catalog", ra.catalog, "Catalog file (default $MANIMAL_CATALOG)");
  run->add_option("--output", ra.output, "Output RecordFile");
  run->add_flag("--no-opt", ra.no_opt, "Scan the raw input with no optimizations");
  run->add_option("--descriptors", ra.descriptors, "Use these descriptors instead of the analyzer")
      ->check(CLI::ExistingFile);
  run->add_flag("--safe-mode", ra.safe_mode, "Refuse selection when map() logs");
  run->add_option("--reducers", ra.reducers, "Reduce partitions")->check(CLI::Range(1, 1024));
  run->add_option("--threads", ra.threads, "Worker threads (0: all cores)")->check(CLI::Range(0, 1024));
  run->add_option("--stats", ra.stats, "Write execution stats JSON to a file, or - for stdout");
  run->add_flag("--explain", ra.explain, "Print the execution descriptor");

  GenArgs ga;
  std::string gen_kind;
  auto* gen = app.add_subcommand("gen", "Generate a dataset");
  gen->add_option("kind", gen_kind, "webpages|uservisits|tuples|documents")
      ->required()
      ->check(CLI::IsMember({"webpages", "uservisits", "tuples", "documents"}));
  gen->add_option("--out", ga.out, "Output RecordFile")->required();
  gen->add_option("--n", ga.n, "Record count")->required();
  gen->add_option("--seed", ga.seed, "RNG seed");
  gen->add_option("--content-size", ga.content_size, "webpages: mean content bytes");
  gen->add_option("--url-length", ga.url_length, "webpages: url bytes");
  gen->add_option("--rank-min", ga.rank_min, "webpages: smallest rank");
  gen->add_option("--rank-max", ga.rank_max, "webpages: largest rank");
  gen->add_option("--pages", ga.pages, "uservisits: WebPages file supplying URLs")->check(CLI::ExistingFile);
  gen->add_option("--theta", ga.theta, "uservisits: Zipf exponent")->check(CLI::Range(0.01, 5.0));
  gen->add_option("--tuple-size", ga.tuple_size, "tuples: blob bytes");
  gen->add_option("--key-max", ga.key_max, "tuples: keys are drawn from [0, key-max)")->check(CLI::PositiveNumber);
  gen->add_option("--words", ga.words, "documents: words per document");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Run the benchmark suite");
  bench->add_option("--scale", ba.scale, "tiny|small")->check(CLI::IsMember({"tiny", "small"}));
  bench->add_option("--workdir", ba.workdir, "Scratch directory");
  bench->add_option("--json", ba.json_out, "Write the JSON report to a file, or - for stdout");
  bench->add_option("--threads", ba.threads, "Worker threads (0: all cores)");

  std::string cat_action, cat_path;
  auto* cat = app.add_subcommand("catalog", "Inspect a catalog");
  cat->add_option("action", cat_action, "list|verify")->required()->check(CLI::IsMember({"list", "verify"}));
  cat->add_option("path", cat_path, "Catalog file (default $MANIMAL_CATALOG)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*analyze) return Analyze(aa, out);
    if (*index) return Index(ia, out);
    if (*run) return Run(ra, out, err);
    if (*gen) return Gen(gen_kind, ga, out);
    if (*bench) return Bench(ba, out);
    if (*cat) return CatalogCmd(cat_action, cat_path, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.category()) {
      case ErrorCategory::kUsage: return 1;
      case ErrorCategory::kPlan: return 2;
      case ErrorCategory::kData: return 3;
    }
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  return 1;
}

}  // namespace manimal::cli
