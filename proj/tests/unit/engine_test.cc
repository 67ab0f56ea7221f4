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

#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <map>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/detectors/detectors.h"
#include "manimal/engine/index_gen.h"
#include "manimal/engine/interpreter.h"
#include "manimal/engine/rewrite.h"
#include "manimal/engine/runner.h"
#include "manimal/engine/sources.h"
#include "manimal/lang/parser.h"
#include "manimal/optimizer/planner.h"
#include "manimal/storage/btree.h"
#include "manimal/storage/byte_io.h"
#include "manimal/storage/catalog.h"
#include "manimal/storage/column_group.h"
#include "manimal/storage/dictionary.h"
#include "manimal/storage/key_codec.h"
#include "manimal/storage/record_file.h"
#include "manimal/workload/benchmarks.h"
#include "manimal/workload/generators.h"
#include "manimal/workload/suite.h"
#include "pipeline.h"

namespace manimal::engine {
namespace {

namespace fs = std::filesystem;
using detectors::OptKind;
using testing::TempDir;
using workload::CompileJob;

using Pairs = std::vector<std::pair<Value, Value>>;

std::string PagesJob(const std::string& map_body, const std::string& reduce = "emit(k, count(vs));",
                     const std::string& members = "", bool sorted = false) {
  return workload::SchemaDecl(workload::WebPagesLayout()) + "job J on WebPages" + (sorted ? " sorted" : "") +
         " {\n" + members + " map(k, v) {\n" + map_body + "\n }\n reduce(k, vs) {\n" + reduce + "\n }\n}\n";
}

Record Page(const std::string& key, int64_t rank, const std::string& url = "u", const std::string& content = "") {
  return Record{key, {url, rank, content}};
}

Pairs MapAll(const lang::TypedJob& job, const std::vector<Record>& records, std::vector<std::string>* logs = nullptr) {
  Pairs out;
  Task task(
      job, false, [&](Value&& k, Value&& v) { out.emplace_back(std::move(k), std::move(v)); },
      [&](const std::string& line) {
        if (logs) logs->push_back(line);
      });
  for (const auto& r : records) task.Map(r.key, r);
  return out;
}

Value EmitOne(const std::string& expr, const Record& r = Page("a", 1)) {
  auto job = CompileJob(PagesJob("emit(k, " + expr + ");", "emit(k, count(vs));"));
  const Pairs p = MapAll(job, {r});
  EXPECT_EQ(p.size(), 1u);
  return p.empty() ? Value{} : p[0].second;
}

TEST(Interpreter, RankFilter) {
  auto job = CompileJob(PagesJob("if (v.rank > 1) emit(k, 1);"));
  EXPECT_EQ(MapAll(job, {Page("a", 2)}), (Pairs{{std::string("a"), int64_t{1}}}));
  EXPECT_TRUE(MapAll(job, {Page("a", 0)}).empty());
}

TEST(Interpreter, MemberCounterCrosses200) {
  auto job = CompileJob(workload::CounterJobSource());
  std::vector<Record> records;
  for (int i = 1; i <= 201; ++i) records.push_back(Page("p" + std::to_string(i), 0));
  const Pairs p = MapAll(job, records);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].first, Value(std::string("p201")));
}

TEST(Interpreter, MembersAreFreshPerTask) {
  auto job = CompileJob(workload::CounterJobSource());
  std::vector<Record> records(150, Page("x", 0));
  EXPECT_TRUE(MapAll(job, records).empty());
  EXPECT_TRUE(MapAll(job, records).empty());
}

TEST(Interpreter, IntegerSemantics) {
  constexpr int64_t kMin = std::numeric_limits<int64_t>::min();
  EXPECT_EQ(EmitOne("9223372036854775807 + 1"), Value(kMin));
  EXPECT_EQ(EmitOne("(0 - 7) / 2"), Value(int64_t{-3}));
  EXPECT_EQ(EmitOne("(0 - 7) % 2"), Value(int64_t{-1}));
  EXPECT_EQ(EmitOne("(0 - 9223372036854775807 - 1) / (0 - 1)"), Value(kMin));
  EXPECT_EQ(EmitOne("5 % (0 - 1)"), Value(int64_t{0}));
}

TEST(Interpreter, I32ArithmeticWraps) {
  auto job = CompileJob(PagesJob("emit(k, v.rank + v.rank);"));
  const Pairs p = MapAll(job, {Page("a", std::numeric_limits<int32_t>::max())});
  ASSERT_EQ(p.size(), 1u);
  EXPECT_EQ(p[0].second, Value(int64_t{-2}));
  EXPECT_EQ(job.map_out_value.kind, lang::TypeKind::kI32);
}

TEST(Interpreter, DivisionByZeroNamesStatement) {
  auto job = CompileJob(PagesJob("let z = v.rank - 1;\n emit(k, 10 / z);"));
  int emit_id = -1;
  lang::ForEachStmt(job.spec.map.body, [&](const lang::Stmt& s) {
    if (s.kind == lang::StmtKind::kEmit) emit_id = s.id;
  });
  try {
    MapAll(job, {Page("a", 1)});
    FAIL() << "expected JobError";
  } catch (const JobError& e) {
    EXPECT_EQ(e.stmt_id(), emit_id);
  }
  EXPECT_EQ(MapAll(job, {Page("a", 3)}).size(), 1u);
}

TEST(Interpreter, Builtins) {
  const Record r = Page("a", 1, "Hello", "42");
  EXPECT_EQ(EmitOne("substr(v.url, 0 - 1, 3)", r), Value(std::string("Hel")));
  EXPECT_EQ(EmitOne("substr(v.url, 3, 10)", r), Value(std::string("lo")));
  EXPECT_EQ(EmitOne("substr(v.url, 9, 1)", r), Value(std::string("")));
  EXPECT_EQ(EmitOne("substr(v.url, 1, 0 - 2)", r), Value(std::string("")));
  EXPECT_EQ(EmitOne("to_lower(v.url)", r), Value(std::string("hello")));
  EXPECT_EQ(EmitOne("len(v.url)", r), Value(int64_t{5}));
  EXPECT_EQ(EmitOne("parse_i64(v.content)", r), Value(int64_t{42}));
  EXPECT_EQ(EmitOne("parse_i64(\"-17\")", r), Value(int64_t{-17}));
  EXPECT_EQ(EmitOne("parse_i64(\"4x\")", r), Value(int64_t{0}));
  EXPECT_EQ(EmitOne("parse_i64(\"99999999999999999999\")", r), Value(int64_t{0}));
  EXPECT_EQ(EmitOne("to_str(0 - 5) ++ \"/\" ++ v.url", r), Value(std::string("-5/Hello")));
  EXPECT_EQ(EmitOne("len(to_str(v.rank))", r), Value(int64_t{1}));
  auto bools = CompileJob(PagesJob(
      "if (contains(v.url, \"ell\")) emit(k, 1);\n if (starts_with(v.url, \"He\")) emit(k, 2);\n"
      " if (\"B\" < \"a\") emit(k, 3);\n if (\"ab\" < \"b\") emit(k, 4);\n if (contains(v.url, \"z\")) emit(k, 5);"));
  EXPECT_EQ(MapAll(bools, {r}).size(), 4u);
}

TEST(Interpreter, Tables) {
  auto job = CompileJob(PagesJob("emit(k, table_get(t, v.url));\n emit(k, table_put(t, v.url, v.rank + 10));",
                                 "emit(k, count(vs));", " members { t: table; }\n"));
  const Pairs p = MapAll(job, {Page("a", 1, "x"), Page("b", 2, "x")});
  ASSERT_EQ(p.size(), 4u);
  EXPECT_EQ(p[0].second, Value(int64_t{0}));
  EXPECT_EQ(p[1].second, Value(int64_t{11}));
  EXPECT_EQ(p[2].second, Value(int64_t{11}));
  EXPECT_EQ(p[3].second, Value(int64_t{12}));
}

TEST(Interpreter, LogsAndLoops) {
  auto job = CompileJob(PagesJob("let i = 0;\n while (i < v.rank) { log(i); i = i + 1; }\n emit(k, i);"));
  std::vector<std::string> logs;
  const Pairs p = MapAll(job, {Page("a", 3)}, &logs);
  EXPECT_EQ(logs, (std::vector<std::string>{"0", "1", "2"}));
  EXPECT_EQ(p, (Pairs{{std::string("a"), int64_t{3}}}));
}

TEST(Interpreter, StepLimit) {
  auto job = CompileJob(PagesJob("while (true) { log(1); }"));
  InterpreterOptions o;
  o.step_limit = 1000;
  Task task(job, false, [](Value&&, Value&&) {}, [](const std::string&) {}, o);
  const Record r = Page("a", 1);
  EXPECT_THROW(task.Map(r.key, r), JobError);
}

TEST(Interpreter, ReduceBuiltins) {
  auto job = CompileJob(PagesJob("emit(k, v.rank);",
                                 "emit(k, sum(vs));\n emit(k, count(vs));\n emit(k, at(vs, count(vs) - 1));"));
  Pairs out;
  Task task(job, true, [&](Value&& k, Value&& v) { out.emplace_back(std::move(k), std::move(v)); },
            [](const std::string&) {});
  task.Reduce(std::string("g"), {int64_t{4}, int64_t{5}, int64_t{6}});
  EXPECT_EQ(out, (Pairs{{std::string("g"), int64_t{15}}, {std::string("g"), int64_t{3}}, {std::string("g"), int64_t{6}}}));
  EXPECT_THROW(task.Reduce(std::string("g"), {}), JobError);
}

TEST(Interpreter, EvalConditionMatchesMap) {
  const auto cond = lang::ParseExpression("v.rank * 2 > 5 && starts_with(v.url, \"h\")");
  const auto layout = workload::WebPagesLayout();
  lang::TypecheckCondition(cond, layout);
  for (int64_t rank = 0; rank < 6; ++rank) {
    for (const char* url : {"http", "ftp"}) {
      const Record r = Page("k", rank, url);
      EXPECT_EQ(EvalCondition(cond, layout, r.key, r), rank * 2 > 5 && url[0] == 'h');
    }
  }
}

// Runner.

struct Dataset {
  TempDir dir{"engine"};
  fs::path input;
  std::vector<Record> records;
};

std::unique_ptr<Dataset> SmallPages(uint64_t n, int32_t rank_max = 3, int32_t rank_min = 0) {
  auto d = std::make_unique<Dataset>();
  d->input = d->dir / "pages.mmrf";
  workload::WebPagesSpec spec;
  spec.n = n;
  spec.content_size = 40;
  spec.rank_min = rank_min;
  spec.rank_max = rank_max;
  workload::WriteWebPages(spec, d->input);
  d->records = storage::ReadRecordFile(d->input);
  return d;
}

TEST(Runner, OnlyPassingRecordsReachReduce) {
  auto d = SmallPages(2000);
  auto job = CompileJob(PagesJob("if (v.rank > 1) emit(k, 1);", "emit(k, count(vs));", "", true));
  RunOptions o;
  o.reducers = 3;
  const auto stats = RunJob(job, testing::RawPlan(d->input), d->dir / "out.mmrf", o);
  std::map<std::string, int64_t> want;
  for (const auto& r : d->records) {
    if (std::get<int64_t>(r.values[1]) > 1) ++want[std::get<std::string>(r.key)];
  }
  std::vector<Record> expected;
  for (const auto& [k, c] : want) expected.push_back(Record{k, {c}});
  EXPECT_EQ(storage::ReadRecordFile(d->dir / "out.mmrf"), expected);
  EXPECT_EQ(stats.records_scanned, d->records.size());
  EXPECT_EQ(stats.map_invocations, d->records.size());
  EXPECT_EQ(stats.output_records, expected.size());
  EXPECT_EQ(stats.reduce_groups, expected.size());
  EXPECT_EQ(stats.output_digest, CanonicalDigest(job.OutputLayout(), expected));
}

TEST(Runner, GroupedSumsMatchOracle) {
  auto d = SmallPages(3000, 100, 1);
  auto job = CompileJob(PagesJob("emit(substr(v.url, 0, 24), v.rank);", "emit(k, sum(vs));"));
  RunOptions o;
  o.reducers = 4;
  o.split_records = 333;
  RunJob(job, testing::RawPlan(d->input), d->dir / "out.mmrf", o);
  std::map<std::string, int64_t> want;
  for (const auto& r : d->records) {
    want[std::get<std::string>(r.values[0]).substr(0, 24)] += std::get<int64_t>(r.values[1]);
  }
  std::map<std::string, int64_t> got;
  for (const auto& r : storage::ReadRecordFile(d->dir / "out.mmrf")) {
    EXPECT_TRUE(got.emplace(std::get<std::string>(r.key), std::get<int64_t>(r.values[0])).second);
  }
  EXPECT_EQ(got, want);
}

TEST(Runner, SelectPlanScansLessWithSameOutput) {
  auto d = SmallPages(4000);
  auto job = CompileJob(PagesJob("if (v.rank > 1) emit(v.url, v.rank);", "emit(k, sum(vs));", "", true));
  const auto analysis = detectors::Analyze(job);
  storage::Catalog cat(d->dir / "catalog.jsonl");
  std::vector<storage::CatalogEntry> entries;
  for (const auto& spec : analysis.specs) entries.push_back(RunIndexGen(spec, d->input, &cat, {d->dir / "idx"}));
  const optimizer::InputId id{d->input.string(), Sha256File(d->input)};
  const auto plan = optimizer::Plan(analysis.descriptors, entries, id, job.spec.input_schema);
  ASSERT_EQ(plan.source, optimizer::InputSource::kIndex);
  ASSERT_TRUE(plan.Active(OptKind::kSelect));
  const auto base = RunJob(job, testing::RawPlan(d->input), d->dir / "a.mmrf");
  const auto opt = RunJob(job, plan, d->dir / "b.mmrf");
  EXPECT_EQ(opt.output_digest, base.output_digest);
  EXPECT_EQ(opt.pairs_emitted, base.pairs_emitted);
  EXPECT_EQ(storage::ReadFile(d->dir / "a.mmrf"), storage::ReadFile(d->dir / "b.mmrf"));
  EXPECT_LT(opt.records_scanned, base.records_scanned);
  // Scanned records are exactly those whose index key falls in the ranges.
  uint64_t in_range = 0;
  for (const auto& r : d->records) {
    in_range += storage::Contains(*plan.ranges, storage::EncodeKey(r.values[1], FieldType::kI32));
  }
  EXPECT_EQ(opt.records_scanned, in_range);
  EXPECT_LT(opt.bytes_read, base.bytes_read);
}

TEST(Runner, DeterministicAcrossRunsAndReducers) {
  auto d = SmallPages(2500, 100, 1);
  auto job = CompileJob(PagesJob("emit(substr(v.url, 0, 25), v.rank);", "emit(k, sum(vs));"));
  std::string digest;
  for (int reducers : {1, 2, 5}) {
    for (int rep = 0; rep < 2; ++rep) {
      RunOptions o;
      o.reducers = reducers;
      o.threads = 1 + rep;
      const auto s = RunJob(job, testing::RawPlan(d->input), d->dir / "o.mmrf", o);
      if (digest.empty()) digest = s.output_digest;
      EXPECT_EQ(s.output_digest, digest);
      EXPECT_EQ(s.pairs_emitted, d->records.size());
    }
  }
}

TEST(Runner, SplitsIsolateMembers) {
  auto d = SmallPages(450, 1, 1);  // every rank is 1, so only the counter emits
  auto job = CompileJob(workload::CounterJobSource());
  RunOptions small;
  small.split_records = 150;
  EXPECT_EQ(RunJob(job, testing::RawPlan(d->input), d->dir / "a.mmrf", small).pairs_emitted, 0u);
  RunOptions big;
  big.split_records = 4096;
  EXPECT_EQ(RunJob(job, testing::RawPlan(d->input), d->dir / "b.mmrf", big).pairs_emitted, 250u);
}

TEST(Runner, LogsForwardedInInputOrder) {
  auto d = SmallPages(300);
  auto job = CompileJob(PagesJob("if (v.rank == 2) { log(k); }\n emit(k, 1);"));
  std::vector<std::string> lines;
  RunOptions o;
  o.split_records = 64;
  o.log = [&](const std::string& l) { lines.push_back(l); };
  RunJob(job, testing::RawPlan(d->input), d->dir / "o.mmrf", o);
  std::vector<std::string> want;
  for (const auto& r : d->records) {
    if (std::get<int64_t>(r.values[1]) == 2) want.push_back(std::get<std::string>(r.key));
  }
  EXPECT_EQ(lines, want);
}

TEST(Runner, JobErrorsPropagate) {
  auto d = SmallPages(100);
  auto job = CompileJob(PagesJob("emit(k, 10 / v.rank);"));
  EXPECT_THROW(RunJob(job, testing::RawPlan(d->input), d->dir / "o.mmrf"), JobError);
  EXPECT_FALSE(fs::exists(d->dir / "o.mmrf"));
}

TEST(Runner, StatsJson) {
  ExecutionStats s;
  s.bytes_read = 7;
  s.output_digest = "ab";
  const auto j = StatsToJson(s);
  for (const char* k : {"bytesRead", "recordsScanned", "mapInvocations", "pairsEmitted", "shuffleBytes",
                        "reduceGroups", "outputRecords", "wallMillis", "outputDigest"}) {
    EXPECT_TRUE(j.contains(k)) << k;
  }
  EXPECT_EQ(j.at("bytesRead"), 7);
}

TEST(Runner, CanonicalDigestIgnoresOrder) {
  const RecordLayout l{"O", FieldType::kStr, {{"v", FieldType::kI64}}};
  std::vector<Record> a = {{std::string("x"), {int64_t{1}}}, {std::string("y"), {int64_t{2}}},
                           {std::string("x"), {int64_t{3}}}};
  std::vector<Record> b = {a[2], a[0], a[1]};
  EXPECT_EQ(CanonicalDigest(l, a), CanonicalDigest(l, b));
  b[0].values[0] = int64_t{4};
  EXPECT_NE(CanonicalDigest(l, a), CanonicalDigest(l, b));
  // Length prefixes keep concatenations apart.
  std::vector<Record> c = {{std::string("ab"), {int64_t{1}}}};
  std::vector<Record> e = {{std::string("a"), {int64_t{1}}}};
  EXPECT_NE(CanonicalDigest(l, c), CanonicalDigest(l, e));
}

// Index generation and sources.

TEST(IndexGen, SelectSpecBuildsClusteredTree) {
  auto d = SmallPages(3000, 100, 1);
  detectors::IndexGenSpec spec;
  spec.name = "select";
  spec.format = detectors::IndexFormat::kBTree;
  spec.index_field = "rank";
  spec.retained_fields = {"url", "rank", "content"};
  storage::Catalog cat(d->dir / "c.jsonl");
  const auto e = RunIndexGen(spec, d->input, &cat, {d->dir / "idx", 1024});
  EXPECT_EQ(e.format, "btree");
  EXPECT_EQ(e.index_field, std::optional<std::string>("rank"));
  EXPECT_TRUE(e.Has("select"));
  EXPECT_TRUE(storage::Verify(e).ok);
  EXPECT_EQ(e.size_bytes, storage::FileSize(e.index_path));
  ASSERT_EQ(cat.Load().entries.size(), 1u);
  EXPECT_EQ(cat.Load().entries[0], e);

  storage::BTreeReader r(e.index_path);
  EXPECT_EQ(r.record_count(), d->records.size());
  std::vector<Record> got;
  int64_t prev = std::numeric_limits<int64_t>::min();
  r.Scan(storage::FullRange(), [&](std::string_view, Record&& rec) {
    const int64_t rank = std::get<int64_t>(rec.values[1]);
    EXPECT_GE(rank, prev);
    prev = rank;
    got.push_back(std::move(rec));
  }, nullptr);
  auto want = d->records;
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, want);
}

TEST(IndexGen, ProjectDeltaSpecBuildsColumnGroup) {
  TempDir dir("ig");
  workload::UserVisitsSpec uv;
  uv.n = 2000;
  uv.url_pool = {"http://a", "http://b", "http://c"};
  workload::WriteUserVisits(uv, dir / "uv.mmrf");
  auto job = CompileJob(workload::BenchmarkModels()[1].source);
  const auto specs = detectors::Analyze(job).specs;
  ASSERT_FALSE(specs.empty());
  const auto e = RunIndexGen(specs.front(), dir / "uv.mmrf", nullptr, {dir / "idx"});
  EXPECT_EQ(e.format, "colgroup");
  EXPECT_TRUE(e.Has("project"));
  EXPECT_TRUE(e.Has("delta"));
  storage::ColumnGroupReader r(e.index_path);
  EXPECT_EQ(r.rows(), 2000u);
  EXPECT_EQ(r.Column("adRevenue")->codec, Codec::kDelta);
  EXPECT_EQ(r.Column("duration"), nullptr);
  EXPECT_LT(storage::FileSize(e.index_path), storage::FileSize(dir / "uv.mmrf") / 3);
}

TEST(IndexGen, DirectOpSpecWritesDictionary) {
  TempDir dir("ig");
  workload::UserVisitsSpec uv;
  uv.n = 1000;
  uv.url_pool = {"http://a", "http://b", "http://c", "http://d"};
  workload::WriteUserVisits(uv, dir / "uv.mmrf");
  detectors::IndexGenSpec spec;
  spec.name = "directop";
  spec.retained_fields = {"destURL", "duration"};
  spec.codecs = {{"destURL", Codec::kDict}};
  const auto e = RunIndexGen(spec, dir / "uv.mmrf", nullptr, {dir / "idx"});
  ASSERT_EQ(e.dictionaries.count("destURL"), 1u);
  const auto dict = storage::Dictionary::Load(e.dictionaries.at("destURL"));
  EXPECT_LE(dict.size(), 4u);
  storage::ColumnGroupReader r(e.index_path);
  EXPECT_EQ(r.Column("destURL")->type, FieldType::kToken);
  std::vector<std::string> urls;
  r.Scan([&](Record&& rec) { urls.push_back(dict.Lookup(std::get<int64_t>(rec.values[0]))); });
  std::vector<std::string> want;
  for (const auto& rec : storage::ReadRecordFile(dir / "uv.mmrf")) want.push_back(std::get<std::string>(rec.values[1]));
  EXPECT_EQ(urls, want);
}

TEST(IndexGen, InvalidSpecsRejectedBeforeWork) {
  TempDir dir("ig");
  auto d = SmallPages(10);
  const auto layout = workload::WebPagesLayout();
  detectors::IndexGenSpec empty;
  empty.name = "none";
  EXPECT_THROW(ValidateSpec(empty, layout), SpecError);
  storage::Catalog cat(dir / "c.jsonl");
  EXPECT_THROW(RunIndexGen(empty, d->input, &cat, {dir / "idx"}), SpecError);
  EXPECT_FALSE(fs::exists(dir / "idx") && !fs::is_empty(dir / "idx"));
  EXPECT_TRUE(cat.Load().entries.empty());

  auto bad = [&](auto mutate) {
    detectors::IndexGenSpec s;
    s.name = "x";
    s.retained_fields = {"url", "rank"};
    mutate(s);
    EXPECT_THROW(ValidateSpec(s, layout), SpecError);
  };
  bad([](auto& s) { s.retained_fields.push_back("nope"); });
  bad([](auto& s) { s.codecs["url"] = Codec::kDelta; });
  bad([](auto& s) { s.codecs["rank"] = Codec::kDict; });
  bad([](auto& s) { s.codecs["key"] = Codec::kDict; });
  bad([](auto& s) { s.codecs["content"] = Codec::kDict; });
  bad([](auto& s) { s.format = detectors::IndexFormat::kBTree; });
  bad([](auto& s) {
    s.format = detectors::IndexFormat::kBTree;
    s.index_field = "content";
  });
  bad([](auto& s) {
    s.format = detectors::IndexFormat::kBTree;
    s.index_field = "rank";
    s.codecs["rank"] = Codec::kDelta;
  });
  bad([](auto& s) { s.index_field = "rank"; });
}

TEST(Sources, RawLayoutMismatchRejected) {
  auto d = SmallPages(10);
  const auto plan = testing::RawPlan(d->input);
  EXPECT_THROW(ScanInput(plan, workload::UserVisitsLayout(), [](Record&&) {}, nullptr), PlanMismatchError);
  uint64_t n = 0;
  storage::ScanStats stats;
  ScanInput(plan, workload::WebPagesLayout(), [&](Record&&) { ++n; }, &stats);
  EXPECT_EQ(n, 10u);
  EXPECT_EQ(stats.bytes_read, storage::FileSize(d->input));
  EXPECT_EQ(InputRecordCount(d->input), 10u);
}

TEST(Sources, ProjectedFieldsReadAsDefaults) {
  auto d = SmallPages(50);
  detectors::IndexGenSpec spec;
  spec.name = "project";
  spec.retained_fields = {"rank"};
  const auto e = RunIndexGen(spec, d->input, nullptr, {d->dir / "idx"});
  optimizer::ExecutionDescriptor plan;
  plan.source = optimizer::InputSource::kIndex;
  plan.input_path = d->input.string();
  plan.entry = e;
  plan.active = {OptKind::kProject};
  std::vector<Record> got;
  ScanInput(plan, workload::WebPagesLayout(), [&](Record&& r) { got.push_back(std::move(r)); }, nullptr);
  ASSERT_EQ(got.size(), d->records.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].key, d->records[i].key);
    EXPECT_EQ(got[i].values[0], Value(std::string()));
    EXPECT_EQ(got[i].values[1], d->records[i].values[1]);
    EXPECT_EQ(got[i].values[2], Value(std::string()));
  }
}

// Direct operation.

TEST(Rewrite, TokensReplaceStrings) {
  auto job = CompileJob(workload::SchemaDecl(workload::UserVisitsLayout()) +
                        "job J on UserVisits { map(k, v) { if (v.destURL != \"http://b\") emit(v.destURL, v.duration); "
                        "if (v.destURL == \"http://zzz\") emit(v.destURL, 1000); } reduce(k, vs) { emit(k, sum(vs)); } }");
  std::map<std::string, storage::Dictionary> dicts;
  const std::vector<std::string> urls = {"http://a", "http://b", "http://c"};
  dicts["destURL"] = storage::Dictionary::Build(urls);
  const RewrittenJob rw = RewriteForDirectOp(job, dicts);
  EXPECT_EQ(rw.output_key_field, std::optional<std::string>("destURL"));
  EXPECT_EQ(rw.job.spec.input_schema.TypeOf("destURL"), std::optional<FieldType>(FieldType::kToken));
  std::vector<int64_t> tokens;
  lang::ForEachStmt(rw.job.spec.map.body, [&](const lang::Stmt& s) {
    lang::ForEachExpr(s.expr, [&](const lang::Expr& e) {
      EXPECT_NE(e.kind, lang::ExprKind::kStrLit);
      if (e.kind == lang::ExprKind::kTokenLit) tokens.push_back(e.int_value);
    });
  });
  EXPECT_EQ(tokens, (std::vector<int64_t>{1, storage::kAbsentToken}));
  // The absent constant never matches.
  Pairs out;
  Task task(rw.job, false, [&](Value&& k, Value&& v) { out.emplace_back(std::move(k), std::move(v)); },
            [](const std::string&) {});
  for (int64_t t = 0; t < 3; ++t) {
    Record r{int64_t{1}, {std::string("ip"), t, int64_t{1}, int64_t{2}, std::string("a"), std::string("c"),
                          std::string("l"), std::string("w"), int64_t{7}}};
    task.Map(r.key, r);
  }
  EXPECT_EQ(out, (Pairs{{int64_t{0}, int64_t{7}}, {int64_t{2}, int64_t{7}}}));
}

TEST(Rewrite, SortedJobRefused) {
  auto job = CompileJob(workload::SchemaDecl(workload::UserVisitsLayout()) +
                        "job J on UserVisits sorted { map(k, v) { emit(v.destURL, v.duration); } "
                        "reduce(k, vs) { emit(k, sum(vs)); } }");
  std::map<std::string, storage::Dictionary> dicts;
  dicts["destURL"] = storage::Dictionary::Build(std::vector<std::string>{"x"});
  EXPECT_THROW(RewriteForDirectOp(job, dicts), RewriteError);
}

TEST(Rewrite, NonEqualityUseRefused) {
  auto job = CompileJob(workload::SchemaDecl(workload::UserVisitsLayout()) +
                        "job J on UserVisits { map(k, v) { emit(v.destURL, len(v.destURL)); } "
                        "reduce(k, vs) { emit(k, sum(vs)); } }");
  std::map<std::string, storage::Dictionary> dicts;
  dicts["destURL"] = storage::Dictionary::Build(std::vector<std::string>{"x"});
  EXPECT_THROW(RewriteForDirectOp(job, dicts), RewriteError);
}

TEST(Rewrite, EndToEndSumsMatch) {
  TempDir dir("rw");
  workload::WebPagesSpec wp;
  wp.n = 300;
  wp.content_size = 10;
  wp.url_length = 60;
  workload::WriteWebPages(wp, dir / "pages.mmrf");
  workload::UserVisitsSpec uv;
  uv.n = 5000;
  uv.url_pool = workload::LoadUrlPool(dir / "pages.mmrf");
  workload::WriteUserVisits(uv, dir / "uv.mmrf");
  auto job = CompileJob(workload::DurationByUrlJobSource());
  const auto check = testing::CheckPlansEquivalent(job, dir / "uv.mmrf", dir / "w");
  EXPECT_TRUE(check.failures.empty()) << check.failures.front();
  EXPECT_GE(check.index_plans, 4);

  // Independent oracle for the sums.
  std::map<std::string, int64_t> want;
  for (const auto& r : storage::ReadRecordFile(dir / "uv.mmrf")) {
    want[std::get<std::string>(r.values[1])] += std::get<int64_t>(r.values[8]);
  }
  std::map<std::string, int64_t> got;
  for (const auto& r : storage::ReadRecordFile(dir / "w" / "opt_1.mmrf")) {
    got[std::get<std::string>(r.key)] = std::get<int64_t>(r.values[0]);
  }
  EXPECT_EQ(got, want);
}

}  // namespace
}  // namespace manimal::engine
