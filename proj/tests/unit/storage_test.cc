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
#include <fstream>
#include <limits>
#include <map>
#include <thread>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/storage/btree.h"
#include "manimal/storage/byte_io.h"
#include "manimal/storage/catalog.h"
#include "manimal/storage/column_group.h"
#include "manimal/storage/delta_codec.h"
#include "manimal/storage/dictionary.h"
#include "manimal/storage/key_codec.h"
#include "manimal/storage/key_range.h"
#include "manimal/storage/record_codec.h"
#include "manimal/storage/record_file.h"
#include "manimal/workload/generators.h"
#include "manimal/workload/zipf.h"
#include "pipeline.h"
#include "random_jobs.h"

namespace manimal::storage {
namespace {

namespace fs = std::filesystem;
using namespace std::string_literals;
using testing::TempDir;

RecordLayout PagesLayout() {
  return RecordLayout{"WebPages", FieldType::kStr,
                      {{"url", FieldType::kStr}, {"rank", FieldType::kI32}, {"content", FieldType::kStr}}};
}

// Reference encoders, written against the documented byte layout.
std::string RefVarint(uint64_t v) {
  std::string out;
  while (v >= 0x80) {
    out.push_back(static_cast<char>((v & 0x7f) | 0x80));
    v >>= 7;
  }
  out.push_back(static_cast<char>(v));
  return out;
}

uint64_t RefZigZag(int64_t v) { return v >= 0 ? 2 * static_cast<uint64_t>(v) : 2 * (~static_cast<uint64_t>(v)) + 1; }

size_t LayoutBytes(const RecordLayout& l) {
  size_t n = 2 + l.name.size() + 1 + 2;
  for (const auto& f : l.fields) n += 2 + f.name.size() + 1;
  return n;
}

void Corrupt(const fs::path& p, uint64_t offset) {
  std::fstream f(p, std::ios::in | std::ios::out | std::ios::binary);
  f.seekg(static_cast<std::streamoff>(offset));
  char c = 0;
  f.read(&c, 1);
  c = static_cast<char>(c ^ 0x5a);
  f.seekp(static_cast<std::streamoff>(offset));
  f.write(&c, 1);
}

TEST(RecordCodec, ValueBodyIsSeventeenBytes) {
  const RecordLayout l = PagesLayout();
  const std::vector<Value> values = {std::string("a"), int64_t{1}, std::string("")};
  // u32 length prefix, then url (4+1), rank (4), content (4+0).
  EXPECT_EQ(4 + EncodeValues(l, values).size(), 17u);
  const Record r{std::string("k"), values};
  const std::string payload = EncodeRecord(l, r);
  EXPECT_EQ(payload.size(), (4 + 1) + 13u);
  EXPECT_EQ(DecodeRecord(l, payload), r);
}

TEST(RecordCodec, LittleEndianFixedWidth) {
  std::string out;
  ByteWriter w(&out);
  EncodeValue(w, int64_t{-2}, FieldType::kI32);
  EncodeValue(w, int64_t{0x0102030405060708}, FieldType::kI64);
  EXPECT_EQ(out, std::string("\xfe\xff\xff\xff\x08\x07\x06\x05\x04\x03\x02\x01", 12));
}

TEST(RecordCodec, RandomRoundTrip) {
  workload::Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const RecordLayout l = testing::RandomSchema(rng);
    const Record r = testing::RandomRecord(rng, l);
    EXPECT_EQ(DecodeRecord(l, EncodeRecord(l, r)), r);
    size_t n = EncodedSize(r.key, l.key_type);
    for (size_t j = 0; j < l.fields.size(); ++j) n += EncodedSize(r.values[j], l.fields[j].type);
    EXPECT_EQ(EncodeRecord(l, r).size(), n);
  }
}

TEST(RecordCodec, TrailingBytesRejected) {
  const RecordLayout l = PagesLayout();
  std::string payload = EncodeRecord(l, Record{std::string("k"), {std::string("a"), int64_t{1}, std::string("")}});
  EXPECT_THROW(DecodeRecord(l, payload + "x"), DecodeError);
  EXPECT_THROW(DecodeRecord(l, payload.substr(0, payload.size() - 1)), DecodeError);
}

TEST(RecordCodec, CheckRecordRejectsMismatches) {
  const RecordLayout l = PagesLayout();
  EXPECT_THROW(CheckRecord(l, Record{std::string("k"), {std::string("a"), int64_t{1}}}), IoError);
  EXPECT_THROW(CheckRecord(l, Record{std::string("k"), {std::string("a"), int64_t{1} << 40, std::string("")}}),
               IoError);
  EXPECT_THROW(CheckRecord(l, Record{int64_t{3}, {std::string("a"), int64_t{1}, std::string("")}}), IoError);
}

TEST(KeyCodec, PreservesOrder) {
  workload::Rng rng(4);
  for (int i = 0; i < 5000; ++i) {
    const int64_t a = static_cast<int64_t>(rng.Next());
    const int64_t b = rng.Unit() < 0.5 ? static_cast<int64_t>(rng.Next()) : a + rng.Range(-3, 3);
    EXPECT_EQ(a < b, EncodeKey(Value(a), FieldType::kI64) < EncodeKey(Value(b), FieldType::kI64));
    const int64_t c = static_cast<int32_t>(a), d = static_cast<int32_t>(b);
    EXPECT_EQ(c < d, EncodeKey(Value(c), FieldType::kI32) < EncodeKey(Value(d), FieldType::kI32));
    EXPECT_EQ(DecodeKey(EncodeKey(Value(a), FieldType::kI64), FieldType::kI64), Value(a));
    EXPECT_EQ(DecodeKey(EncodeKey(Value(c), FieldType::kI32), FieldType::kI32), Value(c));
  }
  const std::vector<std::string> strs = {"", "a", "a\0"s, "ab", "b", "\xff"};
  for (const auto& x : strs) {
    for (const auto& y : strs) {
      EXPECT_EQ(x < y, EncodeKey(Value(x), FieldType::kStr) < EncodeKey(Value(y), FieldType::kStr));
    }
  }
}

TEST(RecordFile, EmptyFileIsHeaderPlusFooter) {
  TempDir dir("rf");
  const RecordLayout l = PagesLayout();
  WriteRecordFile(dir / "e.mmrf", l, {});
  EXPECT_EQ(FileSize(dir / "e.mmrf"), 5 + LayoutBytes(l) + kRecordFileFooterSize);
  RecordFileReader r(dir / "e.mmrf");
  EXPECT_EQ(r.count(), 0u);
  EXPECT_EQ(r.layout(), l);
  Record rec;
  EXPECT_FALSE(r.Next(rec));
}

TEST(RecordFile, RoundTripAndSize) {
  TempDir dir("rf");
  workload::Rng rng(5);
  const RecordLayout l = testing::RandomSchema(rng);
  const auto records = testing::RandomRecords(rng, l, 1000);
  WriteRecordFile(dir / "r.mmrf", l, records);
  RecordLayout got;
  EXPECT_EQ(ReadRecordFile(dir / "r.mmrf", &got), records);
  EXPECT_EQ(got, l);
  uint64_t body = 0;
  for (const auto& r : records) body += 4 + EncodeRecord(l, r).size();
  EXPECT_EQ(FileSize(dir / "r.mmrf"), 5 + LayoutBytes(l) + body + kRecordFileFooterSize);
}

TEST(RecordFile, TruncatedLastRecordNamesOffset) {
  TempDir dir("rf");
  const RecordLayout l = PagesLayout();
  std::vector<Record> records;
  for (int i = 0; i < 3; ++i) records.push_back({std::string("k") + char('0' + i), {std::string("u"), int64_t{i}, std::string(50, 'c')}});
  WriteRecordFile(dir / "t.mmrf", l, records);
  const uint64_t last_start = 5 + LayoutBytes(l) + 2 * (4 + EncodeRecord(l, records[0]).size());
  fs::resize_file(dir / "t.mmrf", FileSize(dir / "t.mmrf") - kRecordFileFooterSize - 10);
  RecordFileReader r(dir / "t.mmrf");
  Record rec;
  ASSERT_TRUE(r.Next(rec));
  ASSERT_TRUE(r.Next(rec));
  try {
    r.Next(rec);
    FAIL() << "expected DecodeError";
  } catch (const DecodeError& e) {
    EXPECT_NE(std::string(e.what()).find("offset " + std::to_string(last_start)), std::string::npos) << e.what();
  }
}

TEST(RecordFile, ChecksumAndMagicChecked) {
  TempDir dir("rf");
  const RecordLayout l = PagesLayout();
  WriteRecordFile(dir / "c.mmrf", l, {{std::string("k"), {std::string("u"), int64_t{1}, std::string("zzzz")}}});
  Corrupt(dir / "c.mmrf", FileSize(dir / "c.mmrf") - kRecordFileFooterSize - 2);
  EXPECT_THROW(ReadRecordFile(dir / "c.mmrf"), DecodeError);
  WriteFileAtomic(dir / "bad.mmrf", "NOPE....");
  EXPECT_THROW(RecordFileReader(dir / "bad.mmrf"), DecodeError);
}

TEST(DeltaCodec, Empty) {
  EXPECT_TRUE(DeltaEncode({}).empty());
  EXPECT_TRUE(DeltaDecode("").empty());
}

TEST(DeltaCodec, SpecExample) {
  const std::vector<int64_t> v = {100, 101, 99, 99};
  const std::string expected = RefVarint(200) + RefVarint(2) + RefVarint(3) + RefVarint(0);
  EXPECT_EQ(DeltaEncode(v), expected);
  EXPECT_EQ(DeltaDecode(expected, 4), v);
}

TEST(DeltaCodec, RandomAgainstReference) {
  workload::Rng rng(6);
  for (int i = 0; i < 300; ++i) {
    std::vector<int64_t> v(static_cast<size_t>(rng.Range(0, 50)));
    for (auto& x : v) {
      const double p = rng.Unit();
      x = p < 0.1 ? std::numeric_limits<int64_t>::min() : p < 0.2 ? std::numeric_limits<int64_t>::max()
                                                                   : rng.Range(-1000, 1000);
    }
    std::string ref;
    uint64_t prev = 0;
    for (int64_t x : v) {
      ref += RefVarint(RefZigZag(static_cast<int64_t>(static_cast<uint64_t>(x) - prev)));
      prev = static_cast<uint64_t>(x);
    }
    EXPECT_EQ(DeltaEncode(v), ref);
    EXPECT_EQ(DeltaDecode(ref, static_cast<int64_t>(v.size())), v);
  }
  EXPECT_THROW(DeltaDecode(RefVarint(4), 2), DecodeError);
  EXPECT_THROW(DeltaDecode("\x80"), DecodeError);
}

TEST(DeltaCodec, SmallStepsCompress) {
  std::vector<int64_t> ts;
  workload::Rng rng(7);
  int64_t t = 1'600'000'000;
  for (int i = 0; i < 10000; ++i) ts.push_back(t += rng.Range(0, 20));
  EXPECT_LT(DeltaEncode(ts).size(), 0.3 * 8 * ts.size());
}

TEST(Dictionary, SortedTokens) {
  const std::vector<std::string> col = {"a", "b", "a"};
  const Dictionary d = Dictionary::Build(col);
  EXPECT_EQ(d.size(), 2u);
  std::vector<int64_t> enc;
  for (const auto& s : col) enc.push_back(d.EncodeOrAbsent(s));
  EXPECT_EQ(enc, (std::vector<int64_t>{0, 1, 0}));
  for (size_t i = 0; i < col.size(); ++i) EXPECT_EQ(d.Lookup(enc[i]), col[i]);
  EXPECT_EQ(d.EncodeOrAbsent("zz"), kAbsentToken);
  EXPECT_THROW(d.Lookup(2), DecodeError);
}

TEST(Dictionary, EmptyAndLimits) {
  EXPECT_EQ(Dictionary::Build({}).size(), 0u);
  const std::vector<std::string> col = {"a", "b", "c"};
  EXPECT_THROW(Dictionary::Build(col, 2), DictionaryFullError);
}

TEST(Dictionary, SerializeRoundTripAndCorruption) {
  TempDir dir("dict");
  std::vector<std::string> col;
  for (int i = 0; i < 200; ++i) col.push_back("url" + std::to_string(i % 37));
  const Dictionary d = Dictionary::Build(col);
  d.Save(dir / "d.dict");
  const Dictionary e = Dictionary::Load(dir / "d.dict");
  EXPECT_EQ(e.entries(), d.entries());
  std::string bytes = d.Serialize();
  bytes[8] ^= 1;
  EXPECT_THROW(Dictionary::Deserialize(bytes), DecodeError);
}

TEST(Dictionary, ZipfianColumnShrinks) {
  // Repeated long strings: 4-byte tokens plus the dictionary beat raw bytes.
  workload::Rng rng(8);
  workload::Zipf zipf(2000, 0.99);
  std::vector<std::string> col;
  uint64_t raw = 0;
  for (int i = 0; i < 100000; ++i) {
    col.push_back("http://www.example.com/" + std::to_string(zipf.Sample(rng)) + "/padding-padding");
    raw += 4 + col.back().size();
  }
  const Dictionary d = Dictionary::Build(col);
  const uint64_t encoded = 4 * col.size() + d.Serialize().size();
  EXPECT_LE(encoded, 0.4 * raw);
}

// B+Tree.

std::vector<std::pair<std::string, Record>> IntKeyed(const std::vector<int64_t>& keys, size_t content = 8) {
  std::vector<std::pair<std::string, Record>> out;
  for (size_t i = 0; i < keys.size(); ++i) {
    out.push_back({EncodeKey(Value(keys[i]), FieldType::kI32),
                   Record{keys[i], {std::string("r") + std::to_string(i), std::string(content, 'x')}}});
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

RecordLayout TreeLayout() {
  return RecordLayout{"T", FieldType::kI32, {{"name", FieldType::kStr}, {"body", FieldType::kStr}}};
}

void Build(const fs::path& p, const std::vector<std::pair<std::string, Record>>& rows, uint32_t page = 4096) {
  BTreeBuilder b(p, TreeLayout(), "key", FieldType::kI32, page);
  for (const auto& [k, r] : rows) b.Add(k, r);
  b.Finish();
}

std::vector<Record> ScanAll(BTreeReader& r, const KeyRangeSet& ranges, ScanStats* stats = nullptr) {
  std::vector<Record> out;
  r.Scan(ranges, [&](std::string_view, Record&& rec) { out.push_back(std::move(rec)); }, stats);
  return out;
}

KeyRange IntRange(int64_t lo, int64_t hi) {
  return KeyRange{EncodeKey(Value(lo), FieldType::kI32), EncodeKey(Value(hi), FieldType::kI32)};
}

TEST(BTree, EmptyIndex) {
  TempDir dir("bt");
  Build(dir / "e.mmbt", {});
  BTreeReader r(dir / "e.mmbt");
  EXPECT_EQ(r.record_count(), 0u);
  EXPECT_TRUE(ScanAll(r, FullRange()).empty());
  EXPECT_TRUE(r.VerifyChecksum());
}

TEST(BTree, HalfOpenRange) {
  TempDir dir("bt");
  std::vector<int64_t> keys;
  for (int64_t i = 1; i <= 1000; ++i) keys.push_back(i);
  Build(dir / "a.mmbt", IntKeyed(keys));
  BTreeReader r(dir / "a.mmbt");
  EXPECT_EQ(r.record_count(), 1000u);
  ScanStats stats;
  const auto got = ScanAll(r, {IntRange(250, 750)}, &stats);
  ASSERT_EQ(got.size(), 500u);
  for (size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].key, Value(static_cast<int64_t>(250 + i)));
  EXPECT_EQ(stats.records, 500u);
  EXPECT_LT(stats.pages_read, r.page_count());
  EXPECT_EQ(stats.bytes_read, stats.pages_read * r.page_size());
}

TEST(BTree, EmptyRangeSetReadsNoLeaves) {
  TempDir dir("bt");
  std::vector<int64_t> keys;
  for (int64_t i = 0; i < 5000; ++i) keys.push_back(i);
  Build(dir / "a.mmbt", IntKeyed(keys));
  BTreeReader r(dir / "a.mmbt");
  ScanStats stats;
  EXPECT_TRUE(ScanAll(r, {}, &stats).empty());
  EXPECT_LE(stats.pages_read, r.height());
}

TEST(BTree, DuplicateKeysAllReturned) {
  TempDir dir("bt");
  workload::Rng rng(9);
  workload::Zipf zipf(50, 0.99);
  std::vector<int64_t> keys;
  std::map<int64_t, size_t> counts;
  for (int i = 0; i < 20000; ++i) {
    keys.push_back(static_cast<int64_t>(zipf.Sample(rng)));
    ++counts[keys.back()];
  }
  Build(dir / "d.mmbt", IntKeyed(keys), 512);
  BTreeReader r(dir / "d.mmbt");
  EXPECT_GT(r.height(), 1u);
  for (const auto& [k, n] : counts) {
    const auto got = ScanAll(r, {IntRange(k, k + 1)});
    EXPECT_EQ(got.size(), n) << k;
    for (const auto& rec : got) EXPECT_EQ(rec.key, Value(k));
  }
}

TEST(BTree, OverflowRecords) {
  TempDir dir("bt");
  std::vector<int64_t> keys = {5, 1, 3, 3, 9};
  const auto rows = IntKeyed(keys, 20000);
  Build(dir / "o.mmbt", rows, 1024);
  BTreeReader r(dir / "o.mmbt");
  std::vector<Record> want;
  for (const auto& [k, rec] : rows) want.push_back(rec);
  EXPECT_EQ(ScanAll(r, FullRange()), want);
  const auto three = ScanAll(r, {IntRange(3, 4)});
  EXPECT_EQ(three.size(), 2u);
}

TEST(BTree, RandomRangesAgainstOracle) {
  TempDir dir("bt");
  workload::Rng rng(10);
  std::vector<int64_t> keys;
  for (int i = 0; i < 10000; ++i) keys.push_back(rng.Range(-5000, 5000));
  const auto rows = IntKeyed(keys);
  Build(dir / "r.mmbt", rows, 1024);
  BTreeReader r(dir / "r.mmbt");
  for (int iter = 0; iter < 30; ++iter) {
    KeyRangeSet rs;
    const int n = static_cast<int>(rng.Range(0, 4));
    for (int i = 0; i < n; ++i) {
      KeyRange kr;
      const int64_t lo = rng.Range(-6000, 6000);
      if (rng.Unit() < 0.9) kr.lo = EncodeKey(Value(lo), FieldType::kI32);
      if (rng.Unit() < 0.9) kr.hi = EncodeKey(Value(lo + rng.Range(0, 800)), FieldType::kI32);
      rs.push_back(kr);
    }
    rs = Normalize(rs);
    std::vector<Record> want;
    for (const auto& [k, rec] : rows) {
      if (Contains(rs, k)) want.push_back(rec);
    }
    EXPECT_EQ(ScanAll(r, rs), want);
  }
}

TEST(BTree, RejectsUnsortedInputAndCorruption) {
  TempDir dir("bt");
  {
    BTreeBuilder b(dir / "u.mmbt", TreeLayout(), "key", FieldType::kI32);
    b.Add(EncodeKey(Value(int64_t{2}), FieldType::kI32), Record{int64_t{2}, {std::string("a"), std::string("b")}});
    EXPECT_THROW(
        b.Add(EncodeKey(Value(int64_t{1}), FieldType::kI32), Record{int64_t{1}, {std::string("a"), std::string("b")}}),
        UnsortedInputError);
  }
  std::vector<int64_t> keys;
  for (int64_t i = 0; i < 3000; ++i) keys.push_back(i);
  Build(dir / "c.mmbt", IntKeyed(keys));
  {
    BTreeReader r(dir / "c.mmbt");
    EXPECT_TRUE(r.VerifyChecksum());
  }
  Corrupt(dir / "c.mmbt", 4096 + 100);
  {
    BTreeReader r(dir / "c.mmbt");
    EXPECT_FALSE(r.VerifyChecksum());
  }
  fs::resize_file(dir / "c.mmbt", FileSize(dir / "c.mmbt") - 1);
  EXPECT_THROW(BTreeReader(dir / "c.mmbt"), DecodeError);
}

// Column groups.

TEST(ColumnGroup, RoundTripWithCodecs) {
  TempDir dir("cg");
  const RecordLayout l{"V", FieldType::kI64,
                       {{"ip", FieldType::kStr}, {"date", FieldType::kI32}, {"url", FieldType::kToken},
                        {"rev", FieldType::kI64}}};
  workload::Rng rng(11);
  std::vector<Record> rows;
  int64_t date = 14000;
  for (int64_t i = 0; i < 3000; ++i) {
    if (rng.Unit() < 0.03) ++date;
    rows.push_back(Record{i, {std::string("10.0.0.") + std::to_string(rng.Range(0, 9)), date, rng.Range(0, 40),
                              rng.Range(-100000, 100000)}});
  }
  const std::map<std::string, Codec> codecs = {
      {"key", Codec::kDelta}, {"date", Codec::kDelta}, {"url", Codec::kDict}, {"rev", Codec::kDelta}};
  WriteColumnGroup(dir / "g.mmcg", l, codecs, rows);
  ColumnGroupReader r(dir / "g.mmcg");
  EXPECT_EQ(r.rows(), rows.size());
  EXPECT_EQ(r.layout(), l);
  ASSERT_EQ(r.columns().size(), 5u);
  EXPECT_EQ(r.columns()[0].name, "key");
  EXPECT_EQ(r.Column("date")->codec, Codec::kDelta);
  EXPECT_EQ(r.Column("url")->codec, Codec::kDict);
  EXPECT_EQ(r.Column("ip")->codec, Codec::kPlain);
  EXPECT_EQ(r.Column("url")->length, 4 * rows.size());
  EXPECT_LT(r.Column("date")->length, rows.size() * 4 / 3);
  EXPECT_EQ(r.Column("nope"), nullptr);
  std::vector<Record> got;
  ScanStats stats;
  r.Scan([&](Record&& rec) { got.push_back(std::move(rec)); }, &stats);
  EXPECT_EQ(got, rows);
  EXPECT_EQ(stats.records, rows.size());
  EXPECT_EQ(stats.bytes_read, FileSize(dir / "g.mmcg"));
}

TEST(ColumnGroup, EmptyAndCorrupt) {
  TempDir dir("cg");
  const RecordLayout l{"V", FieldType::kI64, {{"a", FieldType::kI32}}};
  WriteColumnGroup(dir / "e.mmcg", l, {{"a", Codec::kDelta}}, {});
  ColumnGroupReader e(dir / "e.mmcg");
  EXPECT_EQ(e.rows(), 0u);
  WriteColumnGroup(dir / "c.mmcg", l, {}, {{int64_t{1}, {int64_t{2}}}, {int64_t{3}, {int64_t{4}}}});
  Corrupt(dir / "c.mmcg", 6);
  EXPECT_THROW(ColumnGroupReader(dir / "c.mmcg"), DecodeError);
}

// Catalog.

CatalogEntry SampleEntry(const fs::path& input, const fs::path& index) {
  CatalogEntry e;
  e.input_path = input.string();
  e.input_sha256 = Sha256File(input);
  e.spec_name = "combined";
  e.kind = {"project", "delta"};
  e.format = "colgroup";
  e.retained_fields = {"url", "rank"};
  e.codecs = {{"rank", Codec::kDelta}};
  e.index_path = index.string();
  e.size_bytes = FileSize(index);
  e.created_at = UtcNow();
  return e;
}

TEST(Catalog, MissingFileIsEmpty) {
  TempDir dir("cat");
  const auto load = Catalog(dir / "none.jsonl").Load();
  EXPECT_TRUE(load.entries.empty());
  EXPECT_TRUE(load.malformed.empty());
}

TEST(Catalog, AppendThenLoad) {
  TempDir dir("cat");
  WriteFileAtomic(dir / "in", "input bytes");
  WriteFileAtomic(dir / "idx", "index bytes");
  const CatalogEntry e = SampleEntry(dir / "in", dir / "idx");
  Catalog cat(dir / "c.jsonl");
  cat.Append(e);
  const auto load = cat.Load();
  ASSERT_EQ(load.entries.size(), 1u);
  EXPECT_EQ(load.entries[0], e);
  EXPECT_TRUE(load.entries[0].Has("delta"));
  EXPECT_FALSE(load.entries[0].Has("select"));
  EXPECT_EQ(CatalogEntryFromJson(CatalogEntryToJson(e)), e);
  EXPECT_TRUE(Verify(e).ok);
  EXPECT_EQ(e.input_sha256, Sha256Hex("input bytes"));
}

TEST(Catalog, MalformedLinesReported) {
  TempDir dir("cat");
  WriteFileAtomic(dir / "in", "x");
  WriteFileAtomic(dir / "idx", "y");
  Catalog cat(dir / "c.jsonl");
  cat.Append(SampleEntry(dir / "in", dir / "idx"));
  {
    std::ofstream out(dir / "c.jsonl", std::ios::app);
    out << "{not json\n";
  }
  cat.Append(SampleEntry(dir / "in", dir / "idx"));
  const auto load = cat.Load();
  EXPECT_EQ(load.entries.size(), 2u);
  ASSERT_EQ(load.malformed.size(), 1u);
  EXPECT_EQ(load.malformed[0].rfind("line 2:", 0), 0u);
}

TEST(Catalog, MutatedInputFailsVerify) {
  TempDir dir("cat");
  WriteFileAtomic(dir / "in", "hello world");
  WriteFileAtomic(dir / "idx", "y");
  const CatalogEntry e = SampleEntry(dir / "in", dir / "idx");
  Corrupt(dir / "in", 3);
  const auto v = Verify(e);
  EXPECT_FALSE(v.ok);
  EXPECT_NE(v.reason.find("hash"), std::string::npos);
  fs::remove(dir / "idx");
  EXPECT_FALSE(Verify(e).ok);
}

TEST(Catalog, ConcurrentAppendsAllLand) {
  TempDir dir("cat");
  WriteFileAtomic(dir / "in", "x");
  WriteFileAtomic(dir / "idx", "y");
  const CatalogEntry e = SampleEntry(dir / "in", dir / "idx");
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&] {
      Catalog cat(dir / "c.jsonl");
      for (int i = 0; i < 25; ++i) cat.Append(e);
    });
  }
  for (auto& t : threads) t.join();
  const auto load = Catalog(dir / "c.jsonl").Load();
  EXPECT_EQ(load.entries.size(), 100u);
  EXPECT_TRUE(load.malformed.empty());
}

TEST(Hashing, KnownVectors) {
  EXPECT_EQ(Sha256Hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(Crc32(std::string_view("123456789")), 0xCBF43926u);
}

}  // namespace
}  // namespace manimal::storage
