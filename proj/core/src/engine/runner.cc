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

#include "manimal/engine/runner.h"

#include <algorithm>
#include <chrono>
#include <exception>
#include <thread>
#include <tuple>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/engine/rewrite.h"
#include "manimal/engine/sources.h"
#include "manimal/storage/key_codec.h"
#include "manimal/storage/record_file.h"

namespace manimal::engine {

namespace {

struct Pair {
  std::string key_bytes;  // order-preserving key encoding
  std::string value_bytes;
  Value key;
  Value value;
};

// Runs fn(i) for i in [0, n) on up to `threads` threads; rethrows the first
// failure in index order.
template <typename F>
void Parallel(size_t n, int threads, F&& fn) {
  std::vector<std::exception_ptr> errors(n);
  auto guarded = [&](size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (threads <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) guarded(i);
  } else {
    for (size_t start = 0; start < n; start += static_cast<size_t>(threads)) {
      std::vector<std::thread> pool;
      const size_t end = std::min(n, start + static_cast<size_t>(threads));
      for (size_t i = start; i < end; ++i) pool.emplace_back(guarded, i);
      for (auto& t : pool) t.join();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

FieldType FieldOf(const lang::Type& t) { return t.ToField().value_or(FieldType::kI64); }

std::string EncodeOne(const Value& v, FieldType t) {
  std::string out;
  storage::ByteWriter w(&out);
  storage::EncodeValue(w, v, t);
  return out;
}

}  // namespace

nlohmann::json StatsToJson(const ExecutionStats& s) {
  return {
      {"bytesRead", s.bytes_read},         {"recordsScanned", s.records_scanned},
      {"mapInvocations", s.map_invocations}, {"pairsEmitted", s.pairs_emitted},
      {"shuffleBytes", s.shuffle_bytes},   {"reduceGroups", s.reduce_groups},
      {"outputRecords", s.output_records}, {"wallMillis", s.wall_millis},
      {"outputDigest", s.output_digest},
  };
}

std::string CanonicalDigest(const RecordLayout& layout, const std::vector<Record>& records) {
  std::vector<std::string> enc;
  enc.reserve(records.size());
  for (const auto& r : records) enc.push_back(storage::EncodeRecord(layout, r));
  std::sort(enc.begin(), enc.end());
  std::string buf;
  storage::ByteWriter w(&buf);
  for (const auto& e : enc) w.Str32(e);
  return Sha256Hex(buf);
}

ExecutionStats RunJob(const lang::TypedJob& input_job, const optimizer::ExecutionDescriptor& plan,
                      const std::filesystem::path& output, const RunOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  ExecutionStats stats;

  // Direct-op plans execute the token form of the job.
  std::optional<RewrittenJob> rewritten;
  std::map<std::string, storage::Dictionary> dicts;
  if (plan.Active(detectors::OptKind::kDirectOp)) {
    for (const auto& [field, path] : plan.dictionaries) dicts[field] = storage::Dictionary::Load(path);
    rewritten = RewriteForDirectOp(input_job, dicts);
  }
  const lang::TypedJob& job = rewritten ? rewritten->job : input_job;
  const RecordLayout& schema = job.spec.input_schema;
  const int threads =
      options.threads > 0 ? options.threads : std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  const size_t reducers = static_cast<size_t>(std::max(1, options.reducers));
  const size_t split = std::max<size_t>(1, options.split_records);
  const FieldType mk = FieldOf(job.map_out_key);
  const FieldType mv = FieldOf(job.map_out_value);

  // Map: splits of `split` records, a wave of `threads` splits at a time,
  // each split in a fresh task.
  std::vector<std::vector<Pair>> partitions(reducers);
  std::vector<Record> wave;
  wave.reserve(split * static_cast<size_t>(threads));
  auto run_wave = [&]() {
    const size_t nsplits = (wave.size() + split - 1) / split;
    std::vector<std::vector<Pair>> emitted(nsplits);
    std::vector<std::vector<std::string>> logs(nsplits);
    std::vector<uint64_t> calls(nsplits, 0);
    Parallel(nsplits, threads, [&](size_t s) {
      auto& out = emitted[s];
      auto& log = logs[s];
      Task task(
          job, /*reduce=*/false,
          [&](Value&& k, Value&& v) {
            Pair p;
            p.key_bytes = storage::EncodeKey(k, mk);
            p.value_bytes = EncodeOne(v, mv);
            p.key = std::move(k);
            p.value = std::move(v);
            out.push_back(std::move(p));
          },
          [&](const std::string& line) { log.push_back(line); }, options.interpreter);
      const size_t end = std::min(wave.size(), (s + 1) * split);
      for (size_t i = s * split; i < end; ++i) task.Map(wave[i].key, wave[i]);
      calls[s] = task.invocations();
    });
    for (size_t s = 0; s < nsplits; ++s) {
      stats.map_invocations += calls[s];
      if (options.log) {
        for (const auto& l : logs[s]) options.log(l);
      }
      for (auto& p : emitted[s]) {
        ++stats.pairs_emitted;
        stats.shuffle_bytes += p.key_bytes.size() + p.value_bytes.size();
        partitions[Fnv1a64(p.key_bytes) % reducers].push_back(std::move(p));
      }
    }
    wave.clear();
  };

  storage::ScanStats scan;
  ScanInput(
      plan, schema,
      [&](Record&& r) {
        wave.push_back(std::move(r));
        if (wave.size() == split * static_cast<size_t>(threads)) run_wave();
      },
      &scan);
  if (!wave.empty()) run_wave();
  stats.bytes_read = scan.bytes_read;
  stats.records_scanned = scan.records;

  // Shuffle sort and reduce, one task per partition.
  std::vector<std::vector<Record>> results(reducers);
  std::vector<uint64_t> groups(reducers, 0);
  std::vector<std::vector<std::string>> reduce_logs(reducers);
  Parallel(reducers, threads, [&](size_t p) {
    auto& part = partitions[p];
    std::sort(part.begin(), part.end(), [](const Pair& a, const Pair& b) {
      return std::tie(a.key_bytes, a.value_bytes) < std::tie(b.key_bytes, b.value_bytes);
    });
    auto& out = results[p];
    Task task(
        job, /*reduce=*/true, [&](Value&& k, Value&& v) { out.push_back(Record{std::move(k), {std::move(v)}}); },
        [&](const std::string& line) { reduce_logs[p].push_back(line); }, options.interpreter);
    std::vector<Value> values;
    for (size_t i = 0; i < part.size();) {
      size_t j = i;
      values.clear();
      while (j < part.size() && part[j].key_bytes == part[i].key_bytes) values.push_back(std::move(part[j++].value));
      task.Reduce(part[i].key, values);
      ++groups[p];
      i = j;
    }
    part.clear();
    part.shrink_to_fit();
  });
  for (uint64_t g : groups) stats.reduce_groups += g;
  if (options.log) {
    for (const auto& lines : reduce_logs) {
      for (const auto& l : lines) options.log(l);
    }
  }

  RecordLayout layout = job.OutputLayout();
  std::vector<Record> records;
  for (auto& r : results) {
    for (auto& rec : r) records.push_back(std::move(rec));
  }
  if (rewritten && rewritten->output_key_field) {
    const storage::Dictionary& d = dicts.at(*rewritten->output_key_field);
    for (auto& r : records) r.key = d.Lookup(std::get<int64_t>(r.key));
    layout.key_type = FieldType::kStr;
  }
  if (job.spec.sorted_output) {
    const FieldType kt = layout.key_type;
    const FieldType vt = layout.fields[0].type;
    std::vector<std::tuple<std::string, std::string, size_t>> order;
    order.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i) {
      order.emplace_back(storage::EncodeKey(records[i].key, kt), EncodeOne(records[i].values[0], vt), i);
    }
    std::sort(order.begin(), order.end());
    std::vector<Record> sorted;
    sorted.reserve(records.size());
    for (const auto& [k, v, i] : order) sorted.push_back(std::move(records[i]));
    records = std::move(sorted);
  }
  storage::WriteRecordFile(output, layout, records);
  stats.output_records = records.size();
  stats.output_digest = CanonicalDigest(layout, records);
  stats.wall_millis = static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count());
  return stats;
}

}  // namespace manimal::engine
