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

#include "manimal/engine/sources.h"

#include "manimal/common/error.h"
#include "manimal/storage/column_group.h"
#include "manimal/storage/record_file.h"

namespace manimal::engine {

namespace {

// For each schema field, the stored field index or -1 when dropped.
std::vector<int> MapFields(const RecordLayout& stored, const RecordLayout& schema, const std::string& what) {
  if (stored.key_type != schema.key_type) {
    throw PlanMismatchError(what + " key is " + std::string(FieldTypeName(stored.key_type)) + ", job expects " +
                            std::string(FieldTypeName(schema.key_type)));
  }
  std::vector<int> out;
  for (const auto& f : schema.fields) {
    auto idx = stored.FieldIndex(f.name);
    if (!idx || *idx < 0) {
      out.push_back(-1);
      continue;
    }
    const FieldType t = stored.fields[static_cast<size_t>(*idx)].type;
    if (t != f.type) {
      throw PlanMismatchError(what + " stores " + f.name + " as " + std::string(FieldTypeName(t)) + ", job expects " +
                              std::string(FieldTypeName(f.type)));
    }
    out.push_back(*idx);
  }
  for (const auto& f : stored.fields) {
    if (!schema.FieldIndex(f.name)) throw PlanMismatchError(what + " has field " + f.name + " unknown to the job");
  }
  return out;
}

bool Identity(const std::vector<int>& m, size_t stored_fields) {
  if (m.size() != stored_fields) return false;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Record Widen(Record&& in, const std::vector<int>& m, const RecordLayout& schema) {
  Record out;
  out.key = std::move(in.key);
  out.values.reserve(m.size());
  for (size_t i = 0; i < m.size(); ++i) {
    out.values.push_back(m[i] < 0 ? DefaultValue(schema.fields[i].type)
                                  : std::move(in.values[static_cast<size_t>(m[i])]));
  }
  return out;
}

}  // namespace

void ScanInput(const optimizer::ExecutionDescriptor& plan, const RecordLayout& schema, const RecordVisitor& visit,
               storage::ScanStats* stats) {
  if (plan.source == optimizer::InputSource::kRaw) {
    storage::RecordFileReader reader(plan.input_path);
    const auto m = MapFields(reader.layout(), schema, plan.input_path);
    if (!Identity(m, reader.layout().fields.size())) {
      throw PlanMismatchError(plan.input_path + " does not have the job's input schema");
    }
    Record r;
    uint64_t n = 0;
    while (reader.Next(r)) {
      ++n;
      visit(std::move(r));
      r = Record();
    }
    if (stats) {
      stats->records += n;
      stats->bytes_read += reader.bytes_read();
    }
    return;
  }

  const storage::CatalogEntry& e = *plan.entry;
  if (e.format == "btree") {
    storage::BTreeReader reader(e.index_path);
    const auto m = MapFields(reader.layout(), schema, e.index_path);
    const bool same = Identity(m, reader.layout().fields.size());
    const storage::KeyRangeSet ranges = plan.ranges ? *plan.ranges : storage::FullRange();
    reader.Scan(
        ranges,
        [&](std::string_view, Record&& r) { visit(same ? std::move(r) : Widen(std::move(r), m, schema)); },
        stats);
    return;
  }
  storage::ColumnGroupReader reader(e.index_path);
  const auto m = MapFields(reader.layout(), schema, e.index_path);
  const bool same = Identity(m, reader.layout().fields.size());
  reader.Scan([&](Record&& r) { visit(same ? std::move(r) : Widen(std::move(r), m, schema)); }, stats);
}

uint64_t InputRecordCount(const std::filesystem::path& raw_path) {
  return storage::RecordFileReader(raw_path).count();
}

}  // namespace manimal::engine
