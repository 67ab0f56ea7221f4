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

#include "manimal/engine/index_gen.h"

#include <algorithm>
#include <numeric>

#include "manimal/common/error.h"
#include "manimal/common/hashing.h"
#include "manimal/detectors/descriptor_json.h"
#include "manimal/storage/btree.h"
#include "manimal/storage/column_group.h"
#include "manimal/storage/dictionary.h"
#include "manimal/storage/key_codec.h"
#include "manimal/storage/record_file.h"

namespace manimal::engine {

using detectors::IndexFormat;
using detectors::IndexGenSpec;

void ValidateSpec(const IndexGenSpec& spec, const RecordLayout& schema) {
  if (spec.retained_fields.empty()) throw SpecError("spec '" + spec.name + "' retains no fields");
  for (const auto& f : spec.retained_fields) {
    auto idx = schema.FieldIndex(f);
    if (!idx || *idx < 0) throw SpecError("spec '" + spec.name + "' retains unknown field '" + f + "'");
  }
  auto kept = [&](const std::string& f) {
    return f == kKeyField ||
           std::find(spec.retained_fields.begin(), spec.retained_fields.end(), f) != spec.retained_fields.end();
  };
  for (const auto& [f, codec] : spec.codecs) {
    auto t = schema.TypeOf(f);
    if (!t) throw SpecError("spec '" + spec.name + "' has a codec for unknown field '" + f + "'");
    if (!kept(f)) throw SpecError("spec '" + spec.name + "' encodes field '" + f + "' it does not retain");
    if (codec == Codec::kDelta && *t != FieldType::kI32 && *t != FieldType::kI64) {
      throw SpecError("delta codec on non-integer field '" + f + "'");
    }
    if (codec == Codec::kDict && (*t != FieldType::kStr || f == kKeyField)) {
      throw SpecError("dictionary codec on non-string field '" + f + "'");
    }
    if (codec == Codec::kDelta && spec.format == IndexFormat::kBTree) {
      throw SpecError("B+Tree indexes store rows; delta codec on '" + f + "' is not supported");
    }
  }
  if (spec.format == IndexFormat::kBTree) {
    if (!spec.index_field) throw SpecError("B+Tree spec '" + spec.name + "' has no index field");
    if (!schema.TypeOf(*spec.index_field)) throw SpecError("unknown index field '" + *spec.index_field + "'");
    if (!kept(*spec.index_field)) throw SpecError("index field '" + *spec.index_field + "' is not retained");
    if (spec.CodecOf(*spec.index_field) != Codec::kPlain) {
      throw SpecError("index field '" + *spec.index_field + "' must be stored plain");
    }
  } else if (spec.index_field) {
    throw SpecError("column-group spec '" + spec.name + "' cannot have an index field");
  }
}

storage::CatalogEntry RunIndexGen(const IndexGenSpec& spec, const std::filesystem::path& input,
                                  const storage::Catalog* catalog, const IndexGenOptions& options) {
  // Map: read, project and collect the retained columns.
  RecordLayout schema;
  std::vector<Record> rows = storage::ReadRecordFile(input, &schema);
  ValidateSpec(spec, schema);

  RecordLayout stored;
  stored.name = schema.name;
  stored.key_type = schema.key_type;
  std::vector<size_t> src;
  for (size_t i = 0; i < schema.fields.size(); ++i) {
    const Field& f = schema.fields[i];
    if (std::find(spec.retained_fields.begin(), spec.retained_fields.end(), f.name) == spec.retained_fields.end()) {
      continue;
    }
    src.push_back(i);
    stored.fields.push_back({f.name, spec.CodecOf(f.name) == Codec::kDict ? FieldType::kToken : f.type});
  }
  for (auto& r : rows) {
    std::vector<Value> vals;
    vals.reserve(src.size());
    for (size_t i : src) vals.push_back(std::move(r.values[i]));
    r.values = std::move(vals);
  }

  // Dictionaries over the whole column; tokens replace the strings.
  std::map<std::string, storage::Dictionary> dicts;
  for (size_t c = 0; c < stored.fields.size(); ++c) {
    if (stored.fields[c].type != FieldType::kToken) continue;
    std::vector<std::string> column;
    column.reserve(rows.size());
    for (const auto& r : rows) column.push_back(std::get<std::string>(r.values[c]));
    storage::Dictionary d = storage::Dictionary::Build(column);
    for (auto& r : rows) r.values[c] = static_cast<int64_t>(*d.Encode(std::get<std::string>(r.values[c])));
    dicts.emplace(stored.fields[c].name, std::move(d));
  }

  std::filesystem::path dir = options.output_dir;
  if (dir.empty()) dir = catalog && catalog->path().has_parent_path() ? catalog->path().parent_path() : input.parent_path();
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  const std::string tag = Sha256Hex(detectors::SpecToJson(spec).dump()).substr(0, 10);
  const bool btree = spec.format == IndexFormat::kBTree;
  const std::filesystem::path index_path =
      dir / (input.stem().string() + "." + spec.name + "." + tag + (btree ? ".mmbt" : ".mmcg"));

  // Shuffle and write.
  if (btree) {
    const std::string& field = *spec.index_field;
    const auto idx = stored.FieldIndex(field);
    const FieldType t = *stored.TypeOf(field);
    std::vector<std::string> keys;
    keys.reserve(rows.size());
    for (const auto& r : rows) keys.push_back(storage::EncodeKey(*idx < 0 ? r.key : r.values[static_cast<size_t>(*idx)], t));
    std::vector<size_t> order(rows.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return keys[a] < keys[b]; });
    storage::BTreeBuilder builder(index_path, stored, field, t, options.page_size);
    for (size_t i : order) builder.Add(keys[i], rows[i]);
    builder.Finish();
    storage::BTreeReader check(index_path);
    if (check.record_count() != rows.size() || !(check.layout() == stored) || !check.VerifyChecksum()) {
      throw IoError(index_path.string() + ": index failed verification after build");
    }
  } else {
    storage::WriteColumnGroup(index_path, stored, spec.codecs, rows);
    storage::ColumnGroupReader check(index_path);
    if (check.rows() != rows.size() || !(check.layout() == stored)) {
      throw IoError(index_path.string() + ": column group failed verification after build");
    }
  }

  storage::CatalogEntry e;
  e.input_path = input.string();
  e.input_sha256 = Sha256File(input);
  e.spec_name = spec.name;
  e.format = btree ? "btree" : "colgroup";
  e.index_field = spec.index_field;
  e.retained_fields.clear();
  for (const auto& f : stored.fields) e.retained_fields.push_back(f.name);
  e.codecs = spec.codecs;
  e.index_path = index_path.string();
  e.size_bytes = storage::FileSize(index_path);
  for (const auto& [field, d] : dicts) {
    const std::filesystem::path p = index_path.string() + "." + field + ".dict";
    d.Save(p);
    e.dictionaries[field] = p.string();
    e.size_bytes += storage::FileSize(p);
  }
  if (btree) e.kind.push_back("select");
  if (stored.fields.size() < schema.fields.size()) e.kind.push_back("project");
  for (std::string_view k : {"delta", "directop"}) {
    const Codec want = k == "delta" ? Codec::kDelta : Codec::kDict;
    for (const auto& [f, c] : e.codecs) {
      if (c == want) {
        e.kind.emplace_back(k);
        break;
      }
    }
  }
  e.created_at = storage::UtcNow();
  if (catalog) catalog->Append(e);
  return e;
}

}  // namespace manimal::engine
