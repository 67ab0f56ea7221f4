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

#include "manimal/optimizer/planner.h"

#include <algorithm>
#include <filesystem>
#include <tuple>

#include "manimal/common/error.h"
#include "manimal/detectors/descriptor_json.h"

namespace manimal::optimizer {

namespace {

using detectors::OptimizationDescriptor;

const OptimizationDescriptor* FindKind(const std::vector<OptimizationDescriptor>& ds, OptKind k) {
  for (const auto& d : ds) {
    if (d.kind == k) return &d;
  }
  return nullptr;
}

bool Lists(const OptimizationDescriptor* d, const std::string& field) {
  return d && std::find(d->fields.begin(), d->fields.end(), field) != d->fields.end();
}

std::string Canonical(const std::string& p) {
  std::error_code ec;
  auto c = std::filesystem::weakly_canonical(p, ec);
  return ec ? p : c.string();
}

struct Candidate {
  const storage::CatalogEntry* entry = nullptr;
  std::set<OptKind> active;
  std::optional<KeyRangeSet> ranges;
};

// Null when some transformation of the entry is not backed by a descriptor.
std::optional<Candidate> Evaluate(const storage::CatalogEntry& e, const std::vector<OptimizationDescriptor>& ds,
                                  const RecordLayout& schema, const PlanOptions& options,
                                  std::vector<std::string>* notes) {
  Candidate c;
  c.entry = &e;
  auto reject = [&](const std::string& why) {
    notes->push_back("skip " + e.index_path + ": " + why);
    return std::nullopt;
  };

  if (e.format == "btree") {
    const OptimizationDescriptor* sel = FindKind(ds, OptKind::kSelect);
    if (!options.allow_select) return reject("selection disabled");
    if (!sel) return reject("clustered index without a selection descriptor");
    if (!e.index_field || std::find(sel->candidates.begin(), sel->candidates.end(), *e.index_field) ==
                              sel->candidates.end()) {
      return reject("index field is not sargable for this job");
    }
    if (e.codecs.count(*e.index_field) && e.codecs.at(*e.index_field) != Codec::kPlain) return reject("index field is not stored plain");
    auto ranges = DnfToRanges(sel->dnf, *e.index_field, schema);
    if (!ranges) return reject("condition not sargable on " + *e.index_field);
    c.ranges = std::move(*ranges);
    c.active.insert(OptKind::kSelect);
  } else if (e.format != "colgroup") {
    return reject("unknown format " + e.format);
  }

  const OptimizationDescriptor* proj = FindKind(ds, OptKind::kProject);
  for (const auto& f : schema.fields) {
    if (std::find(e.retained_fields.begin(), e.retained_fields.end(), f.name) != e.retained_fields.end()) continue;
    if (!Lists(proj, f.name)) return reject("drops field " + f.name + " that the job needs");
    c.active.insert(OptKind::kProject);
  }
  for (const auto& r : e.retained_fields) {
    if (!schema.FieldIndex(r) || r == kKeyField) return reject("retains unknown field " + r);
  }

  const OptimizationDescriptor* delta = FindKind(ds, OptKind::kDelta);
  const OptimizationDescriptor* dop = FindKind(ds, OptKind::kDirectOp);
  for (const auto& [f, codec] : e.codecs) {
    if (codec == Codec::kDelta) {
      if (!Lists(delta, f)) return reject("delta-codes " + f + " without a delta descriptor");
      c.active.insert(OptKind::kDelta);
    } else if (codec == Codec::kDict) {
      if (!Lists(dop, f)) return reject("dictionary-codes " + f + " without a direct-op descriptor");
      if (!e.dictionaries.count(f)) return reject("no dictionary recorded for " + f);
      c.active.insert(OptKind::kDirectOp);
    }
  }
  // Selection and delta compression never combine.
  if (c.active.count(OptKind::kSelect) && c.active.count(OptKind::kDelta)) {
    return reject("combines selection with delta compression");
  }
  if (c.active.empty()) return reject("enables no optimization");
  return c;
}

auto Score(const Candidate& c) {
  auto has = [&](OptKind k) { return c.active.count(k) ? 1 : 0; };
  return std::make_tuple(has(OptKind::kSelect), has(OptKind::kProject), has(OptKind::kDirectOp),
                         has(OptKind::kDelta), static_cast<int>(c.active.size()));
}

bool Better(const Candidate& a, const Candidate& b) {
  if (Score(a) != Score(b)) return Score(a) > Score(b);
  if (a.entry->size_bytes != b.entry->size_bytes) return a.entry->size_bytes < b.entry->size_bytes;
  return a.entry->index_path < b.entry->index_path;  // deterministic
}

}  // namespace

ExecutionDescriptor Plan(const std::vector<OptimizationDescriptor>& descriptors,
                         const std::vector<storage::CatalogEntry>& catalog, const InputId& input,
                         const RecordLayout& schema, const PlanOptions& options) {
  ExecutionDescriptor out;
  out.input_path = input.path;
  const std::string want = Canonical(input.path);

  std::optional<Candidate> best;
  for (const auto& e : catalog) {
    if (Canonical(e.input_path) != want) continue;
    auto c = Evaluate(e, descriptors, schema, options, &out.notes);
    if (c && (!best || Better(*c, *best))) best = std::move(c);
  }

  if (!best) {
    std::vector<OptimizationDescriptor> usable;
    for (const auto& d : descriptors) {
      if (d.kind == OptKind::kSelect && !options.allow_select) continue;
      usable.push_back(d);
    }
    auto specs = detectors::SpecsFor(usable, schema);
    if (!specs.empty()) out.suggestion = specs.front();
    out.notes.push_back("no compatible index; scanning raw input");
    return out;
  }

  const storage::CatalogEntry& e = *best->entry;
  if (e.input_sha256 != input.sha256) {
    throw StaleIndexError("index " + e.index_path + " was built from a different version of " + input.path +
                          " (catalog " + e.input_sha256.substr(0, 12) + ", now " + input.sha256.substr(0, 12) + ")");
  }
  out.source = InputSource::kIndex;
  out.entry = e;
  out.ranges = std::move(best->ranges);
  out.active = best->active;
  if (out.Active(OptKind::kDirectOp)) {
    for (const auto& [f, codec] : e.codecs) {
      if (codec == Codec::kDict) out.dictionaries[f] = e.dictionaries.at(f);
    }
  }
  return out;
}

nlohmann::json ExecutionDescriptorToJson(const ExecutionDescriptor& d, const RecordLayout& schema) {
  using nlohmann::json;
  json j;
  j["inputSource"] = d.source == InputSource::kRaw ? "raw" : "index";
  j["inputPath"] = d.input_path;
  json active = json::array();
  for (OptKind k : {OptKind::kSelect, OptKind::kProject, OptKind::kDirectOp, OptKind::kDelta}) {
    if (d.Active(k)) active.push_back(std::string(detectors::OptKindName(k)));
  }
  j["activeOptimizations"] = active;
  j["directOpDictionaries"] = d.dictionaries;
  if (d.entry) {
    j["indexPath"] = d.entry->index_path;
    j["format"] = d.entry->format;
    j["indexField"] = d.entry->index_field ? json(*d.entry->index_field) : json(nullptr);
  }
  if (d.ranges) {
    const FieldType t = schema.TypeOf(d.entry && d.entry->index_field ? *d.entry->index_field : "key")
                            .value_or(FieldType::kBlob);
    json rs = json::array();
    for (const auto& r : *d.ranges) rs.push_back(RangeToString(r, t));
    j["ranges"] = rs;
  } else {
    j["ranges"] = nullptr;
  }
  j["suggestedSpec"] = d.suggestion ? detectors::SpecToJson(*d.suggestion) : json(nullptr);
  j["notes"] = d.notes;
  return j;
}

}  // namespace manimal::optimizer
