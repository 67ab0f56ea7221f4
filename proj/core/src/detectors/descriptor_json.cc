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

#include "manimal/detectors/descriptor_json.h"

namespace manimal::detectors {

using nlohmann::json;

namespace {

std::vector<std::string> Strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  for (const auto& s : j.at(key)) out.push_back(s.get<std::string>());
  return out;
}

}  // namespace

json DnfToJson(const Dnf& dnf) {
  json out = json::array();
  for (const auto& conj : dnf.disjuncts) {
    json c = json::array();
    for (const auto& a : conj) c.push_back(AtomText(a));
    out.push_back(std::move(c));
  }
  return out;
}

Dnf DnfFromJson(const json& j) {
  Dnf dnf;
  for (const auto& c : j) {
    Conjunction conj;
    for (const auto& a : c) conj.push_back(AtomFromText(a.get<std::string>()));
    dnf.disjuncts.push_back(std::move(conj));
  }
  return dnf;
}

json DescriptorToJson(const OptimizationDescriptor& d) {
  json out;
  out["kind"] = std::string(OptKindName(d.kind));
  switch (d.kind) {
    case OptKind::kSelect:
      out["dnf"] = DnfToJson(d.dnf);
      out["candidates"] = d.candidates;
      break;
    case OptKind::kProject: out["dropped"] = d.fields; break;
    case OptKind::kDelta:
    case OptKind::kDirectOp: out["fields"] = d.fields; break;
  }
  return out;
}

OptimizationDescriptor DescriptorFromJson(const json& j) {
  try {
    OptimizationDescriptor d;
    const auto kind = OptKindFromName(j.at("kind").get<std::string>());
    if (!kind) throw SpecError("unknown descriptor kind " + j.at("kind").dump());
    d.kind = *kind;
    switch (d.kind) {
      case OptKind::kSelect:
        d.dnf = DnfFromJson(j.at("dnf"));
        d.candidates = Strings(j, "candidates");
        break;
      case OptKind::kProject: d.fields = Strings(j, "dropped"); break;
      case OptKind::kDelta:
      case OptKind::kDirectOp: d.fields = Strings(j, "fields"); break;
    }
    return d;
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed descriptor: ") + e.what());
  } catch (const ParseError& e) {
    throw SpecError(std::string("malformed select atom: ") + e.what());
  }
}

json SpecToJson(const IndexGenSpec& s) {
  json out;
  out["name"] = s.name;
  out["format"] = s.format == IndexFormat::kBTree ? "btree" : "colgroup";
  out["indexField"] = s.index_field ? json(*s.index_field) : json(nullptr);
  out["retainedFields"] = s.retained_fields;
  json codecs = json::object();
  for (const auto& [f, c] : s.codecs) codecs[f] = std::string(CodecName(c));
  out["codecs"] = std::move(codecs);
  return out;
}

IndexGenSpec SpecFromJson(const json& j) {
  try {
    IndexGenSpec s;
    s.name = j.value("name", std::string("custom"));
    const std::string fmt = j.at("format").get<std::string>();
    if (fmt == "btree") {
      s.format = IndexFormat::kBTree;
    } else if (fmt == "colgroup") {
      s.format = IndexFormat::kColumnGroup;
    } else {
      throw SpecError("unknown index format '" + fmt + "'");
    }
    if (j.contains("indexField") && !j.at("indexField").is_null()) s.index_field = j.at("indexField").get<std::string>();
    s.retained_fields = Strings(j, "retainedFields");
    if (j.contains("codecs")) {
      for (const auto& [f, c] : j.at("codecs").items()) {
        auto codec = CodecFromName(c.get<std::string>());
        if (!codec) throw SpecError("unknown codec " + c.dump());
        s.codecs[f] = *codec;
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw SpecError(std::string("malformed index spec: ") + e.what());
  }
}

json AnalysisToJson(const AnalysisResult& r, const lang::TypedJob& job) {
  json out;
  out["job"] = job.spec.name;
  out["schema"] = job.spec.input_schema.name;
  out["safe"] = r.safe;
  out["notes"] = r.notes;
  json ds = json::array();
  for (const auto& d : r.descriptors) ds.push_back(DescriptorToJson(d));
  out["descriptors"] = std::move(ds);
  json specs = json::array();
  for (const auto& s : r.specs) specs.push_back(SpecToJson(s));
  out["indexSpecs"] = std::move(specs);
  return out;
}

std::vector<OptimizationDescriptor> DescriptorsFromDocument(const json& j) {
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("descriptors")) throw SpecError("descriptor document has no \"descriptors\" array");
    list = &j.at("descriptors");
  }
  if (!list->is_array()) throw SpecError("descriptors must be an array");
  std::vector<OptimizationDescriptor> out;
  for (const auto& d : *list) out.push_back(DescriptorFromJson(d));
  return out;
}

}  // namespace manimal::detectors
