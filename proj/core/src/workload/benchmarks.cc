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

#include "manimal/workload/benchmarks.h"

#include "manimal/workload/generators.h"

namespace manimal::workload {

using P = Presence;

std::string_view DetectionName(Detection d) {
  switch (d) {
    case Detection::kDetected: return "Detected";
    case Detection::kUndetected: return "Undetected";
    case Detection::kNotPresent: return "Not Present";
    case Detection::kFalsePositive: return "FALSE POSITIVE";
  }
  return "?";
}

Detection Classify(Presence truth, bool detected) {
  if (truth == P::kPresent) return detected ? Detection::kDetected : Detection::kUndetected;
  return detected ? Detection::kFalsePositive : Detection::kNotPresent;
}

std::string SchemaDecl(const RecordLayout& layout) {
  std::string s = "schema " + layout.name + " key " + std::string(FieldTypeName(layout.key_type)) + " {\n";
  for (const auto& f : layout.fields) s += "  " + f.name + ": " + std::string(FieldTypeName(f.type)) + ";\n";
  return s + "}\n";
}

namespace {

const char* kEmitAll = R"(  reduce(k, vs) {
    let i = 0;
    while (i < count(vs)) {
      emit(k, at(vs, i));
      i = i + 1;
    }
  }
)";

}  // namespace

std::vector<BenchmarkModel> BenchmarkModels(const BenchmarkParams& params) {
  std::vector<BenchmarkModel> out;

  // The record value is an opaque blob, so nothing below the key is
  // visible: projection and delta opportunities exist but stay hidden.
  out.push_back({"B1", "selection over opaque tuples", Dataset::kTuples,
                 SchemaDecl(TuplesLayout()) + "job Benchmark1 on Tuples {\n  map(k, v) {\n    if (k > " +
                     std::to_string(params.b1_threshold) + ") emit(k, v.tuple);\n  }\n" + kEmitAll + "}\n",
                 {P::kPresent, P::kPresent, P::kPresent}});

  out.push_back({"B2", "sum adRevenue by sourceIP", Dataset::kUserVisits,
                 SchemaDecl(UserVisitsLayout()) + R"(job Benchmark2 on UserVisits sorted {
  map(k, v) {
    emit(v.sourceIP, v.adRevenue);
  }
  reduce(k, vs) {
    emit(k, sum(vs));
  }
}
)",
                 {P::kNotPresent, P::kPresent, P::kPresent}});

  out.push_back({"B3", "visitDate window tagged for a join", Dataset::kUserVisits,
                 SchemaDecl(UserVisitsLayout()) + "job Benchmark3 on UserVisits sorted {\n  map(k, v) {\n" +
                     "    if (v.visitDate >= " + std::to_string(params.b3_date_lo) + " && v.visitDate <= " +
                     std::to_string(params.b3_date_hi) + ") {\n" + R"(      let row = "UV|" ++ to_str(k) ++ "|" ++ v.destURL ++ "|" ++ to_str(v.visitDate);
      row = row ++ "|" ++ to_str(v.adRevenue) ++ "|" ++ v.userAgent ++ "|" ++ v.countryCode;
      row = row ++ "|" ++ v.languageCode ++ "|" ++ v.searchWord ++ "|" ++ to_str(v.duration);
      emit(v.sourceIP, row);
    }
  }
)" + kEmitAll + "}\n",
                 {P::kPresent, P::kNotPresent, P::kPresent}});

  out.push_back({"B4", "text scan filtered through a member table", Dataset::kDocuments,
                 SchemaDecl(DocumentsLayout()) + R"(job Benchmark4 on Documents sorted {
  members {
    wanted: table;
  }
  map(k, v) {
    table_put(wanted, "a", 1);
    table_put(wanted, "e", 1);
    let w = substr(v.content, 0, 1);
    if (table_get(wanted, w) == 1) emit(substr(v.content, 0, 4), 1);
  }
  reduce(k, vs) {
    emit(k, count(vs));
  }
}
)",
                 {P::kPresent, P::kNotPresent, P::kNotPresent}});
  return out;
}

std::string CounterJobSource() {
  return SchemaDecl(WebPagesLayout()) + R"(job Counter on WebPages {
  members {
    numMapsRun: i64 = 0;
  }
  map(k, v) {
    numMapsRun = numMapsRun + 1;
    if (v.rank > 1 || numMapsRun > 200) emit(k, 1);
  }
  reduce(k, vs) {
    emit(k, count(vs));
  }
}
)";
}

std::string TableFilterJobSource() {
  return SchemaDecl(WebPagesLayout()) + R"(job TableFilter on WebPages {
  members {
    cutoff: table;
  }
  map(k, v) {
    if (v.rank > table_get(cutoff, "rank")) emit(v.url, v.rank);
  }
  reduce(k, vs) {
    emit(k, sum(vs));
  }
}
)";
}

std::string RankSelectJobSource(int64_t threshold, bool with_log) {
  return SchemaDecl(WebPagesLayout()) + "job RankSelect on WebPages sorted {\n  map(k, v) {\n    if (v.rank > " +
         std::to_string(threshold) + ") {\n" + (with_log ? "      log(k);\n" : "") +
         "      emit(v.url, v.rank);\n    }\n  }\n  reduce(k, vs) {\n    emit(k, sum(vs));\n  }\n}\n";
}

std::string ProjectJobSource() {
  return SchemaDecl(WebPagesLayout()) + R"(job UrlRank on WebPages sorted {
  map(k, v) {
    emit(v.url, v.rank);
  }
  reduce(k, vs) {
    emit(k, sum(vs));
  }
}
)";
}

std::string DurationByUrlJobSource() {
  return SchemaDecl(UserVisitsLayout()) + R"(job DurationByUrl on UserVisits {
  map(k, v) {
    emit(v.destURL, v.duration);
  }
  reduce(k, vs) {
    emit(k, sum(vs));
  }
}
)";
}

}  // namespace manimal::workload
