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

#include "manimal/workload/generators.h"

#include <array>
#include <cstdio>

#include "manimal/common/error.h"
#include "manimal/storage/record_file.h"
#include "manimal/workload/zipf.h"

namespace manimal::workload {

namespace {

constexpr std::array<std::string_view, 8> kAgents = {
    "Mozilla/5.0 (X11; Linux x86_64)", "Mozilla/5.0 (Windows NT 10.0)", "Opera/9.80 (Macintosh)",
    "curl/7.68.0",                     "Wget/1.20.3",                   "Lynx/2.8.9rel.1",
    "Mozilla/4.0 (compatible)",        "Googlebot/2.1",
};
constexpr std::array<std::string_view, 10> kCountries = {"USA", "GBR", "DEU", "FRA", "CHN",
                                                         "IND", "BRA", "JPN", "CAN", "AUS"};
constexpr std::array<std::string_view, 6> kLanguages = {"en-US", "en-GB", "de-DE", "fr-FR", "zh-CN", "pt-BR"};

std::string Letters(Rng& rng, size_t n) {
  std::string s(n, 'a');
  for (char& c : s) c = static_cast<char>('a' + rng.Range(0, 25));
  return s;
}

std::string Word(Rng& rng) { return Letters(rng, static_cast<size_t>(rng.Range(3, 9))); }

// Vocabulary shared by content and documents, so equality filters hit.
std::vector<std::string> Vocabulary(uint64_t seed, size_t n) {
  Rng rng(seed ^ 0x5eedULL);
  std::vector<std::string> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) out.push_back(Word(rng));
  return out;
}

std::string Text(Rng& rng, const std::vector<std::string>& vocab, const Zipf& z, size_t bytes) {
  std::string s;
  s.reserve(bytes + 16);
  while (s.size() < bytes) {
    if (!s.empty()) s.push_back(' ');
    s += vocab[z.Sample(rng)];
  }
  s.resize(bytes);
  return s;
}

template <typename Gen, typename Spec>
void WriteWith(Gen gen, const Spec& spec, const RecordLayout& layout, const std::filesystem::path& path) {
  storage::RecordFileWriter w(path, layout);
  gen(spec, [&](Record&& r) { w.Append(r); });
  w.Finish();
}

}  // namespace

RecordLayout WebPagesLayout() {
  return {"WebPages", FieldType::kStr,
          {{"url", FieldType::kStr}, {"rank", FieldType::kI32}, {"content", FieldType::kStr}}};
}

RecordLayout UserVisitsLayout() {
  return {"UserVisits",
          FieldType::kI64,
          {{"sourceIP", FieldType::kStr},
           {"destURL", FieldType::kStr},
           {"visitDate", FieldType::kI32},
           {"adRevenue", FieldType::kI32},
           {"userAgent", FieldType::kStr},
           {"countryCode", FieldType::kStr},
           {"languageCode", FieldType::kStr},
           {"searchWord", FieldType::kStr},
           {"duration", FieldType::kI32}}};
}

RecordLayout TuplesLayout() { return {"Tuples", FieldType::kI32, {{"tuple", FieldType::kBlob}}}; }

RecordLayout DocumentsLayout() { return {"Documents", FieldType::kStr, {{"content", FieldType::kStr}}}; }

void GenWebPages(const WebPagesSpec& spec, const RecordSink& sink) {
  Rng rng(spec.seed);
  const auto vocab = Vocabulary(spec.seed, 2000);
  const Zipf words(vocab.size());
  const std::string prefix = "http://www.example.com/";
  for (uint64_t i = 0; i < spec.n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "p%09llu", static_cast<unsigned long long>(i));
    // Unique: the page number is embedded, random letters pad to length.
    std::string url = prefix + std::to_string(i) + "/";
    if (url.size() < spec.url_length) url += Letters(rng, spec.url_length - url.size());
    const int64_t rank = rng.Range(spec.rank_min, spec.rank_max);
    const int64_t jitter = static_cast<int64_t>(spec.content_size) / 10;
    const int64_t size = std::max<int64_t>(0, static_cast<int64_t>(spec.content_size) + rng.Range(-jitter, jitter));
    std::string content = Text(rng, vocab, words, static_cast<size_t>(size));
    sink(Record{std::string(id), {std::move(url), rank, std::move(content)}});
  }
}

void GenUserVisits(const UserVisitsSpec& spec, const RecordSink& sink) {
  if (spec.n == 0) return;
  if (spec.url_pool.empty()) throw EmptyPoolError("user visits need a non-empty URL pool");
  Rng rng(spec.seed);
  const Zipf urls(spec.url_pool.size(), spec.theta);
  const uint64_t ips = std::max<uint64_t>(1, spec.n / 8);
  const Zipf ip_draw(ips, spec.theta);
  std::vector<std::string> ip_pool;
  ip_pool.reserve(ips);
  for (uint64_t i = 0; i < ips; ++i) {
    ip_pool.push_back(std::to_string(rng.Range(1, 223)) + "." + std::to_string(rng.Range(0, 255)) + "." +
                      std::to_string(rng.Range(0, 255)) + "." + std::to_string(rng.Range(1, 254)));
  }
  const auto vocab = Vocabulary(spec.seed, 1000);
  const Zipf words(vocab.size(), spec.theta);
  int64_t date = 14000;  // epoch days, 2008-05-01
  for (uint64_t i = 0; i < spec.n; ++i) {
    if (rng.Range(0, 99) < 3) ++date;
    Record r;
    r.key = static_cast<int64_t>(i);
    r.values = {ip_pool[ip_draw.Sample(rng)],
                spec.url_pool[urls.Sample(rng)],
                date,
                rng.Range(1, 1000),
                std::string(kAgents[static_cast<size_t>(rng.Range(0, kAgents.size() - 1))]),
                std::string(kCountries[static_cast<size_t>(rng.Range(0, kCountries.size() - 1))]),
                std::string(kLanguages[static_cast<size_t>(rng.Range(0, kLanguages.size() - 1))]),
                vocab[words.Sample(rng)],
                rng.Range(1, 100)};
    sink(std::move(r));
  }
}

void GenTuples(const TuplesSpec& spec, const RecordSink& sink) {
  Rng rng(spec.seed);
  for (uint64_t i = 0; i < spec.n; ++i) {
    const int64_t key = rng.Range(0, spec.key_max - 1);
    std::string tuple(spec.tuple_size, '\0');
    for (char& c : tuple) c = static_cast<char>(rng.Next() & 0xff);
    sink(Record{key, {std::move(tuple)}});
  }
}

void GenDocuments(const DocumentsSpec& spec, const RecordSink& sink) {
  Rng rng(spec.seed);
  const auto vocab = Vocabulary(spec.seed, 500);
  const Zipf words(vocab.size());
  for (uint64_t i = 0; i < spec.n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "d%09llu", static_cast<unsigned long long>(i));
    std::string text;
    for (uint32_t w = 0; w < spec.words; ++w) {
      if (w) text.push_back(' ');
      text += vocab[words.Sample(rng)];
    }
    sink(Record{std::string(id), {std::move(text)}});
  }
}

void WriteWebPages(const WebPagesSpec& spec, const std::filesystem::path& path) {
  WriteWith(GenWebPages, spec, WebPagesLayout(), path);
}
void WriteUserVisits(const UserVisitsSpec& spec, const std::filesystem::path& path) {
  WriteWith(GenUserVisits, spec, UserVisitsLayout(), path);
}
void WriteTuples(const TuplesSpec& spec, const std::filesystem::path& path) {
  WriteWith(GenTuples, spec, TuplesLayout(), path);
}
void WriteDocuments(const DocumentsSpec& spec, const std::filesystem::path& path) {
  WriteWith(GenDocuments, spec, DocumentsLayout(), path);
}

std::vector<std::string> LoadUrlPool(const std::filesystem::path& webpages) {
  storage::RecordFileReader r(webpages);
  const auto idx = r.layout().FieldIndex("url");
  if (!idx || *idx < 0) throw IoError(webpages.string() + " has no url field");
  std::vector<std::string> out;
  Record rec;
  while (r.Next(rec)) out.push_back(std::get<std::string>(rec.values[static_cast<size_t>(*idx)]));
  return out;
}

}  // namespace manimal::workload
