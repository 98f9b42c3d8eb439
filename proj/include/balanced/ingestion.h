// Copyright 2026 The Authors.
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

#ifndef BALANCED_INGESTION_H_
#define BALANCED_INGESTION_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "balanced/feed.h"
#include "balanced/timestamp.h"
#include "balanced/types.h"

namespace balanced {

// An article as it arrives from a source: no type yet, rating optional.
struct CorpusRecord {
  std::string id;
  std::string title;
  std::string url;
  std::string source_domain;
  std::optional<double> rating;
  Timestamp published_at{};

  bool operator==(const CorpusRecord&) const = default;
};

struct CorpusLoadResult {
  std::vector<CorpusRecord> records;
  std::size_t lines_read = 0;  // non-blank lines
  std::size_t malformed = 0;
  std::vector<std::string> warnings;
};

// Parses one corpus line (a JSON object). Returns an error message on
// failure.
std::optional<CorpusRecord> ParseCorpusLine(std::string_view line,
                                            std::string* error = nullptr);

// One JSON object per line; blank lines are ignored. Malformed lines are
// skipped and reported with their 1-based line number. Throws IoError when
// the file cannot be read.
CorpusLoadResult LoadCorpus(const std::filesystem::path& path);

// Lowercase, without scheme, path, port or a single leading "www.".
std::string NormalizeDomain(std::string_view domain);

// Snapshot of source-domain to content-type assignments.
class BiasMapping {
 public:
  explicit BiasMapping(TypeSet types) : types_(std::move(types)) {}

  // Throws ConfigError for unknown type names or duplicate domains.
  void Add(std::string_view domain, std::string_view type_name);
  std::optional<std::size_t> Lookup(std::string_view domain) const;

  const TypeSet& types() const { return types_; }
  std::size_t size() const { return entries_.size(); }

 private:
  TypeSet types_;
  std::map<std::string, std::size_t, std::less<>> entries_;
};

// Current version of the bias-mapping file format.
inline constexpr int kBiasMappingVersion = 1;

// CSV with a required "source_domain,type_name" header. Lines starting with
// '#' are comments; "# version: N" declares the format version. Throws
// IoError or ConfigError.
BiasMapping LoadBiasMapping(const std::filesystem::path& path, TypeSet types);
BiasMapping ParseBiasMapping(std::string_view text, TypeSet types);

// Assigns the mapped type. Unmapped domains yield nullopt.
std::optional<Article> Classify(const CorpusRecord& record,
                                const BiasMapping& mapping);

// One list per type, rating descending, then published_at descending, then
// id ascending.
TypePools BuildPools(const std::vector<Article>& articles, std::size_t num_types);

struct IngestionSummary {
  std::size_t loaded = 0;
  std::size_t classified = 0;
  std::size_t skipped_unmapped = 0;
  std::size_t skipped_malformed = 0;

  // "loaded=<n> classified=<n> skipped_unmapped=<n> skipped_malformed=<n>"
  std::string ToLine() const;
  static std::optional<IngestionSummary> FromLine(std::string_view line);
  bool operator==(const IngestionSummary&) const = default;
};

struct IngestionResult {
  TypePools pools;
  IngestionSummary summary;
  std::map<std::string, std::size_t> unmapped_domains;
  std::vector<std::string> warnings;
};

IngestionResult Ingest(const std::vector<CorpusRecord>& records,
                       const BiasMapping& mapping);
// Load, classify and pool a corpus file.
IngestionResult IngestFile(const std::filesystem::path& corpus_path,
                           const BiasMapping& mapping);

// A searchable article source, e.g. a news search API.
class LiveSource {
 public:
  virtual ~LiveSource() = default;
  // Throws TransportError on failure. An empty result is not an error.
  virtual std::vector<CorpusRecord> Search(std::string_view query) = 0;
};

// Deterministic source over an offline corpus: records whose title contains
// the query, case-insensitively, in corpus order.
class StubSource : public LiveSource {
 public:
  explicit StubSource(std::vector<CorpusRecord> records)
      : records_(std::move(records)) {}

  std::vector<CorpusRecord> Search(std::string_view query) override;

 private:
  std::vector<CorpusRecord> records_;
};

// Throws ConfigError when no source is configured.
std::vector<CorpusRecord> FetchLive(std::string_view query, LiveSource* source);

}  // namespace balanced

#endif  // BALANCED_INGESTION_H_
