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

#include "balanced/ingestion.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <fmt/format.h>

#include "balanced/errors.h"
#include "json.hpp"

namespace balanced {
namespace {

using nlohmann::json;

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool RequiredString(const json& obj, const char* key, std::string& out,
                    std::string* error) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string() || it->get_ref<const std::string&>().empty()) {
    if (error) *error = fmt::format("missing or empty field '{}'", key);
    return false;
  }
  out = it->get<std::string>();
  return true;
}

}  // namespace

std::optional<CorpusRecord> ParseCorpusLine(std::string_view line,
                                            std::string* error) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) {
    if (error) *error = "not a JSON object";
    return std::nullopt;
  }
  CorpusRecord record;
  std::string published;
  if (!RequiredString(obj, "id", record.id, error) ||
      !RequiredString(obj, "title", record.title, error) ||
      !RequiredString(obj, "url", record.url, error) ||
      !RequiredString(obj, "source_domain", record.source_domain, error) ||
      !RequiredString(obj, "published_at", published, error)) {
    return std::nullopt;
  }
  auto ts = ParseRfc3339(published);
  if (!ts) {
    if (error) *error = "published_at is not an RFC 3339 timestamp";
    return std::nullopt;
  }
  record.published_at = *ts;
  if (auto it = obj.find("rating"); it != obj.end() && !it->is_null()) {
    if (!it->is_number() || !(it->get<double>() >= 0.0)) {
      if (error) *error = "rating must be a non-negative number";
      return std::nullopt;
    }
    record.rating = it->get<double>();
  }
  return record;
}

CorpusLoadResult LoadCorpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read corpus file " + path.string());
  CorpusLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    ++result.lines_read;
    std::string error;
    auto record = ParseCorpusLine(line, &error);
    if (record && !ids.insert(record->id).second) {
      error = fmt::format("duplicate id '{}'", record->id);
      record.reset();
    }
    if (record) {
      result.records.push_back(std::move(*record));
    } else {
      ++result.malformed;
      result.warnings.push_back(
          fmt::format("{}:{}: skipping malformed record: {}", path.string(), line_no, error));
    }
  }
  if (in.bad()) throw IoError("error reading corpus file " + path.string());
  return result;
}

std::string NormalizeDomain(std::string_view domain) {
  std::string d = Lower(Trim(domain));
  if (auto scheme = d.find("://"); scheme != std::string::npos) d.erase(0, scheme + 3);
  if (auto slash = d.find('/'); slash != std::string::npos) d.erase(slash);
  if (auto colon = d.find(':'); colon != std::string::npos) d.erase(colon);
  if (d.starts_with("www.")) d.erase(0, 4);
  return d;
}

void BiasMapping::Add(std::string_view domain, std::string_view type_name) {
  auto type = types_.Find(type_name);
  if (!type) {
    throw ConfigError(fmt::format("bias mapping names unknown type '{}'", type_name));
  }
  std::string key = NormalizeDomain(domain);
  if (key.empty()) throw ConfigError("bias mapping has an empty domain");
  if (!entries_.emplace(key, *type).second) {
    throw ConfigError(fmt::format("bias mapping lists domain '{}' twice", key));
  }
}

std::optional<std::size_t> BiasMapping::Lookup(std::string_view domain) const {
  auto it = entries_.find(NormalizeDomain(domain));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

BiasMapping ParseBiasMapping(std::string_view text, TypeSet types) {
  BiasMapping mapping(std::move(types));
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::string_view body = Trim(line.substr(1));
      if (body.starts_with("version:")) {
        std::string_view v = Trim(body.substr(8));
        if (v != std::to_string(kBiasMappingVersion)) {
          throw ConfigError(fmt::format("unsupported bias mapping version '{}'", v));
        }
      }
      continue;
    }
    auto comma = line.find(',');
    if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
      throw ConfigError(fmt::format("bias mapping line {}: expected two columns", line_no));
    }
    std::string_view domain = Trim(line.substr(0, comma));
    std::string_view type_name = Trim(line.substr(comma + 1));
    if (!header_seen) {
      if (domain != "source_domain" || type_name != "type_name") {
        throw ConfigError("bias mapping must start with header 'source_domain,type_name'");
      }
      header_seen = true;
      continue;
    }
    mapping.Add(domain, type_name);
  }
  if (!header_seen) throw ConfigError("bias mapping is missing its header row");
  return mapping;
}

BiasMapping LoadBiasMapping(const std::filesystem::path& path, TypeSet types) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read bias mapping " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseBiasMapping(buffer.str(), std::move(types));
}

std::optional<Article> Classify(const CorpusRecord& record,
                                const BiasMapping& mapping) {
  auto type = mapping.Lookup(record.source_domain);
  if (!type) return std::nullopt;
  Article article;
  article.id = record.id;
  article.title = record.title;
  article.url = record.url;
  article.source_domain = NormalizeDomain(record.source_domain);
  article.type = *type;
  article.rating = record.rating.value_or(0.0);
  article.published_at = record.published_at;
  return article;
}

TypePools BuildPools(const std::vector<Article>& articles, std::size_t num_types) {
  TypePools pools(num_types);
  for (const Article& a : articles) pools.at(a.type).push_back(a);
  for (auto& pool : pools) {
    std::sort(pool.begin(), pool.end(), [](const Article& a, const Article& b) {
      if (a.rating != b.rating) return a.rating > b.rating;
      if (a.published_at != b.published_at) return a.published_at > b.published_at;
      return a.id < b.id;
    });
  }
  return pools;
}

std::string IngestionSummary::ToLine() const {
  return fmt::format("loaded={} classified={} skipped_unmapped={} skipped_malformed={}",
                     loaded, classified, skipped_unmapped, skipped_malformed);
}

std::optional<IngestionSummary> IngestionSummary::FromLine(std::string_view line) {
  IngestionSummary s;
  std::istringstream in{std::string(line)};
  std::string token;
  int found = 0;
  while (in >> token) {
    auto eq = token.find('=');
    if (eq == std::string::npos) return std::nullopt;
    std::string key = token.substr(0, eq);
    std::size_t value;
    try {
      std::size_t used = 0;
      value = std::stoul(token.substr(eq + 1), &used);
      if (used != token.size() - eq - 1) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (key == "loaded") s.loaded = value;
    else if (key == "classified") s.classified = value;
    else if (key == "skipped_unmapped") s.skipped_unmapped = value;
    else if (key == "skipped_malformed") s.skipped_malformed = value;
    else return std::nullopt;
    ++found;
  }
  if (found != 4) return std::nullopt;
  return s;
}

IngestionResult Ingest(const std::vector<CorpusRecord>& records,
                       const BiasMapping& mapping) {
  IngestionResult result;
  std::vector<Article> articles;
  for (const CorpusRecord& record : records) {
    ++result.summary.loaded;
    if (auto article = Classify(record, mapping)) {
      articles.push_back(std::move(*article));
      ++result.summary.classified;
    } else {
      ++result.summary.skipped_unmapped;
      ++result.unmapped_domains[NormalizeDomain(record.source_domain)];
    }
  }
  for (const auto& [domain, count] : result.unmapped_domains) {
    result.warnings.push_back(
        fmt::format("unmapped source domain '{}' ({} record{})", domain, count,
                    count == 1 ? "" : "s"));
  }
  result.pools = BuildPools(articles, mapping.types().size());
  return result;
}

IngestionResult IngestFile(const std::filesystem::path& corpus_path,
                           const BiasMapping& mapping) {
  CorpusLoadResult loaded = LoadCorpus(corpus_path);
  IngestionResult result = Ingest(loaded.records, mapping);
  result.summary.loaded += loaded.malformed;
  result.summary.skipped_malformed = loaded.malformed;
  result.warnings.insert(result.warnings.begin(), loaded.warnings.begin(),
                         loaded.warnings.end());
  return result;
}

std::vector<CorpusRecord> StubSource::Search(std::string_view query) {
  const std::string needle = Lower(query);
  std::vector<CorpusRecord> out;
  for (const CorpusRecord& record : records_) {
    if (Lower(record.title).find(needle) != std::string::npos) out.push_back(record);
  }
  return out;
}

std::vector<CorpusRecord> FetchLive(std::string_view query, LiveSource* source) {
  if (source == nullptr) throw ConfigError("no live source configured");
  return source->Search(query);
}

}  // namespace balanced
