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

#ifndef BALANCED_EVENT_LOG_H_
#define BALANCED_EVENT_LOG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "balanced/session.h"
#include "balanced/timestamp.h"

namespace balanced {

struct CreatedPayload {
  SessionConfig config;
  std::uint64_t seed = 0;
  bool operator==(const CreatedPayload&) const = default;
};

// Ids of the pages in force after the preceding mutation. Replay checks its
// recomposed pages against these.
struct PageServedPayload {
  std::vector<std::string> unfiltered;
  std::vector<std::string> balanced;
  bool operator==(const PageServedPayload&) const = default;
};

struct ClickPayload {
  Feed feed = Feed::kBalanced;
  std::string article_id;
  bool operator==(const ClickPayload&) const = default;
};

struct ConstraintChangePayload {
  double lower_liberal = 0.0;
  double upper_liberal = 1.0;
  bool operator==(const ConstraintChangePayload&) const = default;
};

struct NoClickAdvancePayload {
  bool operator==(const NoClickAdvancePayload&) const = default;
};

using EventPayload = std::variant<CreatedPayload, PageServedPayload, ClickPayload,
                                  ConstraintChangePayload, NoClickAdvancePayload>;

struct SessionEvent {
  std::uint64_t seq = 0;  // per session, from 0
  std::string session_id;
  std::uint64_t t = 0;  // learner iteration after the event
  Timestamp wall_time{};
  EventPayload payload;

  // "created", "page_served", "click", "constraint_change" or
  // "no_click_advance".
  std::string_view kind() const;
  bool operator==(const SessionEvent&) const = default;
};

// One JSON object per line, no trailing newline.
std::string EncodeEvent(const SessionEvent& event);
// Throws CorruptLogError.
SessionEvent DecodeEvent(std::string_view line);

// Durable destination for session events.
class EventSink {
 public:
  virtual ~EventSink() = default;
  // Appends every event or none of them. Throws PersistError on failure.
  virtual void Append(std::span<const SessionEvent> events) = 0;
};

class EventSource {
 public:
  virtual ~EventSource() = default;
  // Every record in append order. Throws CorruptLogError or IoError.
  virtual std::vector<SessionEvent> ReadAll() const = 0;
};

// Append-only line-delimited log file. A failed append is truncated back so
// the file never holds a partial batch.
class FileEventLog : public EventSink, public EventSource {
 public:
  explicit FileEventLog(std::filesystem::path path, bool fsync_on_append = true);

  void Append(std::span<const SessionEvent> events) override;
  std::vector<SessionEvent> ReadAll() const override;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  bool fsync_on_append_;
  mutable std::mutex mu_;
};

// In-memory log. With a capacity, appends that would exceed it fail.
class MemoryEventLog : public EventSink, public EventSource {
 public:
  MemoryEventLog() = default;
  explicit MemoryEventLog(std::size_t capacity) : capacity_(capacity) {}

  void Append(std::span<const SessionEvent> events) override;
  std::vector<SessionEvent> ReadAll() const override;

  std::size_t size() const;
  // Every later append fails while set.
  void set_failing(bool failing);

 private:
  mutable std::mutex mu_;
  std::vector<SessionEvent> events_;
  std::optional<std::size_t> capacity_;
  bool failing_ = false;
};

// Rebuilds a session by re-applying its events in order, stopping after
// max_events records when given. Throws UnknownSessionError when the log
// holds nothing for session_id, and CorruptLogError naming the first bad
// sequence number for gaps, a missing `created` record, events that no
// longer apply, or served pages that differ from the recomposed ones.
SessionState Replay(std::span<const SessionEvent> log, std::string_view session_id,
                    std::shared_ptr<const TypePools> pools,
                    std::optional<std::size_t> max_events = std::nullopt);
SessionState Replay(const EventSource& source, std::string_view session_id,
                    std::shared_ptr<const TypePools> pools,
                    std::optional<std::size_t> max_events = std::nullopt);

// The page_served record describing the state's current pages.
PageServedPayload ServedPages(const SessionState& state);

}  // namespace balanced

#endif  // BALANCED_EVENT_LOG_H_
