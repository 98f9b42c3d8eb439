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

#ifndef BALANCED_SESSION_MANAGER_H_
#define BALANCED_SESSION_MANAGER_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "balanced/event_log.h"
#include "balanced/session.h"

namespace balanced {

// Live sessions backed by an event log. Every mutation is computed on a
// copy, appended to the sink, and only then made visible; a failed append
// leaves the session as it was. Mutations of one session are serialized,
// distinct sessions proceed in parallel, and reads return a snapshot.
class SessionManager {
 public:
  using IdGenerator = std::function<std::string()>;

  SessionManager(SessionConfig defaults, std::shared_ptr<const TypePools> pools,
                 std::shared_ptr<EventSink> sink, IdGenerator ids = nullptr);

  // Replays every session recorded in the source. Returns the number of
  // sessions restored.
  std::size_t Restore(const EventSource& source);

  // Seed defaults to a random one; constraint overrides default to the
  // configured bounds.
  SessionState Create(std::optional<std::uint64_t> seed = std::nullopt,
                      std::optional<double> lower_liberal = std::nullopt,
                      std::optional<double> upper_liberal = std::nullopt);

  // All of these throw UnknownSessionError for unknown ids.
  SessionState Get(std::string_view id) const;
  std::vector<HistoryPoint> History(std::string_view id) const;
  SessionState Click(std::string_view id, Feed feed, std::string_view article_id);
  SessionState ChangeConstraints(std::string_view id, double lower_liberal,
                                 double upper_liberal);
  SessionState Advance(std::string_view id);

  const SessionConfig& defaults() const { return defaults_; }
  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mu;
    SessionState state;
    std::uint64_t next_seq = 0;
  };

  std::shared_ptr<Entry> Find(std::string_view id) const;
  // Runs `step` on a copy of the session, persists the mutation event and
  // the page_served record that follows it, then publishes the new state.
  SessionState Mutate(std::string_view id, const EventPayload& mutation,
                      const std::function<SessionState(const SessionState&)>& step);

  SessionConfig defaults_;
  std::shared_ptr<const TypePools> pools_;
  std::shared_ptr<EventSink> sink_;
  IdGenerator ids_;

  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

}  // namespace balanced

#endif  // BALANCED_SESSION_MANAGER_H_
