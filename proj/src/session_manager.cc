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

#include "balanced/session_manager.h"

#include <random>
#include <set>

#include <fmt/format.h>

#include "balanced/errors.h"

namespace balanced {
namespace {

std::string RandomSessionId() {
  static std::mutex mu;
  static std::mt19937_64 engine{std::random_device{}()};
  std::lock_guard lock(mu);
  return fmt::format("s-{:016x}", engine());
}

std::uint64_t RandomSeed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) | rd();
}

}  // namespace

SessionManager::SessionManager(SessionConfig defaults,
                               std::shared_ptr<const TypePools> pools,
                               std::shared_ptr<EventSink> sink, IdGenerator ids)
    : defaults_(std::move(defaults)),
      pools_(std::move(pools)),
      sink_(std::move(sink)),
      ids_(ids ? std::move(ids) : IdGenerator(RandomSessionId)) {
  defaults_.Validate();
  if (!sink_) throw std::invalid_argument("session manager needs an event sink");
}

std::size_t SessionManager::Restore(const EventSource& source) {
  const std::vector<SessionEvent> log = source.ReadAll();
  std::set<std::string> ids;
  for (const SessionEvent& e : log) ids.insert(e.session_id);
  std::size_t restored = 0;
  for (const std::string& id : ids) {
    auto entry = std::make_shared<Entry>();
    entry->state = Replay(log, id, pools_);
    for (const SessionEvent& e : log) {
      if (e.session_id == id) ++entry->next_seq;
    }
    std::unique_lock lock(mu_);
    sessions_[id] = std::move(entry);
    ++restored;
  }
  return restored;
}

SessionState SessionManager::Create(std::optional<std::uint64_t> seed,
                                    std::optional<double> lower_liberal,
                                    std::optional<double> upper_liberal) {
  SessionConfig config = defaults_;
  if (lower_liberal) config.lower_liberal = *lower_liberal;
  if (upper_liberal) config.upper_liberal = *upper_liberal;
  const std::uint64_t chosen_seed = seed ? *seed : RandomSeed();

  auto entry = std::make_shared<Entry>();
  std::string id;
  do {
    id = ids_();
  } while (Find(id) != nullptr);
  entry->state = CreateSession(config, chosen_seed, id, pools_);

  const Timestamp now = NowMillis();
  const SessionEvent events[] = {
      {0, id, 0, now, CreatedPayload{config, chosen_seed}},
      {1, id, 0, now, ServedPages(entry->state)},
  };
  sink_->Append(events);
  entry->next_seq = 2;

  std::unique_lock lock(mu_);
  sessions_[id] = entry;
  return entry->state;
}

std::shared_ptr<SessionManager::Entry> SessionManager::Find(std::string_view id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(std::string(id));
  return it == sessions_.end() ? nullptr : it->second;
}

SessionState SessionManager::Get(std::string_view id) const {
  auto entry = Find(id);
  if (!entry) throw UnknownSessionError(fmt::format("unknown session {}", id));
  std::lock_guard lock(entry->mu);
  return entry->state;
}

std::vector<HistoryPoint> SessionManager::History(std::string_view id) const {
  auto entry = Find(id);
  if (!entry) throw UnknownSessionError(fmt::format("unknown session {}", id));
  std::lock_guard lock(entry->mu);
  return entry->state.history;
}

SessionState SessionManager::Mutate(
    std::string_view id, const EventPayload& mutation,
    const std::function<SessionState(const SessionState&)>& step) {
  auto entry = Find(id);
  if (!entry) throw UnknownSessionError(fmt::format("unknown session {}", id));
  std::lock_guard lock(entry->mu);
  SessionState next = step(entry->state);
  const Timestamp now = NowMillis();
  const std::string sid(id);
  const SessionEvent events[] = {
      {entry->next_seq, sid, next.t(), now, mutation},
      {entry->next_seq + 1, sid, next.t(), now, ServedPages(next)},
  };
  sink_->Append(events);
  entry->next_seq += 2;
  entry->state = std::move(next);
  return entry->state;
}

SessionState SessionManager::Click(std::string_view id, Feed feed,
                                   std::string_view article_id) {
  return Mutate(id, ClickPayload{feed, std::string(article_id)},
                [&](const SessionState& s) { return ApplyClick(s, feed, article_id); });
}

SessionState SessionManager::ChangeConstraints(std::string_view id, double lower_liberal,
                                               double upper_liberal) {
  return Mutate(id, ConstraintChangePayload{lower_liberal, upper_liberal},
                [&](const SessionState& s) {
                  return ApplyConstraintChange(s, lower_liberal, upper_liberal);
                });
}

SessionState SessionManager::Advance(std::string_view id) {
  return Mutate(id, NoClickAdvancePayload{},
                [](const SessionState& s) { return AdvanceWithoutClick(s); });
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

}  // namespace balanced
