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

#include "balanced/event_log.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>

#include <fmt/format.h>

#include "balanced/errors.h"
#include "config_json.h"
#include "json.hpp"

namespace balanced {
namespace {

using nlohmann::json;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

json PayloadToJson(const EventPayload& payload) {
  return std::visit(
      Overloaded{
          [](const CreatedPayload& p) -> json {
            return {{"config", internal::ConfigToJson(p.config)}, {"seed", p.seed}};
          },
          [](const PageServedPayload& p) -> json {
            return {{"unfiltered", p.unfiltered}, {"balanced", p.balanced}};
          },
          [](const ClickPayload& p) -> json {
            return {{"feed", FeedName(p.feed)}, {"article_id", p.article_id}};
          },
          [](const ConstraintChangePayload& p) -> json {
            return {{"lower_liberal", p.lower_liberal},
                    {"upper_liberal", p.upper_liberal}};
          },
          [](const NoClickAdvancePayload&) -> json { return json::object(); },
      },
      payload);
}

EventPayload PayloadFromJson(std::string_view kind, const json& p) {
  if (kind == "created") {
    return CreatedPayload{internal::ConfigFromJson(p.at("config")),
                          p.at("seed").get<std::uint64_t>()};
  }
  if (kind == "page_served") {
    return PageServedPayload{p.at("unfiltered").get<std::vector<std::string>>(),
                             p.at("balanced").get<std::vector<std::string>>()};
  }
  if (kind == "click") {
    auto feed = ParseFeed(p.at("feed").get<std::string>());
    if (!feed) throw std::invalid_argument("unknown feed");
    return ClickPayload{*feed, p.at("article_id").get<std::string>()};
  }
  if (kind == "constraint_change") {
    return ConstraintChangePayload{p.at("lower_liberal").get<double>(),
                                   p.at("upper_liberal").get<double>()};
  }
  if (kind == "no_click_advance") return NoClickAdvancePayload{};
  throw std::invalid_argument(fmt::format("unknown event kind '{}'", kind));
}

std::string ErrnoText() { return std::strerror(errno); }

}  // namespace

std::string_view SessionEvent::kind() const {
  static constexpr std::string_view kNames[] = {
      "created", "page_served", "click", "constraint_change", "no_click_advance"};
  return kNames[payload.index()];
}

std::string EncodeEvent(const SessionEvent& event) {
  json obj = {{"seq", event.seq},
              {"session_id", event.session_id},
              {"kind", event.kind()},
              {"t", event.t},
              {"wall_time", FormatRfc3339(event.wall_time)},
              {"payload", PayloadToJson(event.payload)}};
  return obj.dump();
}

SessionEvent DecodeEvent(std::string_view line) {
  json obj = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded() || !obj.is_object()) {
    throw CorruptLogError(std::nullopt, "event record is not a JSON object");
  }
  std::optional<std::uint64_t> seq;
  try {
    seq = obj.at("seq").get<std::uint64_t>();
    SessionEvent event;
    event.seq = *seq;
    event.session_id = obj.at("session_id").get<std::string>();
    event.t = obj.at("t").get<std::uint64_t>();
    auto wall = ParseRfc3339(obj.at("wall_time").get<std::string>());
    if (!wall) throw std::invalid_argument("bad wall_time");
    event.wall_time = *wall;
    event.payload = PayloadFromJson(obj.at("kind").get<std::string>(), obj.at("payload"));
    return event;
  } catch (const CorruptLogError&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptLogError(seq, std::string("bad event record: ") + e.what());
  }
}

FileEventLog::FileEventLog(std::filesystem::path path, bool fsync_on_append)
    : path_(std::move(path)), fsync_on_append_(fsync_on_append) {}

void FileEventLog::Append(std::span<const SessionEvent> events) {
  std::string buffer;
  for (const SessionEvent& e : events) {
    buffer += EncodeEvent(e);
    buffer += '\n';
  }
  std::lock_guard lock(mu_);
  const int fd = ::open(path_.c_str(), O_WRONLY | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw PersistError(fmt::format("open {}: {}", path_.string(), ErrnoText()));
  struct stat st;
  if (::fstat(fd, &st) != 0) {
    const std::string err = ErrnoText();
    ::close(fd);
    throw PersistError(fmt::format("stat {}: {}", path_.string(), err));
  }
  const off_t original_size = st.st_size;
  std::size_t written = 0;
  std::string error;
  while (written < buffer.size()) {
    const ssize_t n = ::write(fd, buffer.data() + written, buffer.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      error = "write: " + ErrnoText();
      break;
    }
    written += static_cast<std::size_t>(n);
  }
  if (error.empty() && fsync_on_append_ && ::fsync(fd) != 0) error = "fsync: " + ErrnoText();
  if (!error.empty()) {
    // Drop whatever part of the batch made it out.
    if (::ftruncate(fd, original_size) != 0) {
      error += "; truncate after failed append: " + ErrnoText();
    }
    ::close(fd);
    throw PersistError(fmt::format("{}: {}", path_.string(), error));
  }
  if (::close(fd) != 0) throw PersistError(fmt::format("close {}: {}", path_.string(), ErrnoText()));
}

std::vector<SessionEvent> FileEventLog::ReadAll() const {
  std::lock_guard lock(mu_);
  std::vector<SessionEvent> events;
  if (!std::filesystem::exists(path_)) return events;
  std::ifstream in(path_);
  if (!in) throw IoError("cannot read event log " + path_.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      events.push_back(DecodeEvent(line));
    } catch (const CorruptLogError& e) {
      throw CorruptLogError(e.seq(), fmt::format("{}:{}: {}", path_.string(), line_no, e.what()));
    }
  }
  return events;
}

void MemoryEventLog::Append(std::span<const SessionEvent> events) {
  std::lock_guard lock(mu_);
  if (failing_) throw PersistError("event sink is unwritable");
  if (capacity_ && events_.size() + events.size() > *capacity_) {
    throw PersistError("event sink is full");
  }
  events_.insert(events_.end(), events.begin(), events.end());
}

std::vector<SessionEvent> MemoryEventLog::ReadAll() const {
  std::lock_guard lock(mu_);
  return events_;
}

std::size_t MemoryEventLog::size() const {
  std::lock_guard lock(mu_);
  return events_.size();
}

void MemoryEventLog::set_failing(bool failing) {
  std::lock_guard lock(mu_);
  failing_ = failing;
}

PageServedPayload ServedPages(const SessionState& state) {
  PageServedPayload served;
  for (const Article& a : state.unfiltered_page.slots) served.unfiltered.push_back(a.id);
  for (const Article& a : state.balanced_page.slots) served.balanced.push_back(a.id);
  return served;
}

SessionState Replay(std::span<const SessionEvent> log, std::string_view session_id,
                    std::shared_ptr<const TypePools> pools,
                    std::optional<std::size_t> max_events) {
  std::optional<SessionState> state;
  std::uint64_t expected = 0;
  std::size_t applied = 0;
  for (const SessionEvent& event : log) {
    if (event.session_id != session_id) continue;
    if (max_events && applied == *max_events) break;
    const std::uint64_t seq = event.seq;
    if (seq != expected) {
      throw CorruptLogError(
          seq, fmt::format("session {}: sequence number {} where {} was expected",
                           session_id, seq, expected));
    }
    const bool is_created = std::holds_alternative<CreatedPayload>(event.payload);
    if (is_created != (seq == 0)) {
      throw CorruptLogError(
          seq, fmt::format("session {}: {} at sequence number {}", session_id,
                           is_created ? "repeated created record" : "missing created record",
                           seq));
    }
    try {
      std::visit(
          Overloaded{
              [&](const CreatedPayload& p) {
                state = CreateSession(p.config, p.seed, std::string(session_id), pools);
              },
              [&](const PageServedPayload& p) {
                if (ServedPages(*state) != p) {
                  throw std::runtime_error("served pages differ from the recomposed pages");
                }
              },
              [&](const ClickPayload& p) {
                state = ApplyClick(*state, p.feed, p.article_id);
              },
              [&](const ConstraintChangePayload& p) {
                state = ApplyConstraintChange(*state, p.lower_liberal, p.upper_liberal);
              },
              [&](const NoClickAdvancePayload&) { state = AdvanceWithoutClick(*state); },
          },
          event.payload);
    } catch (const std::exception& e) {
      throw CorruptLogError(seq, fmt::format("session {}: event {} ({}) does not replay: {}",
                                             session_id, seq, event.kind(), e.what()));
    }
    if (state->t() != event.t) {
      throw CorruptLogError(
          seq, fmt::format("session {}: event {} records t={} but replay is at t={}",
                           session_id, seq, event.t, state->t()));
    }
    ++expected;
    ++applied;
  }
  if (!state) throw UnknownSessionError(fmt::format("unknown session {}", session_id));
  return *state;
}

SessionState Replay(const EventSource& source, std::string_view session_id,
                    std::shared_ptr<const TypePools> pools,
                    std::optional<std::size_t> max_events) {
  const std::vector<SessionEvent> log = source.ReadAll();
  return Replay(log, session_id, std::move(pools), max_events);
}

}  // namespace balanced
