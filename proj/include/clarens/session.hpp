/*
 * Copyright 2026 The Clarens C++ Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef CLARENS_SESSION_HPP
#define CLARENS_SESSION_HPP

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/kv_store.hpp"

namespace clarens {

using Clock = std::chrono::system_clock;
using TimePoint = std::chrono::time_point<Clock, std::chrono::milliseconds>;

inline TimePoint now_ms() { return std::chrono::time_point_cast<std::chrono::milliseconds>(Clock::now()); }

enum class SessionOrigin { tls_cookie, basic_exchange };

std::string_view to_string(SessionOrigin o) noexcept;

/// An authenticated (client_id, server_id) pair. The client picks client_id;
/// server_id is 32 random bytes, hex encoded.
struct Session {
  std::string client_id;
  std::string server_id;
  std::string dn;
  TimePoint created_at;
  TimePoint expires_at;
  SessionOrigin origin = SessionOrigin::basic_exchange;

  bool expired(TimePoint now) const noexcept { return now >= expires_at; }
  friend bool operator==(const Session&, const Session&) = default;
};

/// Sessions keyed by client_id under "session/". A new session for a
/// client_id replaces the previous one.
class SessionStore {
 public:
  explicit SessionStore(KvStore& kv) : kv_(kv) {}

  void put(const Session& s);
  /// The session for the pair if it exists and has not expired. server_id
  /// is compared in constant time.
  std::optional<Session> validate(std::string_view client_id, std::string_view server_id,
                                  TimePoint now) const;
  std::optional<Session> find(std::string_view client_id) const;
  std::vector<Session> list() const;
  bool revoke(std::string_view client_id);
  std::size_t purge_expired(TimePoint now);

 private:
  KvStore& kv_;
};

}  // namespace clarens

#endif  // CLARENS_SESSION_HPP
