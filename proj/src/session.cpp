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

#include "clarens/session.hpp"

#include "clarens/crypto.hpp"
#include "clarens/error.hpp"
#include "clarens/records.hpp"

namespace clarens {

std::string_view to_string(SessionOrigin o) noexcept {
  return o == SessionOrigin::tls_cookie ? "tls_cookie" : "basic_exchange";
}

void SessionStore::put(const Session& s) { kv_.put(records::session_key(s.client_id), records::encode(s)); }

std::optional<Session> SessionStore::find(std::string_view client_id) const {
  if (client_id.empty()) return std::nullopt;
  auto raw = kv_.get(records::session_key(client_id));
  if (!raw) return std::nullopt;
  return records::decode_session(*raw);
}

std::optional<Session> SessionStore::validate(std::string_view client_id,
                                              std::string_view server_id, TimePoint now) const {
  std::optional<Session> s;
  try {
    s = find(client_id);
  } catch (const Error& e) {
    if (e.code() != Errc::CorruptRecord) throw;
    return std::nullopt;
  }
  if (!s || !constant_time_equal(s->server_id, server_id) || s->expired(now)) return std::nullopt;
  return s;
}

std::vector<Session> SessionStore::list() const {
  std::vector<Session> out;
  for (const auto& [key, value] : kv_.scan(records::kSessionPrefix)) out.push_back(records::decode_session(value));
  return out;
}

bool SessionStore::revoke(std::string_view client_id) {
  if (client_id.empty() || !kv_.get(records::session_key(client_id))) return false;
  kv_.erase(records::session_key(client_id));
  return true;
}

std::size_t SessionStore::purge_expired(TimePoint now) {
  std::size_t n = 0;
  for (const auto& [key, value] : kv_.scan(records::kSessionPrefix)) {
    bool stale = false;
    try {
      stale = records::decode_session(value).expired(now);
    } catch (const Error&) {
      stale = true;  // unreadable session records authenticate nothing
    }
    if (stale) {
      kv_.erase(key);
      ++n;
    }
  }
  return n;
}

}  // namespace clarens
