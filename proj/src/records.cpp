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

#include "clarens/records.hpp"

#include <json.hpp>

#include "clarens/error.hpp"

namespace clarens::records {

using nlohmann::json;

namespace {

std::string seal(const json& j) {
  try {
    return std::string(1, kVersion) + j.dump();
  } catch (const json::exception& e) {
    throw Error(Errc::CorruptRecord, std::string("record is not valid UTF-8: ") + e.what());
  }
}

json open(std::string_view value, std::string_view what) {
  if (value.empty() || value.front() != kVersion)
    throw Error(Errc::CorruptRecord, std::string(what) + " record has an unknown version tag");
  json j = json::parse(value.substr(1), nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw Error(Errc::CorruptRecord, std::string(what) + " record is not a JSON object");
  return j;
}

template <class T>
T field(const json& j, const char* name, std::string_view what) {
  try {
    return j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::CorruptRecord,
                std::string(what) + " record has a missing or mistyped field '" + name + "'");
  }
}

json tree_to_json(const TernaryTree& t) { return t.strings(); }

TernaryTree tree_from_json(const json& j, const char* name, std::string_view what) {
  TernaryTree t;
  for (const auto& s : field<std::vector<std::string>>(j, name, what)) {
    if (s.empty()) throw Error(Errc::CorruptRecord, std::string(what) + " record has an empty DN");
    t.insert(s);
  }
  return t;
}

}  // namespace

std::string encode(const VoGroup& group) {
  return seal(json{{"path", group.path},
                   {"members", tree_to_json(group.members)},
                   {"administrators", tree_to_json(group.administrators)}});
}

VoGroup decode_group(std::string_view value) {
  const json j = open(value, "group");
  VoGroup g;
  g.path = field<std::string>(j, "path", "group");
  g.members = tree_from_json(j, "members", "group");
  g.administrators = tree_from_json(j, "administrators", "group");
  return g;
}

std::string encode(const AccessControlList& acl) {
  return seal(json{{"order", std::string(to_string(acl.order))},
                   {"allow_dns", tree_to_json(acl.allow_dns)},
                   {"allow_groups", acl.allow_groups},
                   {"deny_dns", tree_to_json(acl.deny_dns)},
                   {"deny_groups", acl.deny_groups}});
}

AccessControlList decode_acl(std::string_view value) {
  const json j = open(value, "acl");
  AccessControlList acl;
  try {
    acl.order = parse_eval_order(field<std::string>(j, "order", "acl"));
  } catch (const Error& e) {
    if (e.code() == Errc::CorruptRecord) throw;
    throw Error(Errc::CorruptRecord, std::string("acl record: ") + e.what());
  }
  acl.allow_dns = tree_from_json(j, "allow_dns", "acl");
  acl.allow_groups = field<std::vector<std::string>>(j, "allow_groups", "acl");
  acl.deny_dns = tree_from_json(j, "deny_dns", "acl");
  acl.deny_groups = field<std::vector<std::string>>(j, "deny_groups", "acl");
  return acl;
}

std::string encode(const Session& s) {
  return seal(json{{"client_id", s.client_id},
                   {"server_id", s.server_id},
                   {"dn", s.dn},
                   {"created_at_ms", s.created_at.time_since_epoch().count()},
                   {"expires_at_ms", s.expires_at.time_since_epoch().count()},
                   {"origin", std::string(to_string(s.origin))}});
}

Session decode_session(std::string_view value) {
  const json j = open(value, "session");
  Session s;
  s.client_id = field<std::string>(j, "client_id", "session");
  s.server_id = field<std::string>(j, "server_id", "session");
  s.dn = field<std::string>(j, "dn", "session");
  s.created_at = TimePoint(std::chrono::milliseconds(field<std::int64_t>(j, "created_at_ms", "session")));
  s.expires_at = TimePoint(std::chrono::milliseconds(field<std::int64_t>(j, "expires_at_ms", "session")));
  const auto origin = field<std::string>(j, "origin", "session");
  if (origin == "tls_cookie") s.origin = SessionOrigin::tls_cookie;
  else if (origin == "basic_exchange") s.origin = SessionOrigin::basic_exchange;
  else throw Error(Errc::CorruptRecord, "session record has unknown origin '" + origin + "'");
  return s;
}

}  // namespace clarens::records
