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

#ifndef CLARENS_RECORDS_HPP
#define CLARENS_RECORDS_HPP

// Stored record formats. Each value is a one-byte version tag (currently
// 0x01) followed by a UTF-8 JSON object:
//
//   vo/<path>            {"path", "members": [dn...], "administrators": [dn...]}
//   acl/method/<prefix>  {"order": "deny,allow", "allow_dns", "allow_groups",
//                         "deny_dns", "deny_groups"}
//   acl/user/<name>      same shape as acl/method
//   session/<client_id>  {"client_id", "server_id", "dn", "created_at_ms",
//                         "expires_at_ms", "origin": "tls_cookie"|"basic_exchange"}
//
// Decoders throw Error(CorruptRecord) on anything they do not understand.

#include <string>
#include <string_view>

#include "clarens/acl.hpp"
#include "clarens/session.hpp"
#include "clarens/vo_registry.hpp"

namespace clarens::records {

inline constexpr char kVersion = 0x01;

inline constexpr std::string_view kSessionPrefix = "session/";
inline constexpr std::string_view kVoPrefix = "vo/";
inline constexpr std::string_view kMethodAclPrefix = "acl/method/";
inline constexpr std::string_view kUserMapPrefix = "acl/user/";

inline std::string session_key(std::string_view client_id) {
  return std::string(kSessionPrefix) + std::string(client_id);
}
inline std::string vo_key(std::string_view path) { return std::string(kVoPrefix) + std::string(path); }
inline std::string method_acl_key(std::string_view prefix) {
  return std::string(kMethodAclPrefix) + std::string(prefix);
}
inline std::string user_map_key(std::string_view user) {
  return std::string(kUserMapPrefix) + std::string(user);
}

std::string encode(const VoGroup& group);
VoGroup decode_group(std::string_view value);

std::string encode(const AccessControlList& acl);
AccessControlList decode_acl(std::string_view value);

std::string encode(const Session& session);
Session decode_session(std::string_view value);

}  // namespace clarens::records

#endif  // CLARENS_RECORDS_HPP
