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

#ifndef CLARENS_MODULES_HPP
#define CLARENS_MODULES_HPP

// Built-in RPC modules and the component table used by the module manifest.
//
//   system.auth()                 -> [server cert PEM, enc server_id, signed client_id]
//   system.auth2()                -> [server cert PEM, server_id]
//   system.listMethods()          -> [name...]
//   system.methodSignature(name)  -> ["ret,arg,..."...]
//   group.create(path[, members[, administrators]]) -> group struct
//   group.delete(path)            -> [removed path...]
//   group.addMember(path, dn) / group.removeMember(path, dn) -> boolean
//   group.addAdministrator(path, dn) / group.removeAdministrator(path, dn) -> boolean
//   group.list([path])            -> [group struct...] or group struct
//   acl.set(prefix, acl struct) / acl.setUser(name, acl struct) -> acl struct
//   acl.get(prefix) / acl.getUser(name) -> acl struct
//   acl.map([dn])                 -> [] or [username]
//   session.list()                -> [session struct...]  (no server ids)
//   session.revoke(client_id)     -> boolean
//
// A group struct is {path, members, administrators}. An acl struct is
// {order: "deny,allow"|"allow,deny", allow_dns, allow_groups, deny_dns,
// deny_groups}; absent lists are empty.

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/acl.hpp"
#include "clarens/auth.hpp"
#include "clarens/rpc_registry.hpp"
#include "clarens/services.hpp"
#include "clarens/vo_registry.hpp"

namespace clarens {

RpcValue group_to_value(const VoGroup& group);
VoGroup group_from_value(const RpcValue& value);
RpcValue acl_to_value(const AccessControlList& acl);
/// Throws Error(BadArguments) for unknown fields or wrong types.
AccessControlList acl_from_value(const RpcValue& value);
RpcValue session_to_value(const Session& session);

void register_system_module(ModuleRegistry& registry, Authenticator& auth);
void register_group_module(ModuleRegistry& registry, VoService& vo);
void register_acl_module(ModuleRegistry& registry, AclService& acls, VoService& vo);
void register_session_module(ModuleRegistry& registry, SessionStore& sessions,
                             std::function<TimePoint()> clock = &now_ms);

/// Builds the descriptors of a loadable component under `prefix`.
using ComponentFactory = std::function<std::vector<MethodDescriptor>(const std::string& prefix)>;

/// Components that a module manifest may name. "echo" provides
/// <prefix>.echo, the identity on any value.
const std::map<std::string, ComponentFactory, std::less<>>& builtin_components();

/// Throws UnknownComponent, plus whatever register_module throws.
void register_component(ModuleRegistry& registry, std::string_view prefix,
                        std::string_view component);

/// Installs an ACL for every registered module prefix that has none yet.
/// "acl" and "session" admit the admins group; other modules admit any
/// authenticated DN. "system" is left alone: its open methods bypass ACLs.
void seed_default_acls(AclService& acls, const ModuleRegistry& registry);

}  // namespace clarens

#endif  // CLARENS_MODULES_HPP
