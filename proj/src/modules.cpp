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

#include "clarens/modules.hpp"

#include <algorithm>
#include <chrono>

#include "clarens/error.hpp"

namespace clarens {

namespace {

using Args = std::span<const RpcValue>;

RpcValue string_array(const std::vector<std::string>& items) {
  RpcValue::Array out;
  out.reserve(items.size());
  for (const auto& s : items) out.emplace_back(s);
  return out;
}

std::vector<std::string> strings_of(const RpcValue& v, std::string_view field) {
  if (!v.is<RpcValue::Array>())
    throw Error(Errc::BadArguments, "'" + std::string(field) + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v.as<RpcValue::Array>()) {
    if (!e.is<std::string>())
      throw Error(Errc::BadArguments, "'" + std::string(field) + "' must be an array of strings");
    out.push_back(e.as<std::string>());
  }
  return out;
}

DateTime to_datetime(TimePoint t) {
  return DateTime{std::chrono::floor<std::chrono::seconds>(t)};
}

MethodDescriptor method(std::string name, std::vector<std::string> sigs, std::string help,
                        Handler h, Concurrency c = Concurrency::pure) {
  return MethodDescriptor{std::move(name), std::move(h), std::move(sigs), std::move(help), c};
}

}  // namespace

// ---------------------------------------------------------------- conversions

RpcValue group_to_value(const VoGroup& group) {
  RpcValue::Struct s;
  s["path"] = group.path;
  s["members"] = string_array(group.members.strings());
  s["administrators"] = string_array(group.administrators.strings());
  return s;
}

VoGroup group_from_value(const RpcValue& value) {
  if (!value.is<RpcValue::Struct>()) throw Error(Errc::BadArguments, "group must be a struct");
  VoGroup g;
  for (const auto& [k, v] : value.as<RpcValue::Struct>()) {
    if (k == "path" && v.is<std::string>()) g.path = v.as<std::string>();
    else if (k == "members") for (const auto& dn : strings_of(v, k)) g.members.insert(dn);
    else if (k == "administrators") for (const auto& dn : strings_of(v, k)) g.administrators.insert(dn);
    else throw Error(Errc::BadArguments, "unexpected group field '" + k + "'");
  }
  return g;
}

RpcValue acl_to_value(const AccessControlList& acl) {
  RpcValue::Struct s;
  s["order"] = std::string(to_string(acl.order));
  s["allow_dns"] = string_array(acl.allow_dns.strings());
  s["allow_groups"] = string_array(acl.allow_groups);
  s["deny_dns"] = string_array(acl.deny_dns.strings());
  s["deny_groups"] = string_array(acl.deny_groups);
  return s;
}

AccessControlList acl_from_value(const RpcValue& value) {
  if (!value.is<RpcValue::Struct>()) throw Error(Errc::BadArguments, "acl must be a struct");
  AccessControlList acl;
  for (const auto& [k, v] : value.as<RpcValue::Struct>()) {
    if (k == "order") {
      if (!v.is<std::string>()) throw Error(Errc::BadArguments, "'order' must be a string");
      acl.order = parse_eval_order(v.as<std::string>());
    } else if (k == "allow_dns") {
      for (const auto& dn : strings_of(v, k)) acl.allow_dns.insert(dn);
    } else if (k == "deny_dns") {
      for (const auto& dn : strings_of(v, k)) acl.deny_dns.insert(dn);
    } else if (k == "allow_groups") {
      acl.allow_groups = strings_of(v, k);
    } else if (k == "deny_groups") {
      acl.deny_groups = strings_of(v, k);
    } else {
      throw Error(Errc::BadArguments, "unexpected acl field '" + k + "'");
    }
  }
  return acl;
}

RpcValue session_to_value(const Session& s) {
  RpcValue::Struct out;
  out["client_id"] = s.client_id;
  out["dn"] = s.dn;
  out["created_at"] = to_datetime(s.created_at);
  out["expires_at"] = to_datetime(s.expires_at);
  out["origin"] = std::string(to_string(s.origin));
  return out;
}

// ---------------------------------------------------------------- system

void register_system_module(ModuleRegistry& registry, Authenticator& auth) {
  std::vector<MethodDescriptor> m;
  m.push_back(method("system.auth", {"array"},
                     "Basic-auth handshake: username is the client session id, password the "
                     "client certificate PEM.",
                     [&auth](CallContext& ctx, Args args) -> RpcValue {
                       expect_arity(args, 0, 0);
                       const auto& c = ctx.credentials;
                       if (!c.basic_user || !c.basic_password)
                         throw Error(Errc::MalformedCertificate,
                                     "system.auth needs Basic credentials (client id, certificate)");
                       auto r = auth.handshake_basic(*c.basic_password, *c.basic_user);
                       return RpcValue::Array{r.server_certificate_pem, r.encrypted_server_id,
                                              r.signed_client_id};
                     }));
  m.push_back(method("system.auth2", {"array"},
                     "TLS handshake: cookies clarens_username=<client id>, clarens_password=BROWSER.",
                     [&auth](CallContext& ctx, Args args) -> RpcValue {
                       expect_arity(args, 0, 0);
                       const auto& c = ctx.credentials;
                       std::optional<CertificateBundle> peer;
                       if (c.peer_certificate)
                         peer = CertificateBundle::from_certificates(*c.peer_certificate, c.peer_chain);
                       auto find = [&](std::string_view name) {
                         auto it = c.cookies.find(std::string(name));
                         return it == c.cookies.end() ? std::string() : it->second;
                       };
                       auto r = auth.handshake_tls(peer, find(kCookieUser), find(kCookiePassword));
                       return RpcValue::Array{r.server_certificate_pem, r.server_id};
                     }));
  m.push_back(method("system.listMethods", {"array"}, "Names of all registered methods.",
                     [&registry](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 0, 0);
                       return string_array(registry.method_names());
                     }));
  m.push_back(method("system.methodSignature", {"array,string"},
                     "Signatures of a method, return type first.",
                     [&registry](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 1, 1);
                       const std::string& name = string_arg(args, 0);
                       const MethodDescriptor* d = registry.find(name);
                       if (d == nullptr)
                         throw RpcFault(FaultCode::NoSuchMethod, "no such method '" + name + "'");
                       return string_array(d->signatures);
                     }));
  registry.register_module("system", std::move(m));
}

// ---------------------------------------------------------------- group

void register_group_module(ModuleRegistry& registry, VoService& vo) {
  std::vector<MethodDescriptor> m;
  m.push_back(method(
      "group.create", {"struct,string", "struct,string,array", "struct,string,array,array"},
      "Create a group. The parent must exist.",
      [&vo](CallContext& ctx, Args args) -> RpcValue {
        expect_arity(args, 1, 3);
        const std::string& path = string_arg(args, 0);
        const auto members = args.size() > 1 ? string_list_arg(args, 1) : std::vector<std::string>{};
        const auto admins = args.size() > 2 ? string_list_arg(args, 2) : std::vector<std::string>{};
        vo.create_group(ctx.dn(), path, members, admins);
        return group_to_value(*vo.snapshot()->find(path));
      },
      Concurrency::exclusive));
  m.push_back(method("group.delete", {"array,string"}, "Delete a group and everything below it.",
                     [&vo](CallContext& ctx, Args args) -> RpcValue {
                       expect_arity(args, 1, 1);
                       const std::string& path = string_arg(args, 0);
                       auto before = vo.snapshot();
                       std::vector<std::string> removed;
                       for (const auto& p : before->paths())
                         if (p == path || (p.size() > path.size() && p.compare(0, path.size(), path) == 0 &&
                                           p[path.size()] == '.'))
                           removed.push_back(p);
                       vo.delete_group(ctx.dn(), path);
                       std::sort(removed.begin(), removed.end(), [](const auto& a, const auto& b) {
                         return a.size() != b.size() ? a.size() > b.size() : a < b;
                       });
                       return string_array(removed);
                     },
                     Concurrency::exclusive));

  using Mutator = bool (VoService::*)(std::string_view, std::string_view, std::string_view);
  auto edit = [&](std::string name, Mutator fn, std::string help) {
    m.push_back(method(std::move(name), {"boolean,string,string"}, std::move(help),
                       [&vo, fn](CallContext& ctx, Args args) -> RpcValue {
                         expect_arity(args, 2, 2);
                         return (vo.*fn)(ctx.dn(), string_arg(args, 0), string_arg(args, 1));
                       },
                       Concurrency::exclusive));
  };
  edit("group.addMember", &VoService::add_member, "Add a DN to a group. False if already present.");
  edit("group.removeMember", &VoService::remove_member, "Remove a DN from a group.");
  edit("group.addAdministrator", &VoService::add_administrator, "Add a group administrator.");
  edit("group.removeAdministrator", &VoService::remove_administrator,
       "Remove a group administrator.");

  m.push_back(method("group.list", {"array", "struct,string"},
                     "All groups, or one group by path.",
                     [&vo](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 0, 1);
                       auto reg = vo.snapshot();
                       if (args.size() == 1) {
                         const std::string& path = string_arg(args, 0);
                         const VoGroup* g = reg->find(path);
                         if (g == nullptr) throw Error(Errc::NoSuchGroup, "no group '" + path + "'");
                         return group_to_value(*g);
                       }
                       RpcValue::Array out;
                       for (const auto& [path, g] : reg->groups()) out.push_back(group_to_value(g));
                       return out;
                     }));
  registry.register_module("group", std::move(m));
}

// ---------------------------------------------------------------- acl

void register_acl_module(ModuleRegistry& registry, AclService& acls, VoService& vo) {
  std::vector<MethodDescriptor> m;
  m.push_back(method("acl.set", {"struct,string,struct"}, "Set the ACL of a method prefix.",
                     [&acls](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 2, 2);
                       const std::string& prefix = string_arg(args, 0);
                       acls.set_method_acl(prefix, acl_from_value(args[1]));
                       return acl_to_value(*acls.snapshot()->method_acl(prefix));
                     },
                     Concurrency::exclusive));
  m.push_back(method("acl.get", {"struct,string"}, "The ACL of a method prefix.",
                     [&acls](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 1, 1);
                       const std::string& prefix = string_arg(args, 0);
                       auto store = acls.snapshot();
                       const AccessControlList* acl = store->method_acl(prefix);
                       if (acl == nullptr) throw Error(Errc::NoSuchAcl, "no ACL for '" + prefix + "'");
                       return acl_to_value(*acl);
                     }));
  m.push_back(method("acl.setUser", {"struct,string,struct"},
                     "Set the DN list mapped to a system account.",
                     [&acls](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 2, 2);
                       const std::string& user = string_arg(args, 0);
                       acls.set_user_mapping(user, acl_from_value(args[1]));
                       return acl_to_value(*acls.snapshot()->user_mapping(user));
                     },
                     Concurrency::exclusive));
  m.push_back(method("acl.getUser", {"struct,string"}, "The DN list mapped to a system account.",
                     [&acls](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 1, 1);
                       const std::string& user = string_arg(args, 0);
                       auto store = acls.snapshot();
                       const AccessControlList* acl = store->user_mapping(user);
                       if (acl == nullptr) throw Error(Errc::NoSuchAcl, "no mapping for '" + user + "'");
                       return acl_to_value(*acl);
                     }));
  m.push_back(method("acl.map", {"array", "array,string"},
                     "System account for a DN (the caller's by default); empty if none.",
                     [&acls, &vo](CallContext& ctx, Args args) -> RpcValue {
                       expect_arity(args, 0, 1);
                       const std::string dn = args.empty() ? ctx.dn() : string_arg(args, 0);
                       auto user = acls.snapshot()->map_user(dn, *vo.snapshot());
                       RpcValue::Array out;
                       if (user) out.emplace_back(*user);
                       return out;
                     }));
  registry.register_module("acl", std::move(m));
}

// ---------------------------------------------------------------- session

void register_session_module(ModuleRegistry& registry, SessionStore& sessions,
                             std::function<TimePoint()> clock) {
  std::vector<MethodDescriptor> m;
  m.push_back(method("session.list", {"array"}, "Live sessions, without their server ids.",
                     [&sessions, clock](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 0, 0);
                       const TimePoint now = clock();
                       RpcValue::Array out;
                       for (const auto& s : sessions.list())
                         if (!s.expired(now)) out.push_back(session_to_value(s));
                       return out;
                     }));
  m.push_back(method("session.revoke", {"boolean,string"}, "End a session by client id.",
                     [&sessions](CallContext&, Args args) -> RpcValue {
                       expect_arity(args, 1, 1);
                       return sessions.revoke(string_arg(args, 0));
                     },
                     Concurrency::exclusive));
  registry.register_module("session", std::move(m));
}

// ---------------------------------------------------------------- components

const std::map<std::string, ComponentFactory, std::less<>>& builtin_components() {
  static const std::map<std::string, ComponentFactory, std::less<>> table = {
      {"echo",
       [](const std::string& prefix) {
         std::vector<MethodDescriptor> m;
         m.push_back(method(prefix + ".echo", {"string,string"}, "Returns the method argument.",
                            [](CallContext&, Args args) -> RpcValue {
                              expect_arity(args, 1, 1);
                              return args[0];
                            }));
         return m;
       }},
  };
  return table;
}

void register_component(ModuleRegistry& registry, std::string_view prefix,
                        std::string_view component) {
  const auto& table = builtin_components();
  auto it = table.find(component);
  if (it == table.end())
    throw Error(Errc::UnknownComponent, "no component named '" + std::string(component) + "'");
  registry.register_module(prefix, it->second(std::string(prefix)));
}

void seed_default_acls(AclService& acls, const ModuleRegistry& registry) {
  AccessControlList authenticated;
  authenticated.order = EvalOrder::allow_then_deny;
  authenticated.allow_dns.insert("/");
  authenticated.deny_dns.insert(kAnonymousDn);

  AccessControlList admins_only;
  admins_only.allow_groups.push_back(std::string(VoRegistry::kAdminsGroup));

  for (const auto& prefix : registry.module_prefixes()) {
    if (prefix == "system") continue;
    acls.seed_method_acl(prefix, prefix == "acl" || prefix == "session" ? admins_only : authenticated);
  }
}

}  // namespace clarens
