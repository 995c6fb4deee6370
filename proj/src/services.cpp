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

#include "clarens/services.hpp"

#include "clarens/error.hpp"
#include "clarens/records.hpp"

namespace clarens {

namespace {

VoRegistry load_registry(KvStore& kv, std::span<const std::string> admin_dns) {
  std::vector<VoGroup> groups;
  for (const auto& [key, value] : kv.scan(records::kVoPrefix)) {
    VoGroup g = records::decode_group(value);
    if (key != records::vo_key(g.path))
      throw Error(Errc::CorruptRecord, "group record " + key + " names path '" + g.path + "'");
    groups.push_back(std::move(g));
  }
  return VoRegistry::bootstrap(admin_dns, std::move(groups));
}

AclStore load_acls(KvStore& kv) {
  AclStore store;
  for (const auto& [key, value] : kv.scan(records::kMethodAclPrefix))
    store.set_method_acl(std::string_view(key).substr(records::kMethodAclPrefix.size()),
                         records::decode_acl(value));
  for (const auto& [key, value] : kv.scan(records::kUserMapPrefix))
    store.set_user_mapping(std::string_view(key).substr(records::kUserMapPrefix.size()),
                           records::decode_acl(value));
  return store;
}

}  // namespace

// ---------------------------------------------------------------- VoService

VoService::VoService(KvStore& kv, std::span<const std::string> admin_dns)
    : kv_(kv), state_(load_registry(kv, admin_dns)) {
  // The configured admins replace whatever was stored before.
  persist(*state_.read(), VoRegistry::kAdminsGroup);
}

void VoService::persist(const VoRegistry& reg, std::string_view path) {
  const VoGroup* g = reg.find(path);
  if (g == nullptr) {
    kv_.erase(records::vo_key(path));
  } else {
    kv_.put(records::vo_key(path), records::encode(*g));
  }
}

void VoService::create_group(std::string_view actor, std::string_view path,
                             std::span<const std::string> members,
                             std::span<const std::string> administrators) {
  state_.update([&](VoRegistry& reg) {
    reg.create_group(actor, path, members, administrators);
    persist(reg, path);
  });
}

void VoService::delete_group(std::string_view actor, std::string_view path) {
  state_.update([&](VoRegistry& reg) {
    for (const auto& removed : reg.delete_group(actor, path)) persist(reg, removed);
  });
}

bool VoService::add_member(std::string_view actor, std::string_view path, std::string_view dn) {
  return state_.update([&](VoRegistry& reg) {
    const bool changed = reg.add_member(actor, path, dn);
    if (changed) persist(reg, path);
    return changed;
  });
}

bool VoService::remove_member(std::string_view actor, std::string_view path, std::string_view dn) {
  return state_.update([&](VoRegistry& reg) {
    const bool changed = reg.remove_member(actor, path, dn);
    if (changed) persist(reg, path);
    return changed;
  });
}

bool VoService::add_administrator(std::string_view actor, std::string_view path,
                                  std::string_view dn) {
  return state_.update([&](VoRegistry& reg) {
    const bool changed = reg.add_administrator(actor, path, dn);
    if (changed) persist(reg, path);
    return changed;
  });
}

bool VoService::remove_administrator(std::string_view actor, std::string_view path,
                                     std::string_view dn) {
  return state_.update([&](VoRegistry& reg) {
    const bool changed = reg.remove_administrator(actor, path, dn);
    if (changed) persist(reg, path);
    return changed;
  });
}

// ---------------------------------------------------------------- AclService

AclService::AclService(KvStore& kv) : kv_(kv), state_(load_acls(kv)) {}

void AclService::set_method_acl(std::string_view method_prefix, AccessControlList acl) {
  state_.update([&](AclStore& store) {
    const std::string value = records::encode(acl);
    store.set_method_acl(method_prefix, std::move(acl));
    kv_.put(records::method_acl_key(method_prefix), value);
  });
}

void AclService::set_user_mapping(std::string_view username, AccessControlList acl) {
  state_.update([&](AclStore& store) {
    const std::string value = records::encode(acl);
    store.set_user_mapping(username, std::move(acl));
    kv_.put(records::user_map_key(username), value);
  });
}

bool AclService::erase_method_acl(std::string_view method_prefix) {
  return state_.update([&](AclStore& store) {
    const bool erased = store.erase_method_acl(method_prefix);
    if (erased) kv_.erase(records::method_acl_key(method_prefix));
    return erased;
  });
}

bool AclService::erase_user_mapping(std::string_view username) {
  return state_.update([&](AclStore& store) {
    const bool erased = store.erase_user_mapping(username);
    if (erased) kv_.erase(records::user_map_key(username));
    return erased;
  });
}

bool AclService::seed_method_acl(std::string_view method_prefix, AccessControlList acl) {
  return state_.update([&](AclStore& store) {
    if (store.method_acl(method_prefix) != nullptr) return false;
    const std::string value = records::encode(acl);
    store.set_method_acl(method_prefix, std::move(acl));
    kv_.put(records::method_acl_key(method_prefix), value);
    return true;
  });
}

}  // namespace clarens
