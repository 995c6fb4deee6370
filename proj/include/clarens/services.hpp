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

#ifndef CLARENS_SERVICES_HPP
#define CLARENS_SERVICES_HPP

#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "clarens/acl.hpp"
#include "clarens/kv_store.hpp"
#include "clarens/snapshot.hpp"
#include "clarens/vo_registry.hpp"

namespace clarens {

/// The live VO registry: readers take snapshots, every mutation is written
/// to the store before it becomes visible.
class VoService {
 public:
  /// Loads all "vo/" records and reseeds "admins" from `admin_dns`.
  VoService(KvStore& kv, std::span<const std::string> admin_dns);

  std::shared_ptr<const VoRegistry> snapshot() const { return state_.read(); }

  void create_group(std::string_view actor, std::string_view path,
                    std::span<const std::string> members = {},
                    std::span<const std::string> administrators = {});
  void delete_group(std::string_view actor, std::string_view path);
  bool add_member(std::string_view actor, std::string_view path, std::string_view dn);
  bool remove_member(std::string_view actor, std::string_view path, std::string_view dn);
  bool add_administrator(std::string_view actor, std::string_view path, std::string_view dn);
  bool remove_administrator(std::string_view actor, std::string_view path, std::string_view dn);

 private:
  void persist(const VoRegistry& reg, std::string_view path);

  KvStore& kv_;
  Snapshot<VoRegistry> state_;
};

/// The live ACL store. Same snapshot and write-through contract as
/// VoService.
class AclService {
 public:
  explicit AclService(KvStore& kv);

  std::shared_ptr<const AclStore> snapshot() const { return state_.read(); }

  void set_method_acl(std::string_view method_prefix, AccessControlList acl);
  void set_user_mapping(std::string_view username, AccessControlList acl);
  bool erase_method_acl(std::string_view method_prefix);
  bool erase_user_mapping(std::string_view username);

  /// Installs `acl` only if no ACL exists at `method_prefix`. Returns true if
  /// it was installed.
  bool seed_method_acl(std::string_view method_prefix, AccessControlList acl);

 private:
  KvStore& kv_;
  Snapshot<AclStore> state_;
};

}  // namespace clarens

#endif  // CLARENS_SERVICES_HPP
