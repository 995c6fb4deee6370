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

#ifndef CLARENS_VO_REGISTRY_HPP
#define CLARENS_VO_REGISTRY_HPP

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/ternary_tree.hpp"

namespace clarens {

struct VoGroup {
  std::string path;
  TernaryTree members;
  TernaryTree administrators;

  friend bool operator==(const VoGroup&, const VoGroup&) = default;
};

/// Tree of groups named by dotted paths ("CMS.USA.Caltech").
///
/// Membership is inherited downwards: a DN listed in "CMS" is a member of
/// every group below it. Authority is inherited the same way: administrators
/// of a group manage members of that group and of everything below it, and
/// create or delete groups strictly below it. Members of the reserved
/// top-level group "admins" may do anything.
///
/// Entries in member and administrator lists are full DNs or initial DN
/// fragments; a query DN matches an entry when the entry is a prefix of it.
class VoRegistry {
 public:
  static constexpr std::string_view kAdminsGroup = "admins";

  VoRegistry();

  /// Loads `persisted` groups and then overwrites the "admins" membership
  /// with `admin_dns`. Throws EmptyAdmins, MalformedDn, BadGroupPath or
  /// MissingParent.
  static VoRegistry bootstrap(std::span<const std::string> admin_dns,
                              std::vector<VoGroup> persisted = {});

  void create_group(std::string_view actor, std::string_view path,
                    std::span<const std::string> members = {},
                    std::span<const std::string> administrators = {});

  /// Removes `path` and everything below it. Returns the removed paths,
  /// deepest first.
  std::vector<std::string> delete_group(std::string_view actor, std::string_view path);

  /// Return false when the list already had (or lacked) the entry.
  bool add_member(std::string_view actor, std::string_view path, std::string_view dn);
  bool remove_member(std::string_view actor, std::string_view path, std::string_view dn);
  bool add_administrator(std::string_view actor, std::string_view path, std::string_view dn);
  bool remove_administrator(std::string_view actor, std::string_view path, std::string_view dn);

  bool is_member(std::string_view path, std::string_view dn) const;
  bool is_group_admin(std::string_view path, std::string_view dn) const;

  /// Authority to create or delete `path`: admins, or administrator of a
  /// strict ancestor.
  bool may_restructure(std::string_view path, std::string_view dn) const;

  bool contains(std::string_view path) const { return groups_.find(path) != groups_.end(); }
  const VoGroup* find(std::string_view path) const;
  std::vector<std::string> paths() const;
  const std::map<std::string, VoGroup, std::less<>>& groups() const noexcept { return groups_; }

  friend bool operator==(const VoRegistry&, const VoRegistry&) = default;

 private:
  VoGroup& require(std::string_view path);
  static void check_entry(std::string_view dn);

  std::map<std::string, VoGroup, std::less<>> groups_;
};

}  // namespace clarens

#endif  // CLARENS_VO_REGISTRY_HPP
