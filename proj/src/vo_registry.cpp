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

#include "clarens/vo_registry.hpp"

#include <algorithm>

#include "clarens/dn.hpp"
#include "clarens/dotted_name.hpp"
#include "clarens/error.hpp"

namespace clarens {

namespace {

std::string quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

bool matches(const TernaryTree& list, std::string_view dn) {
  return list.longest_prefix_match(dn).has_value();
}

bool under_admins(std::string_view path) {
  return is_within(path, VoRegistry::kAdminsGroup);
}

}  // namespace

VoRegistry::VoRegistry() {
  groups_.emplace(std::string(kAdminsGroup), VoGroup{std::string(kAdminsGroup), {}, {}});
}

VoRegistry VoRegistry::bootstrap(std::span<const std::string> admin_dns,
                                 std::vector<VoGroup> persisted) {
  if (admin_dns.empty())
    throw Error(Errc::EmptyAdmins, "at least one administrator DN must be configured");

  VoRegistry reg;
  // Parents first.
  std::stable_sort(persisted.begin(), persisted.end(), [](const VoGroup& a, const VoGroup& b) {
    return std::count(a.path.begin(), a.path.end(), '.') <
           std::count(b.path.begin(), b.path.end(), '.');
  });
  for (auto& g : persisted) {
    if (g.path == kAdminsGroup) continue;
    if (!is_valid_group_path(g.path) || under_admins(g.path))
      throw Error(Errc::BadGroupPath, "invalid persisted group path " + quoted(g.path));
    const std::string parent = parent_of(g.path);
    if (!parent.empty() && !reg.contains(parent))
      throw Error(Errc::MissingParent, "persisted group " + quoted(g.path) + " has no parent");
    std::string path = g.path;
    reg.groups_.insert_or_assign(std::move(path), std::move(g));
  }

  VoGroup& admins = reg.groups_.find(kAdminsGroup)->second;
  for (const auto& dn : admin_dns) {
    check_entry(dn);
    admins.members.insert(dn);
  }
  return reg;
}

void VoRegistry::check_entry(std::string_view dn) {
  if (!is_dn_shaped(dn))
    throw Error(Errc::MalformedDn,
                "DN list entries must be DNs or leading DN attributes, got " + quoted(dn));
}

const VoGroup* VoRegistry::find(std::string_view path) const {
  auto it = groups_.find(path);
  return it == groups_.end() ? nullptr : &it->second;
}

VoGroup& VoRegistry::require(std::string_view path) {
  auto it = groups_.find(path);
  if (it == groups_.end()) throw Error(Errc::NoSuchGroup, "no such group " + quoted(path));
  return it->second;
}

std::vector<std::string> VoRegistry::paths() const {
  std::vector<std::string> out;
  out.reserve(groups_.size());
  for (const auto& [path, group] : groups_) out.push_back(path);
  return out;
}

bool VoRegistry::is_member(std::string_view path, std::string_view dn) const {
  const VoGroup* g = find(path);
  if (g == nullptr) return false;
  if (matches(g->members, dn)) return true;
  for (const auto& ancestor : strict_ancestors(path)) {
    const VoGroup* a = find(ancestor);
    if (a != nullptr && matches(a->members, dn)) return true;
  }
  return false;
}

bool VoRegistry::may_restructure(std::string_view path, std::string_view dn) const {
  if (is_member(kAdminsGroup, dn)) return true;
  for (const auto& ancestor : strict_ancestors(path)) {
    const VoGroup* a = find(ancestor);
    if (a != nullptr && matches(a->administrators, dn)) return true;
  }
  return false;
}

bool VoRegistry::is_group_admin(std::string_view path, std::string_view dn) const {
  if (may_restructure(path, dn)) return true;
  const VoGroup* g = find(path);
  return g != nullptr && matches(g->administrators, dn);
}

void VoRegistry::create_group(std::string_view actor, std::string_view path,
                              std::span<const std::string> members,
                              std::span<const std::string> administrators) {
  if (!is_valid_group_path(path)) throw Error(Errc::BadGroupPath, "invalid group path " + quoted(path));
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group is managed by the server configuration");
  for (const auto& dn : members) check_entry(dn);
  for (const auto& dn : administrators) check_entry(dn);
  if (!may_restructure(path, actor))
    throw Error(Errc::NotAuthorized, quoted(actor) + " may not create " + quoted(path));
  if (contains(path)) throw Error(Errc::DuplicateGroup, "group " + quoted(path) + " already exists");
  const std::string parent = parent_of(path);
  if (!parent.empty() && !contains(parent))
    throw Error(Errc::MissingParent, "parent group " + quoted(parent) + " does not exist");

  VoGroup g;
  g.path.assign(path);
  for (const auto& dn : members) g.members.insert(dn);
  for (const auto& dn : administrators) g.administrators.insert(dn);
  groups_.emplace(g.path, std::move(g));
}

std::vector<std::string> VoRegistry::delete_group(std::string_view actor, std::string_view path) {
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group cannot be deleted");
  if (!contains(path)) throw Error(Errc::NoSuchGroup, "no such group " + quoted(path));
  if (!may_restructure(path, actor))
    throw Error(Errc::NotAuthorized, quoted(actor) + " may not delete " + quoted(path));

  std::vector<std::string> removed;
  for (const auto& [p, g] : groups_)
    if (is_within(p, path)) removed.push_back(p);
  std::sort(removed.begin(), removed.end(), [](const std::string& a, const std::string& b) {
    return a.size() > b.size();
  });
  for (const auto& p : removed) groups_.erase(p);
  return removed;
}

bool VoRegistry::add_member(std::string_view actor, std::string_view path, std::string_view dn) {
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group is managed by the server configuration");
  VoGroup& g = require(path);
  if (!is_group_admin(path, actor))
    throw Error(Errc::NotAuthorized, quoted(actor) + " may not manage members of " + quoted(path));
  check_entry(dn);
  return g.members.insert(dn);
}

bool VoRegistry::remove_member(std::string_view actor, std::string_view path, std::string_view dn) {
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group is managed by the server configuration");
  VoGroup& g = require(path);
  if (!is_group_admin(path, actor))
    throw Error(Errc::NotAuthorized, quoted(actor) + " may not manage members of " + quoted(path));
  return g.members.remove(dn);
}

bool VoRegistry::add_administrator(std::string_view actor, std::string_view path,
                                   std::string_view dn) {
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group is managed by the server configuration");
  VoGroup& g = require(path);
  if (!may_restructure(path, actor))
    throw Error(Errc::NotAuthorized,
                quoted(actor) + " may not manage administrators of " + quoted(path));
  check_entry(dn);
  return g.administrators.insert(dn);
}

bool VoRegistry::remove_administrator(std::string_view actor, std::string_view path,
                                      std::string_view dn) {
  if (under_admins(path))
    throw Error(Errc::ProtectedGroup, "the admins group is managed by the server configuration");
  VoGroup& g = require(path);
  if (!may_restructure(path, actor))
    throw Error(Errc::NotAuthorized,
                quoted(actor) + " may not manage administrators of " + quoted(path));
  return g.administrators.remove(dn);
}

}  // namespace clarens
