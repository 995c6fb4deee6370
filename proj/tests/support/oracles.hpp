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

#ifndef CLARENS_TESTS_ORACLES_HPP
#define CLARENS_TESTS_ORACLES_HPP

// Brute-force reference implementations. Deliberately naive, sharing no
// code with the library: plain vectors, linear scans, string searches.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace clarens::oracle {

/// Longest stored string that starts `query`.
inline std::optional<std::size_t> longest_prefix(const std::set<std::string>& stored,
                                                 std::string_view query) {
  std::optional<std::size_t> best;
  for (const auto& s : stored)
    if (query.size() >= s.size() && query.compare(0, s.size(), s) == 0)
      if (!best || s.size() > *best) best = s.size();
  return best;
}

inline bool any_prefix(const std::vector<std::string>& entries, std::string_view dn) {
  for (const auto& e : entries)
    if (!e.empty() && dn.size() >= e.size() && dn.substr(0, e.size()) == e) return true;
  return false;
}

struct Group {
  std::vector<std::string> members;
  std::vector<std::string> administrators;
};

using Registry = std::map<std::string, Group>;

/// "A.B.C" -> "A", "A.B", "A.B.C".
inline std::vector<std::string> chain(const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i <= path.size(); ++i)
    if (i == path.size() || path[i] == '.') out.push_back(path.substr(0, i));
  return out;
}

inline bool is_member(const Registry& reg, const std::string& path, const std::string& dn) {
  if (!reg.count(path)) return false;
  for (const auto& p : chain(path)) {
    auto it = reg.find(p);
    if (it != reg.end() && any_prefix(it->second.members, dn)) return true;
  }
  return false;
}

inline bool in_admins(const Registry& reg, const std::string& dn) {
  auto it = reg.find("admins");
  return it != reg.end() && any_prefix(it->second.members, dn);
}

/// Member-edit authority over `path`: admins, or administrator of path or
/// any ancestor.
inline bool may_edit(const Registry& reg, const std::string& path, const std::string& dn) {
  if (in_admins(reg, dn)) return true;
  for (const auto& p : chain(path)) {
    auto it = reg.find(p);
    if (it != reg.end() && any_prefix(it->second.administrators, dn)) return true;
  }
  return false;
}

/// Create/delete authority for `path`: admins, or administrator of a strict
/// ancestor.
inline bool may_restructure(const Registry& reg, const std::string& path, const std::string& dn) {
  if (in_admins(reg, dn)) return true;
  auto links = chain(path);
  links.pop_back();
  for (const auto& p : links) {
    auto it = reg.find(p);
    if (it != reg.end() && any_prefix(it->second.administrators, dn)) return true;
  }
  return false;
}

struct Acl {
  bool deny_first = true;  // "deny, allow"
  std::vector<std::string> allow_dns, allow_groups, deny_dns, deny_groups;
};

enum class Outcome { allow, deny, none };

inline Outcome level(const Acl& acl, const Registry& reg, const std::string& dn) {
  bool allow = any_prefix(acl.allow_dns, dn);
  for (const auto& g : acl.allow_groups) allow = allow || is_member(reg, g, dn);
  bool deny = any_prefix(acl.deny_dns, dn);
  for (const auto& g : acl.deny_groups) deny = deny || is_member(reg, g, dn);
  if (!allow && !deny) return Outcome::none;
  if (allow && deny) return acl.deny_first ? Outcome::allow : Outcome::deny;
  return allow ? Outcome::allow : Outcome::deny;
}

/// Lowest applicable level first; undecided levels fall through; default
/// deny. Returns the verdict and the prefix that decided it ("" if none).
inline std::pair<bool, std::string> check(const std::map<std::string, Acl>& acls,
                                          const Registry& reg, const std::string& method,
                                          const std::string& dn) {
  auto links = chain(method);
  for (auto it = links.rbegin(); it != links.rend(); ++it) {
    auto acl = acls.find(*it);
    if (acl == acls.end()) continue;
    Outcome o = level(acl->second, reg, dn);
    if (o != Outcome::none) return {o == Outcome::allow, *it};
  }
  return {false, ""};
}

}  // namespace clarens::oracle

#endif  // CLARENS_TESTS_ORACLES_HPP
