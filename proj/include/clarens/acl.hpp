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

#ifndef CLARENS_ACL_HPP
#define CLARENS_ACL_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/ternary_tree.hpp"
#include "clarens/vo_registry.hpp"

namespace clarens {

/// Which list is consulted first. When a DN matches both lists of one ACL,
/// the list named second wins.
enum class EvalOrder { deny_then_allow, allow_then_deny };

std::string_view to_string(EvalOrder order) noexcept;
/// Accepts "deny,allow" / "allow,deny" (spaces ignored) and the enumerator
/// names. Throws BadArguments.
EvalOrder parse_eval_order(std::string_view text);

struct AccessControlList {
  EvalOrder order = EvalOrder::deny_then_allow;
  TernaryTree allow_dns;
  std::vector<std::string> allow_groups;
  TernaryTree deny_dns;
  std::vector<std::string> deny_groups;

  bool has_deny_entries() const { return !deny_dns.empty() || !deny_groups.empty(); }
  friend bool operator==(const AccessControlList&, const AccessControlList&) = default;
};

enum class Verdict { allow, deny, undecided };

std::string_view to_string(Verdict v) noexcept;

struct AclDecision {
  Verdict verdict = Verdict::undecided;
  /// Method prefix whose ACL produced the verdict.
  std::optional<std::string> decided_at;

  friend bool operator==(const AclDecision&, const AclDecision&) = default;
};

/// One level of the hierarchy. Undecided when the DN matches neither list.
AclDecision evaluate_level(const AccessControlList& acl, std::string_view dn,
                           const VoRegistry& registry);

/// Methods callable without passing the ACL check (authentication and
/// service discovery).
bool bypasses_acl(std::string_view method) noexcept;

class AclStore {
 public:
  /// Throws MalformedMethodName.
  void set_method_acl(std::string_view method_prefix, AccessControlList acl);
  /// Throws BadUsername or DenyListForbidden.
  void set_user_mapping(std::string_view username, AccessControlList acl);
  bool erase_method_acl(std::string_view method_prefix);
  bool erase_user_mapping(std::string_view username);

  const AccessControlList* method_acl(std::string_view method_prefix) const;
  const AccessControlList* user_mapping(std::string_view username) const;

  /// Walks "mod.sub.meth", "mod.sub", "mod"; the first level that decides
  /// is final. If nothing decides the answer is deny with no decided_at.
  /// Throws MalformedMethodName.
  AclDecision check_method_access(std::string_view method, std::string_view dn,
                                  const VoRegistry& registry) const;

  /// Username whose mapping allows `dn`. Longer DN-prefix matches beat
  /// shorter ones and group matches; ties go to the smallest username.
  std::optional<std::string> map_user(std::string_view dn, const VoRegistry& registry) const;

  const std::map<std::string, AccessControlList, std::less<>>& method_acls() const noexcept {
    return method_acls_;
  }
  const std::map<std::string, AccessControlList, std::less<>>& user_map() const noexcept {
    return user_map_;
  }

  friend bool operator==(const AclStore&, const AclStore&) = default;

 private:
  std::map<std::string, AccessControlList, std::less<>> method_acls_;
  std::map<std::string, AccessControlList, std::less<>> user_map_;
};

}  // namespace clarens

#endif  // CLARENS_ACL_HPP
