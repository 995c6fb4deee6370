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

#include "clarens/acl.hpp"

#include <algorithm>
#include <array>

#include "clarens/dotted_name.hpp"
#include "clarens/error.hpp"

namespace clarens {

std::string_view to_string(EvalOrder order) noexcept {
  return order == EvalOrder::deny_then_allow ? "deny,allow" : "allow,deny";
}

EvalOrder parse_eval_order(std::string_view text) {
  std::string compact;
  for (char c : text)
    if (c != ' ' && c != '\t') compact.push_back(c);
  if (compact == "deny,allow" || compact == "deny_then_allow") return EvalOrder::deny_then_allow;
  if (compact == "allow,deny" || compact == "allow_then_deny") return EvalOrder::allow_then_deny;
  throw Error(Errc::BadArguments, "order must be 'deny,allow' or 'allow,deny', got '" +
                                      std::string(text) + "'");
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::allow: return "allow";
    case Verdict::deny: return "deny";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

namespace {

bool matches_groups(const std::vector<std::string>& groups, std::string_view dn,
                    const VoRegistry& registry) {
  return std::any_of(groups.begin(), groups.end(),
                     [&](const std::string& g) { return registry.is_member(g, dn); });
}

}  // namespace

AclDecision evaluate_level(const AccessControlList& acl, std::string_view dn,
                           const VoRegistry& registry) {
  const bool allowed = acl.allow_dns.longest_prefix_match(dn).has_value() ||
                       matches_groups(acl.allow_groups, dn, registry);
  const bool denied = acl.deny_dns.longest_prefix_match(dn).has_value() ||
                      matches_groups(acl.deny_groups, dn, registry);
  AclDecision d;
  if (acl.order == EvalOrder::deny_then_allow) {
    if (allowed) d.verdict = Verdict::allow;
    else if (denied) d.verdict = Verdict::deny;
  } else {
    if (denied) d.verdict = Verdict::deny;
    else if (allowed) d.verdict = Verdict::allow;
  }
  return d;
}

bool bypasses_acl(std::string_view method) noexcept {
  static constexpr std::array<std::string_view, 4> kOpen = {
      "system.auth", "system.auth2", "system.listMethods", "system.methodSignature"};
  return std::find(kOpen.begin(), kOpen.end(), method) != kOpen.end();
}

void AclStore::set_method_acl(std::string_view method_prefix, AccessControlList acl) {
  if (!is_valid_method_name(method_prefix))
    throw Error(Errc::MalformedMethodName, "invalid method prefix '" + std::string(method_prefix) + "'");
  method_acls_.insert_or_assign(std::string(method_prefix), std::move(acl));
}

void AclStore::set_user_mapping(std::string_view username, AccessControlList acl) {
  if (!is_valid_username(username))
    throw Error(Errc::BadUsername, "invalid username '" + std::string(username) + "'");
  if (acl.has_deny_entries())
    throw Error(Errc::DenyListForbidden, "user mappings take no deny lists");
  user_map_.insert_or_assign(std::string(username), std::move(acl));
}

bool AclStore::erase_method_acl(std::string_view method_prefix) {
  auto it = method_acls_.find(method_prefix);
  if (it == method_acls_.end()) return false;
  method_acls_.erase(it);
  return true;
}

bool AclStore::erase_user_mapping(std::string_view username) {
  auto it = user_map_.find(username);
  if (it == user_map_.end()) return false;
  user_map_.erase(it);
  return true;
}

const AccessControlList* AclStore::method_acl(std::string_view method_prefix) const {
  auto it = method_acls_.find(method_prefix);
  return it == method_acls_.end() ? nullptr : &it->second;
}

const AccessControlList* AclStore::user_mapping(std::string_view username) const {
  auto it = user_map_.find(username);
  return it == user_map_.end() ? nullptr : &it->second;
}

AclDecision AclStore::check_method_access(std::string_view method, std::string_view dn,
                                          const VoRegistry& registry) const {
  if (!is_valid_method_name(method))
    throw Error(Errc::MalformedMethodName, "invalid method name '" + std::string(method) + "'");
  for (auto& prefix : prefixes_most_specific_first(method)) {
    const AccessControlList* acl = method_acl(prefix);
    if (acl == nullptr) continue;
    AclDecision d = evaluate_level(*acl, dn, registry);
    if (d.verdict != Verdict::undecided) {
      d.decided_at = std::move(prefix);
      return d;
    }
  }
  return AclDecision{Verdict::deny, std::nullopt};
}

std::optional<std::string> AclStore::map_user(std::string_view dn,
                                              const VoRegistry& registry) const {
  std::optional<std::string> best;
  std::size_t best_len = 0;
  // Map iteration is in username order, so a strict '>' keeps the smallest
  // name among equal scores.
  for (const auto& [user, acl] : user_map_) {
    if (evaluate_level(acl, dn, registry).verdict != Verdict::allow) continue;
    const std::size_t len = acl.allow_dns.longest_prefix_match(dn).value_or(0);
    if (!best || len > best_len) {
      best = user;
      best_len = len;
    }
  }
  return best;
}

}  // namespace clarens
