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


#ifndef CLARENS_TESTS_TABLE_ONE_HPP
#define CLARENS_TESTS_TABLE_ONE_HPP

// The two-level "mod" / "mod.meth" ACL example, with a VO to go with it.

#include <string>
#include <vector>

#include "clarens/acl.hpp"
#include "clarens/vo_registry.hpp"

namespace clarens::testing {

inline const std::string kJohnSmith = "/O=doesg.org/OU=People/CN=John Smith";
inline const std::string kNgSiong = "/O=doesg.org/OU=People/CN=Ng Siong";
inline const std::string kOldAccount = "/O=olduni/OU=physics/CN=Old Account";
inline const std::string kEdPeng = "/O=Caltech/OU=CACR/CN=Ed Peng";

// VO residents used by the decision matrix.
inline const std::string kCracker = "/O=badguys.net/OU=Users/CN=Cracker";
inline const std::string kCaltechMember = "/O=caltech.edu/OU=HEP/CN=Caltech Member";
inline const std::string kUsaMember = "/O=fnal.gov/OU=People/CN=USA Member";
inline const std::string kVoAdmin = "/O=doesg.org/OU=Admins/CN=VO Operator";

inline AccessControlList table_one_mod() {
  AccessControlList acl;
  acl.order = EvalOrder::deny_then_allow;
  acl.allow_dns.insert("/O=doesg.org/OU=People/CN=John Smith");
  acl.allow_dns.insert("/O=doesg.org/OU=People/CN=Ng Siong");
  acl.allow_groups = {"CMS.USA", "CMS.CERN"};
  acl.deny_dns.insert("/O=olduni/OU=physics/CN=Old Account");
  acl.deny_groups = {"crackers"};
  return acl;
}

inline AccessControlList table_one_mod_meth() {
  AccessControlList acl;
  acl.order = EvalOrder::deny_then_allow;
  acl.allow_groups = {"CMS.USA.Caltech", "CMS.USA.UFL"};
  acl.deny_dns.insert("/O=Caltech/OU=CACR/CN=Ed Peng");
  return acl;
}

inline AclStore table_one_store() {
  AclStore store;
  store.set_method_acl("mod", table_one_mod());
  store.set_method_acl("mod.meth", table_one_mod_meth());
  return store;
}

inline VoRegistry table_one_vo() {
  VoRegistry vo = VoRegistry::bootstrap(std::vector<std::string>{kVoAdmin});
  vo.create_group(kVoAdmin, "CMS");
  vo.create_group(kVoAdmin, "CMS.USA", std::vector<std::string>{kUsaMember});
  vo.create_group(kVoAdmin, "CMS.CERN");
  vo.create_group(kVoAdmin, "CMS.USA.Caltech", std::vector<std::string>{kCaltechMember});
  vo.create_group(kVoAdmin, "CMS.USA.UFL");
  vo.create_group(kVoAdmin, "crackers", std::vector<std::string>{kCracker});
  return vo;
}

struct MatrixCase {
  std::string label;
  std::string dn;
  std::string method;
  bool allow;
};

/// The seven decisions the example has to reproduce.
inline std::vector<MatrixCase> table_one_cases() {
  return {
      {"John Smith -> mod.*", kJohnSmith, "mod.anything", true},
      {"Ng Siong -> mod.*", kNgSiong, "mod.anything", true},
      {"crackers member -> mod.*", kCracker, "mod.anything", false},
      {"Ed Peng -> mod.meth", kEdPeng, "mod.meth", false},
      {"CMS.USA.Caltech member -> mod.meth", kCaltechMember, "mod.meth", true},
      {"CMS.USA member -> mod.meth", kUsaMember, "mod.meth", true},
      {"CMS.USA.Caltech-only member -> mod.other", kCaltechMember, "mod.other", false},
  };
}

}  // namespace clarens::testing

#endif  // CLARENS_TESTS_TABLE_ONE_HPP
