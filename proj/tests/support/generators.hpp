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

#ifndef CLARENS_TESTS_GENERATORS_HPP
#define CLARENS_TESTS_GENERATORS_HPP

// Random inputs for property tests. Everything takes an explicit engine so
// a failing seed can be replayed.

#include <chrono>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "clarens/rpc_value.hpp"
#include "clarens/vo_registry.hpp"
#include "oracles.hpp"

namespace clarens::testing {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline std::string random_word(Rng& rng, std::size_t min_len, std::size_t max_len,
                               std::string_view alphabet =
                                   "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 .-") {
  const std::size_t len = min_len + pick(rng, max_len - min_len + 1);
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[pick(rng, alphabet.size())]);
  return s;
}

/// "/O=<org>/OU=<unit>/CN=<name> <digits>"-like strings. A small pool of
/// organizations keeps plenty of shared prefixes around.
inline std::string random_dn(Rng& rng) {
  static const char* orgs[] = {"doesciencegrid.org", "doesg.org", "cern.ch", "caltech.edu",
                               "ufl.edu", "fnal.gov", "olduni"};
  static const char* units[] = {"People", "Services", "physics", "CACR", "HEP"};
  std::string dn = "/O=";
  dn += orgs[pick(rng, std::size(orgs))];
  if (pick(rng, 4) != 0) {
    dn += "/OU=";
    dn += units[pick(rng, std::size(units))];
  }
  dn += "/CN=" + random_word(rng, 1, 12, "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ ");
  if (pick(rng, 2)) dn += " " + std::to_string(pick(rng, 100000));
  return dn;
}

inline RpcValue random_value(Rng& rng, int depth = 0) {
  const int kinds = depth >= 5 ? 6 : 8;
  switch (pick(rng, kinds)) {
    case 0: return static_cast<std::int32_t>(static_cast<std::uint32_t>(rng()));
    case 1: return pick(rng, 2) == 1;
    case 2: {
      // Printable text plus the characters XML must escape.
      return random_word(rng, 0, 24, "abcXYZ019 <>&\"'\t\n;:/=");
    }
    case 3: {
      const double choices[] = {0.0, -1.5, 3.25, 1e-9, 6.02e23, -7.0e-300};
      if (pick(rng, 2)) return choices[pick(rng, std::size(choices))];
      return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
    }
    case 4: {
      const auto secs = static_cast<std::int64_t>(pick(rng, 4'000'000'000ULL));
      return DateTime{std::chrono::sys_seconds(std::chrono::seconds(secs))};
    }
    case 5: {
      Binary b;
      const std::size_t n = pick(rng, 40);
      for (std::size_t i = 0; i < n; ++i) b.bytes.push_back(static_cast<std::uint8_t>(rng()));
      return b;
    }
    case 6: {
      RpcValue::Array a;
      const std::size_t n = pick(rng, 5);
      for (std::size_t i = 0; i < n; ++i) a.push_back(random_value(rng, depth + 1));
      return a;
    }
    default: {
      RpcValue::Struct s;
      const std::size_t n = pick(rng, 5);
      for (std::size_t i = 0; i < n; ++i)
        s[random_word(rng, 1, 8, "abcdefgh_XYZ0 ")] = random_value(rng, depth + 1);
      return s;
    }
  }
}

/// Group tree of at most `max_depth` levels with DN fragments and full DNs
/// sprinkled into member and administrator lists. `dn_pool` receives every
/// DN used, plus a few that appear nowhere.
inline oracle::Registry random_registry(Rng& rng, std::vector<std::string>& dn_pool,
                                        int max_depth = 4) {
  dn_pool.clear();
  for (int i = 0; i < 12; ++i) dn_pool.push_back(random_dn(rng));
  // Fragments: whole leading attributes of some pool DNs.
  std::vector<std::string> entries = dn_pool;
  for (int i = 0; i < 4; ++i) {
    const std::string& dn = dn_pool[pick(rng, dn_pool.size())];
    entries.push_back(dn.substr(0, dn.find("/", 1)));
  }

  oracle::Registry reg;
  std::vector<std::string> frontier;
  const std::size_t roots = 1 + pick(rng, 3);
  for (std::size_t i = 0; i < roots; ++i) frontier.push_back("G" + std::to_string(i));
  while (!frontier.empty()) {
    std::string path = frontier.back();
    frontier.pop_back();
    oracle::Group g;
    for (std::size_t n = pick(rng, 4); n > 0; --n) g.members.push_back(entries[pick(rng, entries.size())]);
    for (std::size_t n = pick(rng, 2); n > 0; --n)
      g.administrators.push_back(entries[pick(rng, entries.size())]);
    reg[path] = g;
    const auto depth = std::count(path.begin(), path.end(), '.') + 1;
    if (depth < max_depth)
      for (std::size_t c = pick(rng, 3); c > 0; --c) frontier.push_back(path + ".S" + std::to_string(c));
  }
  for (int i = 0; i < 3; ++i) dn_pool.push_back(random_dn(rng));
  reg["admins"].members.push_back(dn_pool[pick(rng, dn_pool.size())]);
  return reg;
}

/// The same registry as a VoRegistry; "admins" members become the
/// bootstrap list.
inline VoRegistry to_vo_registry(const oracle::Registry& reg) {
  std::vector<VoGroup> groups;
  std::vector<std::string> admins;
  for (const auto& [path, g] : reg) {
    if (path == "admins") {
      admins = g.members;
      continue;
    }
    VoGroup v;
    v.path = path;
    for (const auto& m : g.members) v.members.insert(m);
    for (const auto& a : g.administrators) v.administrators.insert(a);
    groups.push_back(std::move(v));
  }
  return VoRegistry::bootstrap(admins, std::move(groups));
}

}  // namespace clarens::testing

#endif  // CLARENS_TESTS_GENERATORS_HPP
