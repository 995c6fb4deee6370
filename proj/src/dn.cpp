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

#include "clarens/dn.hpp"

#include <cctype>

#include "clarens/error.hpp"

namespace clarens {

namespace {

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '.' || c == '_' || c == '-';
}

// Length of "name=" starting right after a '/', or 0 if none.
std::size_t attribute_head(std::string_view s, std::size_t pos) {
  if (pos >= s.size() || !is_name_start(s[pos])) return 0;
  std::size_t i = pos + 1;
  while (i < s.size() && is_name_char(s[i])) ++i;
  if (i >= s.size() || s[i] != '=') return 0;
  return i - pos + 1;
}

}  // namespace

std::optional<DistinguishedName> DistinguishedName::try_parse(std::string_view raw) {
  if (raw.empty() || raw.front() != '/') return std::nullopt;
  if (raw.find('\0') != std::string_view::npos) return std::nullopt;

  DistinguishedName dn;
  dn.raw_.assign(raw);
  std::size_t pos = 0;
  while (pos < raw.size()) {
    // raw[pos] == '/'
    const std::size_t head = attribute_head(raw, pos + 1);
    if (head == 0) return std::nullopt;
    Attribute attr;
    attr.name.assign(raw.substr(pos + 1, head - 1));
    std::size_t value_start = pos + 1 + head;
    std::size_t end = value_start;
    for (;;) {
      end = raw.find('/', end);
      if (end == std::string_view::npos) {
        end = raw.size();
        break;
      }
      if (attribute_head(raw, end + 1) != 0) break;
      ++end;
    }
    attr.value.assign(raw.substr(value_start, end - value_start));
    if (attr.value.empty()) return std::nullopt;
    dn.attrs_.push_back(std::move(attr));
    pos = end;
  }
  return dn;
}

DistinguishedName DistinguishedName::parse(std::string_view raw) {
  auto dn = try_parse(raw);
  if (!dn) throw Error(Errc::MalformedDn, "malformed distinguished name: '" + std::string(raw) + "'");
  return std::move(*dn);
}

std::optional<std::string> DistinguishedName::get(std::string_view name) const {
  for (const auto& a : attrs_)
    if (a.name == name) return a.value;
  return std::nullopt;
}

std::string DistinguishedName::serialize() const {
  std::string out;
  for (const auto& a : attrs_) {
    out += '/';
    out += a.name;
    out += '=';
    out += a.value;
  }
  return out;
}

bool is_dn_shaped(std::string_view s) { return DistinguishedName::try_parse(s).has_value(); }

}  // namespace clarens
