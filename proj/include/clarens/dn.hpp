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

#ifndef CLARENS_DN_HPP
#define CLARENS_DN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clarens {

/// DN used for callers that presented no credentials. It may appear in ACLs
/// like any other DN.
inline constexpr std::string_view kAnonymousDn = "/anonymous";

/// Certificate subject in slash form, e.g.
/// "/O=doesciencegrid.org/OU=People/CN=John Smith 12345".
///
/// A new attribute starts at a '/' followed by `name=`; any other '/' is part
/// of the current value, so "/OU=Services/CN=host /www.mysite.edu" has two
/// attributes. Attribute order is preserved and str() is always the exact
/// input.
class DistinguishedName {
 public:
  struct Attribute {
    std::string name;
    std::string value;
    friend bool operator==(const Attribute&, const Attribute&) = default;
  };

  DistinguishedName() = default;

  /// Throws Error(MalformedDn).
  static DistinguishedName parse(std::string_view raw);
  static std::optional<DistinguishedName> try_parse(std::string_view raw);

  const std::string& str() const noexcept { return raw_; }
  const std::vector<Attribute>& attributes() const noexcept { return attrs_; }

  /// First value of the named attribute (C, ST, L, O, OU, CN, Email, ...).
  std::optional<std::string> get(std::string_view name) const;

  std::string serialize() const;

  friend bool operator==(const DistinguishedName& a, const DistinguishedName& b) {
    return a.raw_ == b.raw_;
  }

 private:
  std::string raw_;
  std::vector<Attribute> attrs_;
};

/// True for strings usable as DN list entries: a full DN or an initial run
/// of whole attributes ("/O=doesciencegrid.org/OU=People").
bool is_dn_shaped(std::string_view s);

}  // namespace clarens

#endif  // CLARENS_DN_HPP
