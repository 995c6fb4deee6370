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

#include "clarens/dotted_name.hpp"

#include <algorithm>
#include <cctype>

namespace clarens {

namespace {

bool is_method_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

}  // namespace

std::vector<std::string> split_dotted(std::string_view name) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t dot = name.find('.', start);
    parts.emplace_back(name.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

std::vector<std::string> strict_ancestors(std::string_view name) {
  std::vector<std::string> out;
  for (std::size_t dot = name.find('.'); dot != std::string_view::npos;
       dot = name.find('.', dot + 1))
    out.emplace_back(name.substr(0, dot));
  return out;
}

std::vector<std::string> prefixes_most_specific_first(std::string_view name) {
  auto out = strict_ancestors(name);
  out.emplace_back(name);
  std::reverse(out.begin(), out.end());
  return out;
}

std::string parent_of(std::string_view name) {
  const std::size_t dot = name.rfind('.');
  return dot == std::string_view::npos ? std::string() : std::string(name.substr(0, dot));
}

bool is_within(std::string_view name, std::string_view ancestor) {
  if (name.size() < ancestor.size() || name.substr(0, ancestor.size()) != ancestor) return false;
  return name.size() == ancestor.size() || name[ancestor.size()] == '.';
}

bool is_valid_group_path(std::string_view path) {
  if (path.empty()) return false;
  for (const auto& seg : split_dotted(path)) {
    if (seg.empty()) return false;
    for (unsigned char c : seg)
      if (c <= 0x20 || c == 0x7f) return false;
  }
  return true;
}

bool is_valid_method_name(std::string_view name) {
  if (name.empty()) return false;
  auto parts = split_dotted(name);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::string_view seg = parts[i];
    if (i == 0 && !seg.empty() && seg.front() == '~') seg.remove_prefix(1);
    if (seg.empty() || !std::all_of(seg.begin(), seg.end(), is_method_char)) return false;
  }
  return true;
}

bool is_valid_username(std::string_view name) {
  if (name.empty()) return false;
  const auto first = static_cast<unsigned char>(name.front());
  if (!(std::isalpha(first) || first == '_')) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.' || c == '-';
  });
}

}  // namespace clarens
