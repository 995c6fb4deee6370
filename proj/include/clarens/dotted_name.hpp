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

#ifndef CLARENS_DOTTED_NAME_HPP
#define CLARENS_DOTTED_NAME_HPP

#include <string>
#include <string_view>
#include <vector>

namespace clarens {

std::vector<std::string> split_dotted(std::string_view name);

/// "A.B.C" -> {"A", "A.B"}. Outermost first.
std::vector<std::string> strict_ancestors(std::string_view name);

/// "A.B.C" -> {"A.B.C", "A.B", "A"}. Most specific first.
std::vector<std::string> prefixes_most_specific_first(std::string_view name);

std::string parent_of(std::string_view name);

/// True if `name` equals `ancestor` or lies below it.
bool is_within(std::string_view name, std::string_view ancestor);

/// VO group path: non-empty segments without dots, whitespace or control
/// bytes. Case-sensitive.
bool is_valid_group_path(std::string_view path);

/// RPC method name or prefix: "mod", "mod.meth", "mod.sub.meth", optionally
/// user-scoped as "~user.mod.meth" ("~user" alone is a valid ACL prefix).
/// Segments are [A-Za-z0-9_-]+.
bool is_valid_method_name(std::string_view name);

/// System account name for DN mapping: [A-Za-z_][A-Za-z0-9_.-]*.
bool is_valid_username(std::string_view name);

}  // namespace clarens

#endif  // CLARENS_DOTTED_NAME_HPP
