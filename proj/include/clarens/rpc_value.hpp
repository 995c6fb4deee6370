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

#ifndef CLARENS_RPC_VALUE_HPP
#define CLARENS_RPC_VALUE_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace clarens {

/// dateTime.iso8601 value, second resolution, UTC.
struct DateTime {
  std::chrono::sys_seconds time;
  friend bool operator==(const DateTime&, const DateTime&) = default;
};

/// base64 value.
struct Binary {
  std::vector<std::uint8_t> bytes;
  friend bool operator==(const Binary&, const Binary&) = default;
};

/// One XML-RPC value.
class RpcValue {
 public:
  using Array = std::vector<RpcValue>;
  using Struct = std::map<std::string, RpcValue>;
  using Variant = std::variant<std::int32_t, bool, std::string, double, DateTime, Binary, Array, Struct>;

  RpcValue() : v_(std::string()) {}
  RpcValue(std::int32_t i) : v_(i) {}
  RpcValue(bool b) : v_(b) {}
  RpcValue(double d) : v_(d) {}
  RpcValue(std::string s) : v_(std::move(s)) {}
  RpcValue(std::string_view s) : v_(std::string(s)) {}
  RpcValue(const char* s) : v_(std::string(s)) {}
  RpcValue(DateTime t) : v_(t) {}
  RpcValue(Binary b) : v_(std::move(b)) {}
  RpcValue(Array a) : v_(std::move(a)) {}
  RpcValue(Struct s) : v_(std::move(s)) {}

  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v_);
  }
  /// Throws Error(BadArguments) on a type mismatch.
  template <class T>
  const T& as() const;

  const Variant& variant() const noexcept { return v_; }

  /// XML-RPC type name: "int", "boolean", "string", "double",
  /// "dateTime.iso8601", "base64", "array" or "struct".
  std::string_view type_name() const noexcept;

  friend bool operator==(const RpcValue& a, const RpcValue& b) { return a.v_ == b.v_; }

 private:
  Variant v_;
};

namespace detail {
[[noreturn]] void throw_type_mismatch(std::string_view wanted, std::string_view got);
template <class T>
constexpr std::string_view rpc_type_name();
template <> constexpr std::string_view rpc_type_name<std::int32_t>() { return "int"; }
template <> constexpr std::string_view rpc_type_name<bool>() { return "boolean"; }
template <> constexpr std::string_view rpc_type_name<std::string>() { return "string"; }
template <> constexpr std::string_view rpc_type_name<double>() { return "double"; }
template <> constexpr std::string_view rpc_type_name<DateTime>() { return "dateTime.iso8601"; }
template <> constexpr std::string_view rpc_type_name<Binary>() { return "base64"; }
template <> constexpr std::string_view rpc_type_name<RpcValue::Array>() { return "array"; }
template <> constexpr std::string_view rpc_type_name<RpcValue::Struct>() { return "struct"; }
}  // namespace detail

template <class T>
const T& RpcValue::as() const {
  if (const T* p = std::get_if<T>(&v_)) return *p;
  detail::throw_type_mismatch(detail::rpc_type_name<T>(), type_name());
}

/// Compact human-readable rendering, for logs and the CLI.
std::string to_display_string(const RpcValue& v);

}  // namespace clarens

#endif  // CLARENS_RPC_VALUE_HPP
