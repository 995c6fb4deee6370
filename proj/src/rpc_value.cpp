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

#include "clarens/rpc_value.hpp"

#include <cstdio>
#include <ctime>

#include "clarens/error.hpp"

namespace clarens {

namespace detail {

void throw_type_mismatch(std::string_view wanted, std::string_view got) {
  throw Error(Errc::BadArguments,
              "expected " + std::string(wanted) + ", got " + std::string(got));
}

}  // namespace detail

std::string_view RpcValue::type_name() const noexcept {
  return std::visit(
      [](const auto& x) -> std::string_view {
        return detail::rpc_type_name<std::decay_t<decltype(x)>>();
      },
      v_);
}

namespace {

void render(const RpcValue& v, std::string& out) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int32_t>) {
          out += std::to_string(x);
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += x;
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", x);
          out += buf;
        } else if constexpr (std::is_same_v<T, DateTime>) {
          const std::time_t t = x.time.time_since_epoch().count();
          std::tm tm{};
          gmtime_r(&t, &tm);
          char buf[32];
          std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
          out += buf;
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += "<" + std::to_string(x.bytes.size()) + " bytes>";
        } else if constexpr (std::is_same_v<T, RpcValue::Array>) {
          out += '[';
          for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out += ", ";
            render(x[i], out);
          }
          out += ']';
        } else {
          out += '{';
          bool first = true;
          for (const auto& [k, e] : x) {
            if (!first) out += ", ";
            first = false;
            out += k;
            out += ": ";
            render(e, out);
          }
          out += '}';
        }
      },
      v.variant());
}

}  // namespace

std::string to_display_string(const RpcValue& v) {
  std::string out;
  render(v, out);
  return out;
}

}  // namespace clarens
