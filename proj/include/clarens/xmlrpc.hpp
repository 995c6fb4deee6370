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

#ifndef CLARENS_XMLRPC_HPP
#define CLARENS_XMLRPC_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "clarens/rpc_value.hpp"

namespace clarens {

/// Fault codes carried in XML-RPC fault responses. Stable public API.
enum class FaultCode : std::int32_t {
  ParseError = 1,
  NoSuchMethod = 2,
  NotAuthorized = 3,
  HandlerError = 4,
  ProtocolError = 5,
};

struct Fault {
  std::int32_t code = 0;
  std::string message;
  friend bool operator==(const Fault&, const Fault&) = default;
};

struct MethodCall {
  std::string method;
  std::vector<RpcValue> params;
};

/// Either a value or a fault.
using MethodResponse = std::variant<RpcValue, Fault>;

/// Throws Error(ParseError) for malformed XML and Error(ProtocolError) for
/// well-formed XML that is not a valid methodCall (including SOAP envelopes
/// and unknown value tags).
MethodCall decode_call(std::string_view body);
MethodResponse decode_response(std::string_view body);

std::string encode_call(const MethodCall& call);
std::string encode_response(const RpcValue& value);
std::string encode_fault(std::int32_t code, std::string_view message);
inline std::string encode_fault(FaultCode code, std::string_view message) {
  return encode_fault(static_cast<std::int32_t>(code), message);
}

}  // namespace clarens

#endif  // CLARENS_XMLRPC_HPP
