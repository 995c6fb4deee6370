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

#ifndef CLARENS_RPC_REGISTRY_HPP
#define CLARENS_RPC_REGISTRY_HPP

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/acl.hpp"
#include "clarens/crypto.hpp"
#include "clarens/dn.hpp"
#include "clarens/rpc_value.hpp"
#include "clarens/session.hpp"
#include "clarens/vo_registry.hpp"
#include "clarens/xmlrpc.hpp"

namespace clarens {

/// Credentials the transport extracted from one request.
struct RequestCredentials {
  std::map<std::string, std::string> cookies;
  std::optional<std::string> basic_user;
  std::optional<std::string> basic_password;
  /// Leaf certificate presented during the TLS handshake, plus any chain
  /// certificates the client sent.
  std::optional<Certificate> peer_certificate;
  std::vector<Certificate> peer_chain;
  bool secure_transport = false;
};

/// What a handler sees about its caller.
struct CallContext {
  /// Set when the request carried valid session credentials.
  std::optional<Session> session;
  RequestCredentials credentials;
  std::string peer_address;

  /// The caller's DN, or the anonymous sentinel.
  std::string dn() const { return session ? session->dn : std::string(kAnonymousDn); }
};

/// Handlers report failures by throwing. RpcFault travels to the client as
/// is; clarens::Error(NotAuthorized) becomes fault 3; any other exception
/// becomes fault 4 with the error name prefixed to its message.
class RpcFault : public std::runtime_error {
 public:
  RpcFault(FaultCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  FaultCode code() const noexcept { return code_; }

 private:
  FaultCode code_;
};

using Handler = std::function<RpcValue(CallContext&, std::span<const RpcValue>)>;

/// Handlers that touch shared mutable state without their own locking
/// declare themselves exclusive; the dispatcher runs those one at a time.
enum class Concurrency { pure, exclusive };

struct MethodDescriptor {
  std::string full_name;
  Handler handler;
  /// XML-RPC introspection signatures, return type first ("string,string").
  std::vector<std::string> signatures;
  std::string help;
  Concurrency concurrency = Concurrency::pure;
};

/// All callable methods, grouped by module prefix ("echo", "mod.sub",
/// "~alice.tools"). Built at startup, read-only afterwards.
class ModuleRegistry {
 public:
  /// Every descriptor's full_name must be `prefix` followed by ".name".
  /// Throws BadPrefix, DuplicateMethod, MalformedMethodName.
  void register_module(std::string_view prefix, std::vector<MethodDescriptor> methods);

  const MethodDescriptor* find(std::string_view full_name) const;
  /// Sorted full names.
  std::vector<std::string> method_names() const;
  std::vector<std::string> module_prefixes() const;

  std::mutex& exclusive_mutex() const noexcept { return exclusive_; }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> modules_;
  std::map<std::string, MethodDescriptor, std::less<>> methods_;
  mutable std::mutex exclusive_;
};

struct DispatchResult {
  MethodResponse response;
  /// The ACL refused the call (response is then fault 3).
  bool denied = false;
  std::optional<std::string> decided_at;
};

/// Resolves `method`, checks the ACL for the caller's DN, runs the handler
/// and maps failures to faults. Never throws for caller-induced problems.
DispatchResult dispatch(const ModuleRegistry& registry, const AclStore& acls,
                        const VoRegistry& vo, CallContext& ctx, std::string_view method,
                        std::span<const RpcValue> args);

/// Argument helpers for handlers; they throw RpcFault(HandlerError) with a
/// readable message.
void expect_arity(std::span<const RpcValue> args, std::size_t min, std::size_t max);
const std::string& string_arg(std::span<const RpcValue> args, std::size_t i);
std::vector<std::string> string_list_arg(std::span<const RpcValue> args, std::size_t i);

}  // namespace clarens

#endif  // CLARENS_RPC_REGISTRY_HPP
