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

#ifndef CLARENS_GATEWAY_HPP
#define CLARENS_GATEWAY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/audit.hpp"
#include "clarens/auth.hpp"
#include "clarens/config.hpp"
#include "clarens/kv_store.hpp"
#include "clarens/rpc_registry.hpp"
#include "clarens/services.hpp"
#include "clarens/session.hpp"

namespace clarens {

struct HttpRequest {
  std::string method;
  /// Decoded path without the query string.
  std::string path;
  /// Header names in lower case.
  std::map<std::string, std::string> headers;
  std::string body;
  std::string peer_address;
  bool secure = false;
  std::optional<Certificate> peer_certificate;
  std::vector<Certificate> peer_chain;

  std::string header(std::string_view lower_name) const;
};

struct HttpResponse {
  int status = 200;
  std::string content_type;
  std::string body;
};

/// "a=b; c=d" -> {a: b, c: d}. Later duplicates win.
std::map<std::string, std::string> parse_cookies(std::string_view header);
/// "Basic <base64 user:password>" -> (user, password). Splits at the first ':'.
std::optional<std::pair<std::string, std::string>> parse_basic_auth(std::string_view header);
/// <error><code>N</code><message>...</message></error>
std::string xml_error_document(int code, std::string_view message);
std::string content_type_for(const std::filesystem::path& file);

/// Loads the server certificate and key named by the config.
ServerIdentity load_server_identity(const GatewayConfig& cfg);
CaStore load_ca_store(const GatewayConfig& cfg);

/// Everything behind the HTTP listener: credential extraction, session
/// lookup, dispatch, GET file serving and auditing. Independent of the
/// HTTP library, so tests drive it directly.
class Gateway {
 public:
  /// Registers the built-in modules and the config's manifest, seeds
  /// default ACLs and purges expired sessions. The store must outlive the
  /// gateway.
  Gateway(GatewayConfig cfg, KvStore& store, ServerIdentity identity, CaStore ca_store,
          Authenticator::ClockFn clock = &now_ms);

  HttpResponse handle(const HttpRequest& request);

  /// For requests rejected before they reach handle() (oversized bodies,
  /// malformed HTTP).
  void audit_transport_error(std::string_view peer, std::string_view target, int status,
                             std::int64_t duration_ms);

  const GatewayConfig& config() const noexcept { return cfg_; }
  VoService& vo() noexcept { return vo_; }
  AclService& acls() noexcept { return acls_; }
  SessionStore& sessions() noexcept { return sessions_; }
  Authenticator& authenticator() noexcept { return auth_; }
  const ModuleRegistry& registry() const noexcept { return registry_; }
  AuditLog& audit() noexcept { return audit_; }

 private:
  struct Outcome {
    HttpResponse response;
    std::optional<std::string> dn;
    std::string target;
    std::string verdict;
  };

  Outcome handle_rpc(const HttpRequest& req);
  Outcome handle_file(const HttpRequest& req);
  std::optional<Session> resolve_session(const RequestCredentials& creds) const;
  RequestCredentials credentials_of(const HttpRequest& req) const;

  GatewayConfig cfg_;
  KvStore& store_;
  VoService vo_;
  AclService acls_;
  SessionStore sessions_;
  Authenticator auth_;
  ModuleRegistry registry_;
  AuditLog audit_;
};

}  // namespace clarens

#endif  // CLARENS_GATEWAY_HPP
