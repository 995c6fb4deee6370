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

#ifndef CLARENS_RPC_CLIENT_HPP
#define CLARENS_RPC_CLIENT_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/auth.hpp"
#include "clarens/crypto.hpp"
#include "clarens/rpc_value.hpp"
#include "clarens/xmlrpc.hpp"

namespace clarens {

/// A fault returned by the server.
class RpcCallError : public std::runtime_error {
 public:
  explicit RpcCallError(Fault fault)
      : std::runtime_error("fault " + std::to_string(fault.code) + ": " + fault.message),
        fault_(std::move(fault)) {}
  const Fault& fault() const noexcept { return fault_; }

 private:
  Fault fault_;
};

struct ParsedUrl {
  bool https = false;
  std::string host;
  std::uint16_t port = 0;
  std::string path = "/";
};

/// "http[s]://host[:port][/path]". Throws Error(ConfigError).
ParsedUrl parse_url(std::string_view url);

struct ClientTls {
  /// Trust anchors for the server certificate. Required for https.
  std::optional<CaStore> ca;
  /// Presented during the TLS handshake when set.
  std::optional<Certificate> certificate;
  std::optional<Key> key;
};

struct RawResponse {
  int status = 0;
  std::string content_type;
  std::string body;
};

/// XML-RPC over HTTP(S) with either Clarens session mode.
class RpcClient {
 public:
  enum class SessionMode { basic, cookie };

  /// `url` names the RPC endpoint, e.g. "https://host:8443/clarens/".
  explicit RpcClient(std::string_view url, ClientTls tls = {});
  ~RpcClient();
  RpcClient(RpcClient&&) noexcept;
  RpcClient& operator=(RpcClient&&) noexcept;

  /// Throws Error(StorageFailure) on transport failure, Error(ProtocolError)
  /// on a non-200 or undecodable reply.
  MethodResponse call_raw(std::string_view method, std::vector<RpcValue> params = {});
  /// As call_raw; a fault becomes RpcCallError.
  RpcValue call(std::string_view method, std::vector<RpcValue> params = {});

  /// system.auth with this client's certificate; completes the exchange
  /// (decrypt, verify) and keeps the session. Returns the server id.
  std::string authenticate_basic(const Certificate& client_cert, const Key& client_key,
                                 std::string client_id = {});
  /// system.auth2 over TLS with the certificate from ClientTls. Returns the
  /// server id.
  std::string authenticate_tls(std::string client_id = {});

  void set_session(std::string client_id, std::string server_id, SessionMode mode);
  void clear_session();
  const std::optional<std::string>& client_id() const noexcept { return client_id_; }
  const std::optional<std::string>& server_id() const noexcept { return server_id_; }

  /// Plain requests with the current session credentials attached; used for
  /// file GETs and transport tests.
  RawResponse get(std::string_view path);
  RawResponse post(std::string_view path, std::string body, std::string content_type);

  const ParsedUrl& url() const noexcept { return url_; }

 private:
  struct Impl;
  std::vector<std::pair<std::string, std::string>> auth_headers() const;

  std::unique_ptr<Impl> impl_;
  ParsedUrl url_;
  ClientTls tls_;
  std::optional<std::string> client_id_;
  std::optional<std::string> server_id_;
  SessionMode mode_ = SessionMode::basic;
  std::optional<std::pair<std::string, std::string>> pending_basic_;
  std::optional<std::string> pending_cookie_user_;
};

/// 32 random bytes, hex encoded.
std::string random_client_id();

}  // namespace clarens

#endif  // CLARENS_RPC_CLIENT_HPP
