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

#ifndef CLARENS_HTTP_SERVER_HPP
#define CLARENS_HTTP_SERVER_HPP

#include <cstdint>
#include <memory>
#include <string>

#include "clarens/gateway.hpp"

namespace clarens {

/// Puts a Gateway behind an HTTP/1.1 listener. With TLS the server asks
/// for, but does not require, a client certificate; the certificate is
/// checked by the handshake code, not by the TLS layer.
class HttpServer {
 public:
  /// Throws Error(ConfigError) when TLS setup fails.
  HttpServer(Gateway& gateway, bool use_tls);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds; port 0 picks a free port. Returns the bound port.
  /// Throws Error(ConfigError) when binding fails.
  std::uint16_t bind(const std::string& host, std::uint16_t port);
  /// Serves until stop(). Call after bind().
  void run();
  void stop();
  void wait_until_ready() const;
  bool tls() const noexcept { return tls_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  bool tls_;
};

}  // namespace clarens

#endif  // CLARENS_HTTP_SERVER_HPP
