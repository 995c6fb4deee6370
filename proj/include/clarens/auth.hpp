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

#ifndef CLARENS_AUTH_HPP
#define CLARENS_AUTH_HPP

#include <chrono>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/crypto.hpp"
#include "clarens/dn.hpp"
#include "clarens/session.hpp"

namespace clarens {

inline constexpr std::string_view kCookieUser = "clarens_username";
inline constexpr std::string_view kCookiePassword = "clarens_password";
/// clarens_password value that asks for a new session over TLS.
inline constexpr std::string_view kBrowserPassword = "BROWSER";

/// A client certificate together with its parsed subject and key.
struct CertificateBundle {
  std::string pem;
  DistinguishedName subject_dn;
  Key public_key;
  /// Further certificates that arrived with the leaf (intermediates).
  std::vector<std::string> issuer_chain;

  /// Parses the first certificate of `pem` as the leaf and any others as
  /// the chain. Throws MalformedCertificate.
  static CertificateBundle from_pem(std::string_view pem);
  static CertificateBundle from_certificates(const Certificate& leaf,
                                             std::span<const Certificate> chain);
};

/// Checks `cert_pem` (leaf first, optional intermediates after it) against
/// the trust anchors at time `now`. Returns the leaf subject DN.
/// Throws MalformedCertificate, ChainVerifyFailed, ExpiredCertificate.
DistinguishedName verify_chain(std::string_view cert_pem, const CaStore& ca_store,
                               TimePoint now = now_ms());

struct TlsHandshakeResult {
  std::string server_certificate_pem;
  std::string server_id;
};

/// The three strings returned by system.auth.
struct BasicHandshakeResult {
  std::string server_certificate_pem;
  /// server_id encrypted to the client's key (RSA-OAEP/SHA-256), base64.
  std::string encrypted_server_id;
  /// Signature over client_id with the server key (SHA-256), base64.
  std::string signed_client_id;
};

struct ServerIdentity {
  Certificate certificate;
  Key private_key;
  /// Chain certificates sent along with the server certificate.
  std::vector<Certificate> chain;

  /// Throws MalformedCertificate, MalformedKey or CryptoFailure when the
  /// key does not belong to the certificate.
  static ServerIdentity from_pem(std::string_view cert_pem, std::string_view key_pem);
  std::string certificate_chain_pem() const;
};

/// Runs both session handshakes and validates session credentials.
class Authenticator {
 public:
  using ClockFn = std::function<TimePoint()>;

  Authenticator(ServerIdentity identity, CaStore ca_store, SessionStore& sessions,
                std::chrono::seconds session_ttl = std::chrono::hours(24),
                ClockFn clock = &now_ms);

  /// system.auth2 over TLS: the transport supplied `peer`, the client put
  /// its requested session id in clarens_username and "BROWSER" in
  /// clarens_password. Throws NoPeerCertificate, BadCookieProtocol,
  /// InvalidClientId, ChainVerifyFailed, ExpiredCertificate.
  TlsHandshakeResult handshake_tls(const std::optional<CertificateBundle>& peer,
                                   std::string_view cookie_user,
                                   std::string_view cookie_password);

  /// system.auth with Basic credentials username=client_id,
  /// password=client certificate PEM. Throws MalformedCertificate,
  /// ChainVerifyFailed, ExpiredCertificate, OversizedClientId,
  /// InvalidClientId.
  BasicHandshakeResult handshake_basic(std::string_view client_cert_pem, std::string_view client_id);

  std::optional<Session> validate_session(std::string_view client_id,
                                          std::string_view server_id) const;

  /// Longest client_id the Basic handshake accepts.
  std::size_t max_client_id_length() const noexcept { return max_client_id_; }

  const ServerIdentity& identity() const noexcept { return identity_; }
  const CaStore& ca_store() const noexcept { return ca_store_; }
  SessionStore& sessions() noexcept { return sessions_; }
  TimePoint now() const { return clock_(); }

 private:
  Session open_session(std::string_view client_id, const DistinguishedName& dn, SessionOrigin origin);
  void check_client_id(std::string_view client_id) const;

  ServerIdentity identity_;
  CaStore ca_store_;
  SessionStore& sessions_;
  std::chrono::seconds ttl_;
  ClockFn clock_;
  std::size_t max_client_id_;
};

/// Client half of the system.auth exchange: decrypts the server id with the
/// client key, checks the server's signature over `client_id` and verifies
/// the server certificate against `ca_store`. Returns the server id.
/// Throws CryptoFailure (wrong key, bad signature) or the verify_chain
/// errors.
std::string complete_basic_handshake(const BasicHandshakeResult& reply, std::string_view client_id,
                                     const Key& client_private_key, const CaStore& ca_store);

}  // namespace clarens

#endif  // CLARENS_AUTH_HPP
