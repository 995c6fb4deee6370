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

#include "clarens/auth.hpp"

#include <openssl/x509.h>

#include "clarens/error.hpp"

namespace clarens {

namespace {

constexpr std::size_t kServerIdBytes = 32;

DistinguishedName subject_dn_of(const Certificate& cert) {
  const std::string subject = cert.subject();
  auto dn = DistinguishedName::try_parse(subject);
  if (!dn) throw Error(Errc::MalformedCertificate, "certificate subject '" + subject + "' is not a DN");
  return std::move(*dn);
}

std::chrono::system_clock::time_point wall(TimePoint t) {
  return std::chrono::time_point_cast<std::chrono::system_clock::duration>(t);
}

}  // namespace

CertificateBundle CertificateBundle::from_certificates(const Certificate& leaf,
                                                       std::span<const Certificate> chain) {
  CertificateBundle b;
  b.pem = leaf.pem();
  b.subject_dn = subject_dn_of(leaf);
  b.public_key = leaf.public_key();
  for (const auto& c : chain) b.issuer_chain.push_back(c.pem());
  return b;
}

CertificateBundle CertificateBundle::from_pem(std::string_view pem) {
  auto certs = Certificate::all_from_pem(pem);
  return from_certificates(certs.front(), std::span(certs).subspan(1));
}

DistinguishedName verify_chain(std::string_view cert_pem, const CaStore& ca_store, TimePoint now) {
  auto certs = Certificate::all_from_pem(cert_pem);
  verify_certificate(certs.front(), std::span(certs).subspan(1), ca_store, wall(now));
  return subject_dn_of(certs.front());
}

// ---------------------------------------------------------------- ServerIdentity

ServerIdentity ServerIdentity::from_pem(std::string_view cert_pem, std::string_view key_pem) {
  ServerIdentity id;
  auto certs = Certificate::all_from_pem(cert_pem);
  id.certificate = certs.front();
  id.chain.assign(certs.begin() + 1, certs.end());
  id.private_key = Key::private_from_pem(key_pem);
  if (X509_check_private_key(id.certificate.get(), id.private_key.get()) != 1)
    throw Error(Errc::CryptoFailure, "server private key does not match the server certificate");
  return id;
}

std::string ServerIdentity::certificate_chain_pem() const {
  std::string out = certificate.pem();
  for (const auto& c : chain) out += c.pem();
  return out;
}

// ---------------------------------------------------------------- Authenticator

Authenticator::Authenticator(ServerIdentity identity, CaStore ca_store, SessionStore& sessions,
                             std::chrono::seconds session_ttl, ClockFn clock)
    : identity_(std::move(identity)),
      ca_store_(std::move(ca_store)),
      sessions_(sessions),
      ttl_(session_ttl),
      clock_(std::move(clock)) {
  if (ttl_.count() <= 0) throw Error(Errc::ConfigError, "session TTL must be positive");
  // The client id has to fit one RSA-OAEP block of the server key: it is
  // echoed back under the server's private-key operation, and clients that
  // expect the original encrypt-with-private-key behaviour rely on that
  // bound. Non-RSA server keys get the same bound as a 2048-bit key.
  const std::size_t k = identity_.private_key.is_rsa() ? identity_.private_key.size_bytes() : 256;
  max_client_id_ = k - 2 * 32 - 2;
}

void Authenticator::check_client_id(std::string_view client_id) const {
  if (client_id.empty()) throw Error(Errc::InvalidClientId, "client session id is empty");
  if (client_id.size() > max_client_id_)
    throw Error(Errc::OversizedClientId, "client session id longer than " +
                                             std::to_string(max_client_id_) + " bytes");
  for (unsigned char c : client_id)
    if (c < 0x21 || c > 0x7e || c == ':' || c == ';' || c == ',' || c == '"' || c == '\\')
      throw Error(Errc::InvalidClientId,
                  "client session id must be printable ASCII without ':;,\"\\'");
}

Session Authenticator::open_session(std::string_view client_id, const DistinguishedName& dn,
                                    SessionOrigin origin) {
  Session s;
  s.client_id.assign(client_id);
  s.server_id = hex_encode(random_bytes(kServerIdBytes));
  s.dn = dn.str();
  s.created_at = clock_();
  s.expires_at = s.created_at + std::chrono::duration_cast<std::chrono::milliseconds>(ttl_);
  s.origin = origin;
  // Keyed by client_id: a repeated handshake replaces the previous pair.
  sessions_.put(s);
  return s;
}

TlsHandshakeResult Authenticator::handshake_tls(const std::optional<CertificateBundle>& peer,
                                                std::string_view cookie_user,
                                                std::string_view cookie_password) {
  if (!peer) throw Error(Errc::NoPeerCertificate, "system.auth2 requires a TLS client certificate");
  if (cookie_password != kBrowserPassword)
    throw Error(Errc::BadCookieProtocol, std::string(kCookiePassword) + " must be " +
                                             std::string(kBrowserPassword) + " to start a session");
  check_client_id(cookie_user);

  std::string chain = peer->pem;
  for (const auto& c : peer->issuer_chain) chain += c;
  const DistinguishedName dn = verify_chain(chain, ca_store_, clock_());

  const Session s = open_session(cookie_user, dn, SessionOrigin::tls_cookie);
  return TlsHandshakeResult{identity_.certificate_chain_pem(), s.server_id};
}

BasicHandshakeResult Authenticator::handshake_basic(std::string_view client_cert_pem,
                                                    std::string_view client_id) {
  const CertificateBundle bundle = CertificateBundle::from_pem(client_cert_pem);
  if (!bundle.public_key.is_rsa())
    throw Error(Errc::MalformedCertificate, "system.auth requires an RSA client key");
  check_client_id(client_id);
  const DistinguishedName dn = verify_chain(client_cert_pem, ca_store_, clock_());

  const Session s = open_session(client_id, dn, SessionOrigin::basic_exchange);
  BasicHandshakeResult r;
  r.server_certificate_pem = identity_.certificate_chain_pem();
  r.encrypted_server_id = base64_encode(rsa_oaep_encrypt(bundle.public_key, as_bytes(s.server_id)));
  r.signed_client_id = base64_encode(sign_sha256(identity_.private_key, as_bytes(client_id)));
  return r;
}

std::optional<Session> Authenticator::validate_session(std::string_view client_id,
                                                       std::string_view server_id) const {
  return sessions_.validate(client_id, server_id, clock_());
}

// ---------------------------------------------------------------- client side

std::string complete_basic_handshake(const BasicHandshakeResult& reply, std::string_view client_id,
                                     const Key& client_private_key, const CaStore& ca_store) {
  auto certs = Certificate::all_from_pem(reply.server_certificate_pem);
  verify_certificate(certs.front(), std::span(certs).subspan(1), ca_store,
                     std::chrono::system_clock::now());

  auto signature = base64_decode(reply.signed_client_id);
  if (!signature || !verify_sha256(certs.front().public_key(), as_bytes(client_id), *signature))
    throw Error(Errc::CryptoFailure, "server signature over the client session id does not verify");

  auto sealed = base64_decode(reply.encrypted_server_id);
  if (!sealed) throw Error(Errc::CryptoFailure, "encrypted server session id is not base64");
  return to_string(rsa_oaep_decrypt(client_private_key, *sealed));
}

}  // namespace clarens
