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

#ifndef CLARENS_CRYPTO_HPP
#define CLARENS_CRYPTO_HPP

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <openssl/evp.h>
#include <openssl/x509.h>

namespace clarens {

using Bytes = std::vector<std::uint8_t>;

namespace detail {
struct X509Free {
  void operator()(X509* p) const noexcept { X509_free(p); }
};
struct PkeyFree {
  void operator()(EVP_PKEY* p) const noexcept { EVP_PKEY_free(p); }
};
struct StoreFree {
  void operator()(X509_STORE* p) const noexcept { X509_STORE_free(p); }
};
}  // namespace detail

/// Public or private key. Shares the underlying EVP_PKEY.
class Key {
 public:
  Key() = default;
  /// Takes ownership.
  explicit Key(EVP_PKEY* pkey);

  /// PEM private key (PKCS#8 or traditional). Throws MalformedKey.
  static Key private_from_pem(std::string_view pem);
  /// PEM "PUBLIC KEY". Throws MalformedKey.
  static Key public_from_pem(std::string_view pem);

  std::string private_pem() const;
  std::string public_pem() const;
  bool is_rsa() const;
  /// Modulus size in bytes for RSA keys.
  std::size_t size_bytes() const;

  EVP_PKEY* get() const noexcept { return pkey_.get(); }
  explicit operator bool() const noexcept { return pkey_ != nullptr; }

 private:
  std::shared_ptr<EVP_PKEY> pkey_;
};

class Certificate {
 public:
  Certificate() = default;
  /// Takes ownership.
  explicit Certificate(X509* cert);

  /// First certificate in `pem`. Throws MalformedCertificate.
  static Certificate from_pem(std::string_view pem);
  /// Every certificate in `pem`, in order. Throws MalformedCertificate if
  /// there are none.
  static std::vector<Certificate> all_from_pem(std::string_view pem);

  std::string pem() const;
  /// Subject in slash form ("/C=US/O=Org/CN=Name").
  std::string subject() const;
  std::string issuer() const;
  Key public_key() const;

  X509* get() const noexcept { return cert_.get(); }
  explicit operator bool() const noexcept { return cert_ != nullptr; }

 private:
  std::shared_ptr<X509> cert_;
};

/// Trust anchors for chain verification.
class CaStore {
 public:
  CaStore() = default;
  explicit CaStore(std::span<const Certificate> anchors);
  /// All certificates in the PEM text become anchors.
  static CaStore from_pem(std::string_view pem);

  bool empty() const noexcept { return anchors_.empty(); }
  const std::vector<Certificate>& anchors() const noexcept { return anchors_; }

 private:
  std::vector<Certificate> anchors_;
};

/// Verifies `leaf` against the anchors using `intermediates` as untrusted
/// chain material, at time `at`. Returns the leaf subject in slash form.
/// Throws ExpiredCertificate for validity-window failures anywhere in the
/// chain, ChainVerifyFailed otherwise.
std::string verify_certificate(const Certificate& leaf,
                               std::span<const Certificate> intermediates,
                               const CaStore& ca_store,
                               std::chrono::system_clock::time_point at);

/// RSA-OAEP with SHA-256 and MGF1-SHA-256.
Bytes rsa_oaep_encrypt(const Key& public_key, std::span<const std::uint8_t> plaintext);
/// Throws CryptoFailure when the ciphertext was not made for this key.
Bytes rsa_oaep_decrypt(const Key& private_key, std::span<const std::uint8_t> ciphertext);
/// Largest plaintext rsa_oaep_encrypt accepts for this key.
std::size_t rsa_oaep_max_plaintext(const Key& public_key);

/// SHA-256 signature (PKCS#1 v1.5 for RSA keys, ECDSA for EC keys).
Bytes sign_sha256(const Key& private_key, std::span<const std::uint8_t> message);
bool verify_sha256(const Key& public_key, std::span<const std::uint8_t> message,
                   std::span<const std::uint8_t> signature);

Bytes random_bytes(std::size_t n);

std::string base64_encode(std::span<const std::uint8_t> data);
/// Ignores ASCII whitespace. Returns nullopt on invalid input.
std::optional<Bytes> base64_decode(std::string_view text);
std::string hex_encode(std::span<const std::uint8_t> data);

bool constant_time_equal(std::string_view a, std::string_view b) noexcept;

inline std::span<const std::uint8_t> as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}
inline std::string to_string(std::span<const std::uint8_t> b) {
  return {reinterpret_cast<const char*>(b.data()), b.size()};
}

}  // namespace clarens

#endif  // CLARENS_CRYPTO_HPP
