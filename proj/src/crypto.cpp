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

#include "clarens/crypto.hpp"

#include <openssl/bio.h>
#include <openssl/crypto.h>
#include <openssl/err.h>
#include <openssl/pem.h>
#include <openssl/rand.h>
#include <openssl/rsa.h>
#include <openssl/x509_vfy.h>

#include <cctype>
#include <memory>

#include "clarens/error.hpp"

namespace clarens {

namespace {

struct BioFree {
  void operator()(BIO* p) const noexcept { BIO_free(p); }
};
using BioPtr = std::unique_ptr<BIO, BioFree>;

struct CtxFree {
  void operator()(EVP_PKEY_CTX* p) const noexcept { EVP_PKEY_CTX_free(p); }
};
using PkeyCtxPtr = std::unique_ptr<EVP_PKEY_CTX, CtxFree>;

struct MdCtxFree {
  void operator()(EVP_MD_CTX* p) const noexcept { EVP_MD_CTX_free(p); }
};
using MdCtxPtr = std::unique_ptr<EVP_MD_CTX, MdCtxFree>;

struct StoreCtxFree {
  void operator()(X509_STORE_CTX* p) const noexcept { X509_STORE_CTX_free(p); }
};

struct StackFree {
  void operator()(STACK_OF(X509)* p) const noexcept { sk_X509_free(p); }
};

std::string openssl_error() {
  const unsigned long e = ERR_get_error();
  ERR_clear_error();
  if (e == 0) return "unknown OpenSSL error";
  char buf[256];
  ERR_error_string_n(e, buf, sizeof buf);
  return buf;
}

[[noreturn]] void fail(Errc code, std::string_view what) {
  throw Error(code, std::string(what) + ": " + openssl_error());
}

BioPtr memory_bio(std::string_view data) {
  BioPtr bio(BIO_new_mem_buf(data.data(), static_cast<int>(data.size())));
  if (!bio) fail(Errc::CryptoFailure, "BIO_new_mem_buf");
  return bio;
}

std::string drain(BIO* bio) {
  char* data = nullptr;
  const long n = BIO_get_mem_data(bio, &data);
  return std::string(data, static_cast<std::size_t>(n));
}

std::string name_oneline(const X509_NAME* name) {
  char* text = X509_NAME_oneline(name, nullptr, 0);
  if (text == nullptr) fail(Errc::CryptoFailure, "X509_NAME_oneline");
  std::string out(text);
  OPENSSL_free(text);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Key

Key::Key(EVP_PKEY* pkey) : pkey_(pkey, detail::PkeyFree{}) {}

Key Key::private_from_pem(std::string_view pem) {
  auto bio = memory_bio(pem);
  EVP_PKEY* pkey = PEM_read_bio_PrivateKey(bio.get(), nullptr, nullptr, nullptr);
  if (pkey == nullptr) fail(Errc::MalformedKey, "cannot parse private key");
  return Key(pkey);
}

Key Key::public_from_pem(std::string_view pem) {
  auto bio = memory_bio(pem);
  EVP_PKEY* pkey = PEM_read_bio_PUBKEY(bio.get(), nullptr, nullptr, nullptr);
  if (pkey == nullptr) fail(Errc::MalformedKey, "cannot parse public key");
  return Key(pkey);
}

std::string Key::private_pem() const {
  BioPtr bio(BIO_new(BIO_s_mem()));
  if (!PEM_write_bio_PrivateKey(bio.get(), get(), nullptr, nullptr, 0, nullptr, nullptr))
    fail(Errc::CryptoFailure, "PEM_write_bio_PrivateKey");
  return drain(bio.get());
}

std::string Key::public_pem() const {
  BioPtr bio(BIO_new(BIO_s_mem()));
  if (!PEM_write_bio_PUBKEY(bio.get(), get())) fail(Errc::CryptoFailure, "PEM_write_bio_PUBKEY");
  return drain(bio.get());
}

bool Key::is_rsa() const { return pkey_ && EVP_PKEY_get_base_id(get()) == EVP_PKEY_RSA; }

std::size_t Key::size_bytes() const {
  return pkey_ ? static_cast<std::size_t>(EVP_PKEY_get_size(get())) : 0;
}

// ---------------------------------------------------------------- Certificate

Certificate::Certificate(X509* cert) : cert_(cert, detail::X509Free{}) {}

Certificate Certificate::from_pem(std::string_view pem) {
  auto bio = memory_bio(pem);
  X509* cert = PEM_read_bio_X509(bio.get(), nullptr, nullptr, nullptr);
  if (cert == nullptr) fail(Errc::MalformedCertificate, "cannot parse certificate");
  return Certificate(cert);
}

std::vector<Certificate> Certificate::all_from_pem(std::string_view pem) {
  auto bio = memory_bio(pem);
  std::vector<Certificate> out;
  while (X509* cert = PEM_read_bio_X509(bio.get(), nullptr, nullptr, nullptr))
    out.emplace_back(cert);
  ERR_clear_error();  // the loop always ends on a "no start line" error
  if (out.empty()) throw Error(Errc::MalformedCertificate, "no certificate found in PEM data");
  return out;
}

std::string Certificate::pem() const {
  BioPtr bio(BIO_new(BIO_s_mem()));
  if (!PEM_write_bio_X509(bio.get(), get())) fail(Errc::CryptoFailure, "PEM_write_bio_X509");
  return drain(bio.get());
}

std::string Certificate::subject() const { return name_oneline(X509_get_subject_name(get())); }
std::string Certificate::issuer() const { return name_oneline(X509_get_issuer_name(get())); }

Key Certificate::public_key() const {
  EVP_PKEY* pkey = X509_get_pubkey(get());
  if (pkey == nullptr) fail(Errc::MalformedCertificate, "certificate has no usable public key");
  return Key(pkey);
}

// ---------------------------------------------------------------- CaStore

CaStore::CaStore(std::span<const Certificate> anchors) : anchors_(anchors.begin(), anchors.end()) {}

CaStore CaStore::from_pem(std::string_view pem) {
  auto certs = Certificate::all_from_pem(pem);
  return CaStore(certs);
}

std::string verify_certificate(const Certificate& leaf,
                               std::span<const Certificate> intermediates,
                               const CaStore& ca_store,
                               std::chrono::system_clock::time_point at) {
  if (ca_store.empty()) throw Error(Errc::ChainVerifyFailed, "no trusted CA configured");

  std::unique_ptr<X509_STORE, detail::StoreFree> store(X509_STORE_new());
  if (!store) fail(Errc::CryptoFailure, "X509_STORE_new");
  for (const auto& ca : ca_store.anchors())
    if (!X509_STORE_add_cert(store.get(), ca.get())) fail(Errc::CryptoFailure, "X509_STORE_add_cert");

  std::unique_ptr<STACK_OF(X509), StackFree> untrusted(sk_X509_new_null());
  for (const auto& c : intermediates) sk_X509_push(untrusted.get(), c.get());

  std::unique_ptr<X509_STORE_CTX, StoreCtxFree> ctx(X509_STORE_CTX_new());
  if (!ctx || !X509_STORE_CTX_init(ctx.get(), store.get(), leaf.get(), untrusted.get()))
    fail(Errc::CryptoFailure, "X509_STORE_CTX_init");
  X509_STORE_CTX_set_time(ctx.get(), 0, std::chrono::system_clock::to_time_t(at));

  if (X509_verify_cert(ctx.get()) != 1) {
    const int err = X509_STORE_CTX_get_error(ctx.get());
    ERR_clear_error();
    const std::string reason = X509_verify_cert_error_string(err);
    if (err == X509_V_ERR_CERT_HAS_EXPIRED || err == X509_V_ERR_CERT_NOT_YET_VALID)
      throw Error(Errc::ExpiredCertificate, "certificate outside its validity period: " + reason);
    throw Error(Errc::ChainVerifyFailed, "certificate chain verification failed: " + reason);
  }
  return leaf.subject();
}

// ---------------------------------------------------------------- asymmetric ops

std::size_t rsa_oaep_max_plaintext(const Key& public_key) {
  const std::size_t hash = 32;
  const std::size_t k = public_key.size_bytes();
  return k > 2 * hash + 2 ? k - 2 * hash - 2 : 0;
}

namespace {

PkeyCtxPtr oaep_ctx(const Key& key, bool encrypt) {
  PkeyCtxPtr ctx(EVP_PKEY_CTX_new(key.get(), nullptr));
  if (!ctx) fail(Errc::CryptoFailure, "EVP_PKEY_CTX_new");
  const int init = encrypt ? EVP_PKEY_encrypt_init(ctx.get()) : EVP_PKEY_decrypt_init(ctx.get());
  if (init <= 0 || EVP_PKEY_CTX_set_rsa_padding(ctx.get(), RSA_PKCS1_OAEP_PADDING) <= 0 ||
      EVP_PKEY_CTX_set_rsa_oaep_md(ctx.get(), EVP_sha256()) <= 0 ||
      EVP_PKEY_CTX_set_rsa_mgf1_md(ctx.get(), EVP_sha256()) <= 0)
    fail(Errc::CryptoFailure, "configuring RSA-OAEP");
  return ctx;
}

}  // namespace

Bytes rsa_oaep_encrypt(const Key& public_key, std::span<const std::uint8_t> plaintext) {
  if (!public_key.is_rsa()) throw Error(Errc::CryptoFailure, "RSA key required for encryption");
  auto ctx = oaep_ctx(public_key, true);
  std::size_t len = 0;
  if (EVP_PKEY_encrypt(ctx.get(), nullptr, &len, plaintext.data(), plaintext.size()) <= 0)
    fail(Errc::CryptoFailure, "EVP_PKEY_encrypt");
  Bytes out(len);
  if (EVP_PKEY_encrypt(ctx.get(), out.data(), &len, plaintext.data(), plaintext.size()) <= 0)
    fail(Errc::CryptoFailure, "EVP_PKEY_encrypt");
  out.resize(len);
  return out;
}

Bytes rsa_oaep_decrypt(const Key& private_key, std::span<const std::uint8_t> ciphertext) {
  if (!private_key.is_rsa()) throw Error(Errc::CryptoFailure, "RSA key required for decryption");
  auto ctx = oaep_ctx(private_key, false);
  std::size_t len = 0;
  if (EVP_PKEY_decrypt(ctx.get(), nullptr, &len, ciphertext.data(), ciphertext.size()) <= 0)
    fail(Errc::CryptoFailure, "EVP_PKEY_decrypt");
  Bytes out(len);
  if (EVP_PKEY_decrypt(ctx.get(), out.data(), &len, ciphertext.data(), ciphertext.size()) <= 0)
    fail(Errc::CryptoFailure, "decryption failed");
  out.resize(len);
  return out;
}

Bytes sign_sha256(const Key& private_key, std::span<const std::uint8_t> message) {
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestSignInit(ctx.get(), nullptr, EVP_sha256(), nullptr, private_key.get()) <= 0)
    fail(Errc::CryptoFailure, "EVP_DigestSignInit");
  std::size_t len = 0;
  if (EVP_DigestSign(ctx.get(), nullptr, &len, message.data(), message.size()) <= 0)
    fail(Errc::CryptoFailure, "EVP_DigestSign");
  Bytes sig(len);
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, message.data(), message.size()) <= 0)
    fail(Errc::CryptoFailure, "EVP_DigestSign");
  sig.resize(len);
  return sig;
}

bool verify_sha256(const Key& public_key, std::span<const std::uint8_t> message,
                   std::span<const std::uint8_t> signature) {
  MdCtxPtr ctx(EVP_MD_CTX_new());
  if (!ctx || EVP_DigestVerifyInit(ctx.get(), nullptr, EVP_sha256(), nullptr, public_key.get()) <= 0)
    fail(Errc::CryptoFailure, "EVP_DigestVerifyInit");
  const int rc = EVP_DigestVerify(ctx.get(), signature.data(), signature.size(), message.data(),
                                  message.size());
  ERR_clear_error();
  return rc == 1;
}

Bytes random_bytes(std::size_t n) {
  Bytes out(n);
  if (RAND_bytes(out.data(), static_cast<int>(n)) != 1) fail(Errc::CryptoFailure, "RAND_bytes");
  return out;
}

// ---------------------------------------------------------------- encodings

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                                static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::optional<Bytes> base64_decode(std::string_view text) {
  std::string clean;
  clean.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
  if (clean.size() % 4 != 0) return std::nullopt;
  if (clean.empty()) return Bytes{};
  Bytes out(clean.size() / 4 * 3);
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(clean.data()),
                                static_cast<int>(clean.size()));
  if (n < 0) return std::nullopt;
  // EVP_DecodeBlock keeps the zero bytes produced by '=' padding.
  std::size_t len = static_cast<std::size_t>(n);
  if (clean.back() == '=') --len;
  if (clean[clean.size() - 2] == '=') --len;
  out.resize(len);
  return out;
}

std::string hex_encode(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

bool constant_time_equal(std::string_view a, std::string_view b) noexcept {
  if (a.size() != b.size()) return false;
  return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

}  // namespace clarens
