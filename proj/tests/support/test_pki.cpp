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

#include "test_pki.hpp"

#include <openssl/bn.h>
#include <openssl/pem.h>
#include <openssl/rsa.h>
#include <openssl/x509v3.h>

#include <atomic>
#include <fstream>
#include <stdexcept>

#include "clarens/dn.hpp"

namespace clarens::testing {

namespace {

void check(bool ok, const char* what) {
  if (!ok) throw std::runtime_error(std::string("test PKI: ") + what);
}

X509_NAME* name_from_dn(const std::string& dn) {
  X509_NAME* name = X509_NAME_new();
  const DistinguishedName parsed = DistinguishedName::parse(dn);
  for (const auto& [attr, value] : parsed.attributes()) {
    const std::string field = attr == "Email" ? "emailAddress" : attr;
    check(X509_NAME_add_entry_by_txt(name, field.c_str(), MBSTRING_UTF8,
                                     reinterpret_cast<const unsigned char*>(value.data()),
                                     static_cast<int>(value.size()), -1, 0) == 1,
          "add name entry");
  }
  return name;
}

void add_ext(X509* cert, X509* issuer, int nid, const char* value) {
  X509V3_CTX ctx;
  X509V3_set_ctx_nodb(&ctx);
  X509V3_set_ctx(&ctx, issuer, cert, nullptr, nullptr, 0);
  X509_EXTENSION* ext = X509V3_EXT_conf_nid(nullptr, &ctx, nid, value);
  check(ext != nullptr, "extension");
  X509_add_ext(cert, ext, -1);
  X509_EXTENSION_free(ext);
}

Issued build(const std::string& subject, const Key& key, X509* issuer_cert, const Key& issuer_key,
             const IssueOptions& opt) {
  static std::atomic<long> serial{1000};
  X509* x = X509_new();
  check(x != nullptr, "X509_new");
  X509_set_version(x, 2);
  ASN1_INTEGER_set(X509_get_serialNumber(x), serial++);
  X509_gmtime_adj(X509_getm_notBefore(x), static_cast<long>(opt.not_before.count()));
  X509_gmtime_adj(X509_getm_notAfter(x), static_cast<long>(opt.not_after.count()));
  X509_NAME* name = name_from_dn(subject);
  X509_set_subject_name(x, name);
  X509_set_issuer_name(x, issuer_cert ? X509_get_subject_name(issuer_cert) : name);
  X509_NAME_free(name);
  X509_set_pubkey(x, key.get());

  X509* issuer = issuer_cert ? issuer_cert : x;
  add_ext(x, issuer, NID_subject_key_identifier, "hash");
  add_ext(x, issuer, NID_authority_key_identifier, "keyid:always");
  if (opt.ca) {
    add_ext(x, issuer, NID_basic_constraints, "critical,CA:TRUE");
    add_ext(x, issuer, NID_key_usage, "critical,keyCertSign,cRLSign");
  } else {
    add_ext(x, issuer, NID_basic_constraints, "critical,CA:FALSE");
    add_ext(x, issuer, NID_key_usage, "critical,digitalSignature,keyEncipherment");
    add_ext(x, issuer, NID_ext_key_usage, opt.server ? "serverAuth,clientAuth" : "clientAuth");
    if (opt.server) add_ext(x, issuer, NID_subject_alt_name, "DNS:localhost,IP:127.0.0.1");
  }
  check(X509_sign(x, issuer_key.get(), EVP_sha256()) > 0, "sign");

  Issued out;
  out.cert = Certificate(x);
  out.key = key;
  out.cert_pem = out.cert.pem();
  out.key_pem = key.private_pem();
  out.subject = subject;
  return out;
}

}  // namespace

Key generate_rsa_key(int bits) {
  EVP_PKEY* pkey = EVP_RSA_gen(static_cast<unsigned>(bits));
  check(pkey != nullptr, "RSA keygen");
  return Key(pkey);
}

Issued make_ca(const std::string& subject) {
  Key key = generate_rsa_key();
  IssueOptions opt;
  opt.ca = true;
  opt.not_after = std::chrono::hours(24 * 365);
  return build(subject, key, nullptr, key, opt);
}

Issued issue(const Issued& issuer, const std::string& subject, const IssueOptions& opt) {
  return build(subject, generate_rsa_key(opt.key_bits), issuer.cert.get(), issuer.key, opt);
}

const TestPki& shared_pki() {
  static const TestPki pki = [] {
    TestPki p;
    p.ca = make_ca("/C=US/O=Clarens Test/CN=Test CA");
    p.server = issue(p.ca, "/C=US/O=Clarens Test/CN=localhost", {.server = true});
    p.client = issue(p.ca, "/O=doesg.org/OU=People/CN=John Smith");
    p.other_client = issue(p.ca, "/O=olduni/OU=physics/CN=Old Account");
    p.expired_client = issue(p.ca, "/O=doesg.org/OU=People/CN=Expired User",
                             {.not_before = std::chrono::hours(-48), .not_after = std::chrono::hours(-24)});
    p.future_client = issue(p.ca, "/O=doesg.org/OU=People/CN=Future User",
                            {.not_before = std::chrono::hours(24), .not_after = std::chrono::hours(48)});
    p.rogue_ca = make_ca("/C=XX/O=Rogue/CN=Rogue CA");
    p.rogue_client = issue(p.rogue_ca, "/O=doesg.org/OU=People/CN=John Smith");
    p.intermediate = issue(p.ca, "/C=US/O=Clarens Test/CN=Intermediate CA",
                           {.not_after = std::chrono::hours(24 * 300), .ca = true});
    p.chained_client = issue(p.intermediate, "/O=doesg.org/OU=People/CN=Ng Siong");
    return p;
  }();
  return pki;
}

PkiFiles write_pki(const TestPki& pki, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  auto put = [&](const char* name, const std::string& text) {
    const auto p = dir / name;
    std::ofstream(p, std::ios::binary) << text;
    return p;
  };
  PkiFiles f;
  f.ca = put("ca.pem", pki.ca.cert_pem);
  f.server_cert = put("server.pem", pki.server.cert_pem);
  f.server_key = put("server.key", pki.server.key_pem);
  f.client_cert = put("client.pem", pki.client.cert_pem);
  f.client_key = put("client.key", pki.client.key_pem);
  f.other_cert = put("other.pem", pki.other_client.cert_pem);
  f.other_key = put("other.key", pki.other_client.key_pem);
  f.rogue_ca = put("rogue-ca.pem", pki.rogue_ca.cert_pem);
  return f;
}

}  // namespace clarens::testing
