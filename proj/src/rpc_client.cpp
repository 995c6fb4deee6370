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

#include "clarens/rpc_client.hpp"

#include <httplib.h>

#include <charconv>

#include "clarens/error.hpp"

namespace clarens {

ParsedUrl parse_url(std::string_view url) {
  ParsedUrl out;
  auto bad = [&] { return Error(Errc::ConfigError, "bad URL '" + std::string(url) + "'"); };
  std::string_view rest;
  if (url.substr(0, 8) == "https://") {
    out.https = true;
    rest = url.substr(8);
  } else if (url.substr(0, 7) == "http://") {
    rest = url.substr(7);
  } else {
    throw bad();
  }
  const std::size_t slash = rest.find('/');
  std::string_view authority = rest.substr(0, slash);
  if (slash != std::string_view::npos) out.path = std::string(rest.substr(slash));
  out.port = out.https ? 443 : 80;
  std::size_t colon = authority.rfind(':');
  if (!authority.empty() && authority.front() == '[') {
    const std::size_t close = authority.find(']');
    if (close == std::string_view::npos) throw bad();
    out.host = std::string(authority.substr(1, close - 1));
    colon = close + 1 < authority.size() && authority[close + 1] == ':' ? close + 1 : std::string_view::npos;
  } else {
    out.host = std::string(authority.substr(0, colon));
  }
  if (colon != std::string_view::npos) {
    auto p = authority.substr(colon + 1);
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), out.port);
    if (ec != std::errc() || ptr != p.data() + p.size()) throw bad();
  }
  if (out.host.empty()) throw bad();
  return out;
}

std::string random_client_id() { return hex_encode(random_bytes(32)); }

struct RpcClient::Impl {
  std::unique_ptr<httplib::ClientImpl> client;
};

RpcClient::RpcClient(std::string_view url, ClientTls tls)
    : impl_(std::make_unique<Impl>()), url_(parse_url(url)), tls_(std::move(tls)) {
  if (url_.https) {
    if (!tls_.ca) throw Error(Errc::ConfigError, "https needs a CA bundle to verify the server");
    std::unique_ptr<httplib::SSLClient> c;
    if (tls_.certificate && tls_.key)
      c = std::make_unique<httplib::SSLClient>(url_.host, url_.port, tls_.certificate->get(),
                                               tls_.key->get());
    else
      c = std::make_unique<httplib::SSLClient>(url_.host, url_.port);
    X509_STORE* store = X509_STORE_new();
    for (const auto& anchor : tls_.ca->anchors()) X509_STORE_add_cert(store, anchor.get());
    c->set_ca_cert_store(store);  // takes ownership
    c->enable_server_certificate_verification(true);
    impl_->client = std::move(c);
  } else {
    impl_->client = std::make_unique<httplib::ClientImpl>(url_.host, url_.port);
  }
  impl_->client->set_connection_timeout(10);
  impl_->client->set_read_timeout(60);
  impl_->client->set_keep_alive(true);
}

RpcClient::~RpcClient() = default;
RpcClient::RpcClient(RpcClient&&) noexcept = default;
RpcClient& RpcClient::operator=(RpcClient&&) noexcept = default;

std::vector<std::pair<std::string, std::string>> RpcClient::auth_headers() const {
  std::vector<std::pair<std::string, std::string>> h;
  auto basic = [&](const std::string& user, const std::string& pass) {
    h.emplace_back("Authorization", "Basic " + base64_encode(as_bytes(user + ":" + pass)));
  };
  if (pending_basic_) {
    basic(pending_basic_->first, pending_basic_->second);
  } else if (pending_cookie_user_) {
    h.emplace_back("Cookie", std::string(kCookieUser) + "=" + *pending_cookie_user_ + "; " +
                                 std::string(kCookiePassword) + "=" + std::string(kBrowserPassword));
  } else if (client_id_ && server_id_) {
    if (mode_ == SessionMode::basic)
      basic(*client_id_, *server_id_);
    else
      h.emplace_back("Cookie", std::string(kCookieUser) + "=" + *client_id_ + "; " +
                                   std::string(kCookiePassword) + "=" + *server_id_);
  }
  return h;
}

RawResponse RpcClient::post(std::string_view path, std::string body, std::string content_type) {
  httplib::Headers headers;
  for (auto& [k, v] : auth_headers()) headers.emplace(k, v);
  auto res = impl_->client->Post(std::string(path), headers, body, content_type);
  if (!res)
    throw Error(Errc::StorageFailure, "request to " + url_.host + ":" + std::to_string(url_.port) +
                                          " failed: " + httplib::to_string(res.error()));
  return RawResponse{res->status, res->get_header_value("Content-Type"), res->body};
}

RawResponse RpcClient::get(std::string_view path) {
  httplib::Headers headers;
  for (auto& [k, v] : auth_headers()) headers.emplace(k, v);
  auto res = impl_->client->Get(std::string(path), headers);
  if (!res)
    throw Error(Errc::StorageFailure, "request to " + url_.host + ":" + std::to_string(url_.port) +
                                          " failed: " + httplib::to_string(res.error()));
  return RawResponse{res->status, res->get_header_value("Content-Type"), res->body};
}

MethodResponse RpcClient::call_raw(std::string_view method, std::vector<RpcValue> params) {
  const std::string body = encode_call(MethodCall{std::string(method), std::move(params)});
  RawResponse r = post(url_.path, body, "text/xml");
  if (r.status != 200)
    throw Error(Errc::ProtocolError, "HTTP " + std::to_string(r.status) + ": " + r.body);
  return decode_response(r.body);
}

RpcValue RpcClient::call(std::string_view method, std::vector<RpcValue> params) {
  MethodResponse r = call_raw(method, std::move(params));
  if (auto* f = std::get_if<Fault>(&r)) throw RpcCallError(std::move(*f));
  return std::get<RpcValue>(std::move(r));
}

namespace {

std::vector<std::string> string_items(const RpcValue& v, std::size_t n, std::string_view what) {
  if (!v.is<RpcValue::Array>() || v.as<RpcValue::Array>().size() != n)
    throw Error(Errc::ProtocolError, std::string(what) + " must return " + std::to_string(n) + " strings");
  std::vector<std::string> out;
  for (const auto& e : v.as<RpcValue::Array>()) {
    if (!e.is<std::string>())
      throw Error(Errc::ProtocolError, std::string(what) + " must return strings");
    out.push_back(e.as<std::string>());
  }
  return out;
}

}  // namespace

std::string RpcClient::authenticate_basic(const Certificate& client_cert, const Key& client_key,
                                          std::string client_id) {
  if (!tls_.ca) throw Error(Errc::ConfigError, "system.auth needs a CA bundle to verify the server");
  if (client_id.empty()) client_id = random_client_id();
  clear_session();
  pending_basic_ = std::make_pair(client_id, client_cert.pem());
  RpcValue reply;
  try {
    reply = call("system.auth");
  } catch (...) {
    pending_basic_.reset();
    throw;
  }
  pending_basic_.reset();
  auto items = string_items(reply, 3, "system.auth");
  BasicHandshakeResult r{items[0], items[1], items[2]};
  std::string server_id = complete_basic_handshake(r, client_id, client_key, *tls_.ca);
  set_session(std::move(client_id), server_id, SessionMode::basic);
  return server_id;
}

std::string RpcClient::authenticate_tls(std::string client_id) {
  if (client_id.empty()) client_id = random_client_id();
  clear_session();
  pending_cookie_user_ = client_id;
  RpcValue reply;
  try {
    reply = call("system.auth2");
  } catch (...) {
    pending_cookie_user_.reset();
    throw;
  }
  pending_cookie_user_.reset();
  auto items = string_items(reply, 2, "system.auth2");
  set_session(std::move(client_id), items[1], SessionMode::cookie);
  return items[1];
}

void RpcClient::set_session(std::string client_id, std::string server_id, SessionMode mode) {
  client_id_ = std::move(client_id);
  server_id_ = std::move(server_id);
  mode_ = mode;
}

void RpcClient::clear_session() {
  client_id_.reset();
  server_id_.reset();
}

}  // namespace clarens
