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

#include "clarens/gateway.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <fstream>
#include <sstream>

#include "clarens/error.hpp"
#include "clarens/modules.hpp"
#include "clarens/xmlrpc.hpp"

namespace clarens {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::string read_file(const std::filesystem::path& p, std::string_view what) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(Errc::ConfigError, "cannot read " + std::string(what) + " '" + p.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

HttpResponse error_response(int status, std::string_view message) {
  return HttpResponse{status, "text/xml", xml_error_document(status, message)};
}

std::string http_verdict(int status) {
  if (status == 200) return "ok";
  if (status == 403) return "denied";
  return "fault:" + std::to_string(status);
}

bool is_xml_content_type(std::string_view header) {
  std::string media(trim(header.substr(0, header.find(';'))));
  for (auto& c : media) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return media == "text/xml" || media == "application/xml";
}

}  // namespace

std::string HttpRequest::header(std::string_view lower_name) const {
  auto it = headers.find(std::string(lower_name));
  return it == headers.end() ? std::string() : it->second;
}

std::map<std::string, std::string> parse_cookies(std::string_view header) {
  std::map<std::string, std::string> out;
  std::size_t start = 0;
  while (start <= header.size()) {
    const std::size_t semi = header.find(';', start);
    std::string_view item = trim(header.substr(start, semi - start));
    const std::size_t eq = item.find('=');
    if (eq != std::string_view::npos && eq > 0) {
      std::string_view value = trim(item.substr(eq + 1));
      if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
        value = value.substr(1, value.size() - 2);
      out[std::string(trim(item.substr(0, eq)))] = std::string(value);
    }
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::optional<std::pair<std::string, std::string>> parse_basic_auth(std::string_view header) {
  header = trim(header);
  if (header.size() < 6) return std::nullopt;
  std::string scheme(header.substr(0, 6));
  for (auto& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (scheme != "basic ") return std::nullopt;
  auto raw = base64_decode(trim(header.substr(6)));
  if (!raw) return std::nullopt;
  const std::string text = to_string(*raw);
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos) return std::nullopt;
  return std::make_pair(text.substr(0, colon), text.substr(colon + 1));
}

std::string xml_error_document(int code, std::string_view message) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<error><code>" + std::to_string(code) +
         "</code><message>" + escape_xml(message) + "</message></error>\n";
}

std::string content_type_for(const std::filesystem::path& file) {
  static const std::map<std::string, std::string> types = {
      {".html", "text/html"}, {".htm", "text/html"},         {".txt", "text/plain"},
      {".xml", "text/xml"},   {".css", "text/css"},          {".js", "application/javascript"},
      {".json", "application/json"}, {".png", "image/png"},  {".jpg", "image/jpeg"},
      {".jpeg", "image/jpeg"}, {".gif", "image/gif"},        {".svg", "image/svg+xml"},
      {".pdf", "application/pdf"}, {".pem", "application/x-pem-file"},
  };
  std::string ext = file.extension().string();
  for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  auto it = types.find(ext);
  return it == types.end() ? "application/octet-stream" : it->second;
}

ServerIdentity load_server_identity(const GatewayConfig& cfg) {
  if (cfg.cert_path.empty() || cfg.key_path.empty())
    throw Error(Errc::ConfigError, "tls.cert and tls.key are required");
  return ServerIdentity::from_pem(read_file(cfg.cert_path, "certificate"),
                                  read_file(cfg.key_path, "private key"));
}

CaStore load_ca_store(const GatewayConfig& cfg) {
  if (cfg.ca_path.empty()) throw Error(Errc::ConfigError, "tls.ca is required");
  return CaStore::from_pem(read_file(cfg.ca_path, "CA bundle"));
}

// ---------------------------------------------------------------- Gateway

Gateway::Gateway(GatewayConfig cfg, KvStore& store, ServerIdentity identity, CaStore ca_store,
                 Authenticator::ClockFn clock)
    : cfg_(std::move(cfg)),
      store_(store),
      vo_(store, cfg_.admin_dns),
      acls_(store),
      sessions_(store),
      auth_(std::move(identity), std::move(ca_store), sessions_, cfg_.session_ttl, std::move(clock)),
      audit_(cfg_.audit_path) {
  cfg_.validate();
  register_system_module(registry_, auth_);
  register_group_module(registry_, vo_);
  register_acl_module(registry_, acls_, vo_);
  register_session_module(registry_, sessions_, [this] { return auth_.now(); });
  for (const auto& [prefix, component] : cfg_.modules) register_component(registry_, prefix, component);
  seed_default_acls(acls_, registry_);
  sessions_.purge_expired(auth_.now());
}

RequestCredentials Gateway::credentials_of(const HttpRequest& req) const {
  RequestCredentials c;
  c.cookies = parse_cookies(req.header("cookie"));
  if (auto basic = parse_basic_auth(req.header("authorization"))) {
    c.basic_user = std::move(basic->first);
    c.basic_password = std::move(basic->second);
  }
  c.peer_certificate = req.peer_certificate;
  c.peer_chain = req.peer_chain;
  c.secure_transport = req.secure;
  return c;
}

std::optional<Session> Gateway::resolve_session(const RequestCredentials& c) const {
  auto user = c.cookies.find(std::string(kCookieUser));
  auto pass = c.cookies.find(std::string(kCookiePassword));
  if (user != c.cookies.end() && pass != c.cookies.end() && pass->second != kBrowserPassword)
    if (auto s = auth_.validate_session(user->second, pass->second)) return s;
  if (c.basic_user && c.basic_password)
    if (auto s = auth_.validate_session(*c.basic_user, *c.basic_password)) return s;
  return std::nullopt;
}

Gateway::Outcome Gateway::handle_rpc(const HttpRequest& req) {
  Outcome out;
  out.target = req.path;
  if (req.body.size() > cfg_.max_body_bytes) {
    out.response = error_response(413, "request body exceeds " + std::to_string(cfg_.max_body_bytes) + " bytes");
    out.verdict = http_verdict(413);
    return out;
  }
  if (!is_xml_content_type(req.header("content-type"))) {
    out.response = error_response(400, "XML-RPC requests need Content-Type text/xml");
    out.verdict = http_verdict(400);
    return out;
  }

  CallContext ctx;
  ctx.credentials = credentials_of(req);
  ctx.session = resolve_session(ctx.credentials);
  ctx.peer_address = req.peer_address;
  if (ctx.session) out.dn = ctx.session->dn;

  MethodResponse response;
  bool denied = false;
  try {
    MethodCall call = decode_call(req.body);
    out.target = call.method;
    auto vo = vo_.snapshot();
    auto acls = acls_.snapshot();
    DispatchResult r = dispatch(registry_, *acls, *vo, ctx, call.method, call.params);
    response = std::move(r.response);
    denied = r.denied;
  } catch (const Error& e) {
    const FaultCode code = e.code() == Errc::ParseError ? FaultCode::ParseError : FaultCode::ProtocolError;
    response = Fault{static_cast<std::int32_t>(code), e.what()};
  }

  out.response.status = 200;
  out.response.content_type = "text/xml";
  if (const auto* fault = std::get_if<Fault>(&response)) {
    out.response.body = encode_fault(fault->code, fault->message);
    out.verdict = denied ? "denied" : "fault:" + std::to_string(fault->code);
  } else {
    out.response.body = encode_response(std::get<RpcValue>(response));
    out.verdict = "ok";
  }
  return out;
}

Gateway::Outcome Gateway::handle_file(const HttpRequest& req) {
  Outcome out;
  out.target = req.path;
  auto fail = [&](int status, std::string_view message) {
    out.response = error_response(status, message);
    out.verdict = http_verdict(status);
    return out;
  };

  const auto session = resolve_session(credentials_of(req));
  if (session) out.dn = session->dn;
  if (!session) return fail(403, "file access requires an authenticated session");
  if (!cfg_.file_root) return fail(404, "no such file");
  if (req.path.find('\0') != std::string::npos) return fail(403, "path outside the document root");

  namespace fs = std::filesystem;
  std::error_code ec;
  const fs::path root = fs::weakly_canonical(*cfg_.file_root, ec);
  if (ec) return fail(404, "no such file");
  std::string_view rel = req.path;
  while (!rel.empty() && rel.front() == '/') rel.remove_prefix(1);
  const fs::path candidate = fs::weakly_canonical(root / fs::path(rel), ec);
  if (ec) return fail(404, "no such file");

  // Compare whole path components; symlinks were resolved above.
  auto r = root.begin();
  auto c = candidate.begin();
  for (; r != root.end() && !r->empty(); ++r, ++c)
    if (c == candidate.end() || *r != *c) return fail(403, "path outside the document root");

  if (!fs::is_regular_file(candidate, ec)) return fail(404, "no such file");
  std::ifstream in(candidate, std::ios::binary);
  if (!in) return fail(404, "no such file");
  std::ostringstream ss;
  ss << in.rdbuf();
  out.response = HttpResponse{200, content_type_for(candidate), ss.str()};
  out.verdict = "ok";
  return out;
}

HttpResponse Gateway::handle(const HttpRequest& req) {
  const auto started = std::chrono::steady_clock::now();
  Outcome out;
  if (cfg_.tls_required && !req.secure) {
    out.target = req.path;
    out.response = error_response(403, "this server requires TLS");
    out.verdict = http_verdict(403);
  } else if (req.method == "POST" && req.path.compare(0, cfg_.rpc_url_prefix.size(), cfg_.rpc_url_prefix) == 0) {
    out = handle_rpc(req);
  } else if (req.method == "GET" || req.method == "POST") {
    // Other URLs are ordinary file space.
    out = handle_file(req);
  } else {
    out.target = req.path;
    out.response = error_response(405, "method " + req.method + " not supported");
    out.verdict = http_verdict(405);
  }

  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - started);
  audit_.write(AuditRecord{now_ms(), req.peer_address, out.dn, out.target, out.verdict, elapsed.count()});
  return std::move(out.response);
}

void Gateway::audit_transport_error(std::string_view peer, std::string_view target, int status,
                                    std::int64_t duration_ms) {
  audit_.write(AuditRecord{now_ms(), std::string(peer), std::nullopt, std::string(target),
                           http_verdict(status), duration_ms});
}

}  // namespace clarens
