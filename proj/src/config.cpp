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

#include "clarens/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "clarens/dn.hpp"
#include "clarens/dotted_name.hpp"
#include "clarens/error.hpp"

namespace clarens {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

// ';' starts a trailing comment only after whitespace, so DNs and paths keep
// any ';' they contain.
std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if ((line[i] == '#' || line[i] == ';') &&
        (i == 0 || std::isspace(static_cast<unsigned char>(line[i - 1]))))
      return line.substr(0, i);
  }
  return line;
}

bool parse_bool(std::string_view key, const std::string& v) {
  const std::string l = lower(v);
  if (l == "true" || l == "yes" || l == "on" || l == "1") return true;
  if (l == "false" || l == "no" || l == "off" || l == "0") return false;
  throw Error(Errc::ConfigError, std::string(key) + ": expected a boolean, got '" + v + "'");
}

template <class Int>
Int parse_int(std::string_view key, const std::string& v) {
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw Error(Errc::ConfigError, std::string(key) + ": expected a number, got '" + v + "'");
  return out;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t semi = s.find(';', start);
    auto item = trim(s.substr(start, semi - start));
    if (!item.empty()) out.emplace_back(item);
    if (semi == std::string_view::npos) break;
    start = semi + 1;
  }
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& v) {
  std::filesystem::path p(v);
  return p.is_absolute() || base.empty() ? p : base / p;
}

}  // namespace

std::vector<std::string> IniDocument::all(std::string_view section, std::string_view key) const {
  std::vector<std::string> out;
  auto it = sections.find(std::string(section));
  if (it == sections.end()) return out;
  for (const auto& [k, v] : it->second)
    if (k == key) out.push_back(v);
  return out;
}

std::optional<std::string> IniDocument::last(std::string_view section, std::string_view key) const {
  auto values = all(section, key);
  if (values.empty()) return std::nullopt;
  return values.back();
}

IniDocument parse_ini(std::string_view text) {
  IniDocument doc;
  std::string section;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    line = trim(strip_comment(line));
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) {
      return Error(Errc::ConfigError, "line " + std::to_string(lineno) + ": " + what);
    };
    if (line.front() == '[') {
      if (line.back() != ']') throw fail("unterminated section header");
      section = lower(trim(line.substr(1, line.size() - 2)));
      if (section.empty()) throw fail("empty section name");
      doc.sections[section];
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw fail("expected key = value");
    if (section.empty()) throw fail("key outside any section");
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw fail("empty key");
    doc.sections[section].emplace_back(key, std::string(trim(line.substr(eq + 1))));
  }
  return doc;
}

std::pair<std::string, std::uint16_t> parse_listen(std::string_view text) {
  const std::size_t colon = text.rfind(':');
  if (colon == std::string_view::npos)
    throw Error(Errc::ConfigError, "listen address '" + std::string(text) + "' needs host:port");
  std::string host(text.substr(0, colon));
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  if (host.empty()) host = "0.0.0.0";
  const auto port = parse_int<std::uint16_t>("listen", std::string(text.substr(colon + 1)));
  return {host, port};
}

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (v == nullptr) return std::nullopt;
  return std::string(v);
}

void GatewayConfig::validate() const {
  if (rpc_url_prefix.empty() || rpc_url_prefix.front() != '/' || rpc_url_prefix.back() != '/')
    throw Error(Errc::ConfigError, "server.prefix must begin and end with '/'");
  if (file_root && !std::filesystem::is_directory(*file_root))
    throw Error(Errc::ConfigError, "server.file_root '" + file_root->string() + "' is not a directory");
  if (admin_dns.empty()) throw Error(Errc::ConfigError, "vo.admin: at least one admin DN is required");
  for (const auto& dn : admin_dns)
    if (!DistinguishedName::try_parse(dn))
      throw Error(Errc::ConfigError, "vo.admin '" + dn + "' is not a DN");
  if (session_ttl.count() <= 0) throw Error(Errc::ConfigError, "session.ttl must be positive");
  if (max_body_bytes == 0) throw Error(Errc::ConfigError, "server.max_body must be positive");
  for (const auto& [prefix, component] : modules)
    if (!is_valid_method_name(prefix))
      throw Error(Errc::ConfigError, "module prefix '" + prefix + "' is not a valid name");
}

GatewayConfig load_config(std::string_view text, const std::filesystem::path& base_dir,
                          const EnvLookup& env) {
  IniDocument doc = parse_ini(text);

  // Environment overrides replace every value of the key in its section.
  static const std::map<std::string, std::vector<std::string>> known = {
      {"server", {"listen", "prefix", "file_root", "max_body"}},
      {"tls", {"required", "cert", "key", "ca"}},
      {"vo", {"admin"}},
      {"session", {"ttl"}},
      {"audit", {"path"}},
      {"store", {"path"}},
  };
  for (const auto& [section, keys] : known) {
    for (const auto& key : keys) {
      auto v = env("CLARENS_" + upper(section) + "_" + upper(key));
      if (!v) continue;
      auto& entries = doc.sections[section];
      std::erase_if(entries, [&](const auto& kv) { return kv.first == key; });
      for (auto& item : key == "admin" ? split_list(*v) : std::vector<std::string>{*v})
        entries.emplace_back(key, item);
    }
  }

  for (const auto& [section, entries] : doc.sections) {
    if (section == "modules" || section == "user_modules") continue;
    auto it = known.find(section);
    if (it == known.end()) throw Error(Errc::ConfigError, "unknown section [" + section + "]");
    for (const auto& [key, value] : entries)
      if (std::find(it->second.begin(), it->second.end(), key) == it->second.end())
        throw Error(Errc::ConfigError, "unknown key '" + key + "' in [" + section + "]");
  }

  GatewayConfig cfg;
  if (auto v = doc.last("server", "listen")) std::tie(cfg.listen_host, cfg.listen_port) = parse_listen(*v);
  if (auto v = doc.last("server", "prefix")) cfg.rpc_url_prefix = *v;
  if (auto v = doc.last("server", "file_root"); v && !v->empty()) cfg.file_root = resolve(base_dir, *v);
  if (auto v = doc.last("server", "max_body")) cfg.max_body_bytes = parse_int<std::size_t>("server.max_body", *v);
  if (auto v = doc.last("tls", "required")) cfg.tls_required = parse_bool("tls.required", *v);
  if (auto v = doc.last("tls", "cert")) cfg.cert_path = resolve(base_dir, *v);
  if (auto v = doc.last("tls", "key")) cfg.key_path = resolve(base_dir, *v);
  if (auto v = doc.last("tls", "ca")) cfg.ca_path = resolve(base_dir, *v);
  cfg.admin_dns = doc.all("vo", "admin");
  if (auto v = doc.last("session", "ttl"))
    cfg.session_ttl = std::chrono::seconds(parse_int<std::int64_t>("session.ttl", *v));
  if (auto v = doc.last("audit", "path"); v && !v->empty()) cfg.audit_path = resolve(base_dir, *v);
  if (auto v = doc.last("store", "path")) cfg.store_path = resolve(base_dir, *v);
  else cfg.store_path = resolve(base_dir, cfg.store_path.string());

  if (doc.sections.count("modules") || doc.sections.count("user_modules")) {
    cfg.modules.clear();
    for (const auto& [prefix, component] : doc.sections["modules"]) cfg.modules.emplace_back(prefix, component);
    for (const auto& [name, component] : doc.sections["user_modules"]) {
      if (name.find('.') == std::string::npos)
        throw Error(Errc::ConfigError, "user module '" + name + "' must be named user.module");
      cfg.modules.emplace_back("~" + name, component);
    }
  }

  cfg.validate();
  return cfg;
}

GatewayConfig load_config_file(const std::filesystem::path& file, const EnvLookup& env) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(Errc::ConfigError, "cannot read config file '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_config(ss.str(), file.parent_path(), env);
}

}  // namespace clarens
