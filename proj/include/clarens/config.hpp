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

#ifndef CLARENS_CONFIG_HPP
#define CLARENS_CONFIG_HPP

// Configuration file format:
//
//   # comment
//   [server]
//   listen = 127.0.0.1:8443
//   prefix = /clarens/
//   file_root = /srv/clarens/files
//   max_body = 16777216
//   [tls]
//   required = true
//   cert = server.pem          ; relative paths resolve against the file
//   key = server.key
//   ca = ca.pem
//   [vo]
//   admin = /O=Grid/CN=Operator   ; repeatable
//   [session]
//   ttl = 86400                   ; seconds
//   [audit]
//   path = audit.log
//   [store]
//   path = store
//   [modules]
//   echo = echo                   ; prefix = component
//   [user_modules]
//   alice.tools = echo            ; registered as ~alice.tools
//
// Any [section] key can be overridden by the environment variable
// CLARENS_<SECTION>_<KEY> (upper case). Repeatable keys take a
// ';'-separated list there.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clarens {

/// Section -> key -> values, in file order. Keys may repeat.
struct IniDocument {
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> sections;

  std::vector<std::string> all(std::string_view section, std::string_view key) const;
  std::optional<std::string> last(std::string_view section, std::string_view key) const;
};

/// Throws Error(ConfigError) with the line number on syntax errors.
IniDocument parse_ini(std::string_view text);

struct GatewayConfig {
  std::string listen_host = "127.0.0.1";
  std::uint16_t listen_port = 8443;
  std::string rpc_url_prefix = "/clarens/";
  std::optional<std::filesystem::path> file_root;
  std::size_t max_body_bytes = 16u << 20;

  bool tls_required = true;
  std::filesystem::path cert_path;
  std::filesystem::path key_path;
  std::filesystem::path ca_path;

  std::vector<std::string> admin_dns;
  std::chrono::seconds session_ttl = std::chrono::hours(24);
  /// Empty: audit lines go to stderr.
  std::filesystem::path audit_path;
  std::filesystem::path store_path = "clarens-store";

  /// Module prefix -> component name. "~user.module" prefixes included.
  std::vector<std::pair<std::string, std::string>> modules = {{"echo", "echo"}};

  /// Throws Error(ConfigError) when an invariant does not hold.
  void validate() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;
std::optional<std::string> process_env(const std::string& name);

/// Parses `text`, applies environment overrides and resolves relative
/// paths against `base_dir`. Throws Error(ConfigError).
GatewayConfig load_config(std::string_view text, const std::filesystem::path& base_dir,
                          const EnvLookup& env = process_env);
GatewayConfig load_config_file(const std::filesystem::path& file, const EnvLookup& env = process_env);

/// "host:port" or ":port". Throws Error(ConfigError).
std::pair<std::string, std::uint16_t> parse_listen(std::string_view text);

}  // namespace clarens

#endif  // CLARENS_CONFIG_HPP
