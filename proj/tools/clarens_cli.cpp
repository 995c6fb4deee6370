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

// clarens: run the gateway, or administer groups, ACLs, user mappings and
// sessions in a local store or on a running server.
//
// Exit status: 0 success, 1 operation failed ("error: <Code>: message" on
// stderr), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "clarens/audit.hpp"
#include "clarens/config.hpp"
#include "clarens/error.hpp"
#include "clarens/gateway.hpp"
#include "clarens/http_server.hpp"
#include "clarens/kv_store.hpp"
#include "clarens/modules.hpp"
#include "clarens/records.hpp"
#include "clarens/rpc_client.hpp"
#include "clarens/services.hpp"
#include "clarens/session.hpp"

namespace {

using namespace clarens;
using json = nlohmann::json;

struct Options {
  std::string config;
  std::string store;
  std::string as;
  std::string remote;
  std::string cert;
  std::string key;
  std::string ca;
  bool json = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ConfigError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json to_json(const RpcValue& v) {
  return std::visit(
      [](const auto& x) -> json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, RpcValue::Array>) {
          json a = json::array();
          for (const auto& e : x) a.push_back(to_json(e));
          return a;
        } else if constexpr (std::is_same_v<T, RpcValue::Struct>) {
          json o = json::object();
          for (const auto& [k, e] : x) o[k] = to_json(e);
          return o;
        } else if constexpr (std::is_same_v<T, DateTime> || std::is_same_v<T, Binary>) {
          return to_display_string(RpcValue(x));
        } else {
          return x;
        }
      },
      v.variant());
}

void print_text(const RpcValue& v, std::ostream& out) {
  if (const auto* a = std::get_if<RpcValue::Array>(&v.variant())) {
    for (const auto& e : *a) {
      if (e.is<RpcValue::Struct>()) {
        print_text(e, out);
        out << '\n';
      } else {
        out << to_display_string(e) << '\n';
      }
    }
  } else if (const auto* s = std::get_if<RpcValue::Struct>(&v.variant())) {
    for (const auto& [k, e] : *s) {
      if (const auto* list = std::get_if<RpcValue::Array>(&e.variant())) {
        out << k << ":\n";
        for (const auto& item : *list) out << "  " << to_display_string(item) << '\n';
      } else {
        out << k << ": " << to_display_string(e) << '\n';
      }
    }
  } else {
    out << to_display_string(v) << '\n';
  }
}

// ---------------------------------------------------------------- backends

// Commands are expressed as calls to the RPC methods, executed either
// in-process against the store or over the wire.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual RpcValue call(const std::string& method, std::vector<RpcValue> args) = 0;
};

class LocalBackend final : public Backend {
 public:
  LocalBackend(const Options& opt) {
    std::optional<GatewayConfig> cfg;
    if (!opt.config.empty()) cfg = load_config_file(opt.config);
    std::filesystem::path store_path = !opt.store.empty() ? std::filesystem::path(opt.store)
                                       : cfg                ? cfg->store_path
                                                            : std::filesystem::path();
    if (store_path.empty()) throw Error(Errc::ConfigError, "local mode needs --store or --config");
    store_ = FileKvStore::open(store_path);

    std::vector<std::string> admins;
    if (cfg) {
      admins = cfg->admin_dns;
    } else if (auto rec = store_->get(records::vo_key(VoRegistry::kAdminsGroup))) {
      admins = records::decode_group(*rec).members.strings();
    }
    if (admins.empty())
      throw Error(Errc::ConfigError, "no admin DNs known: pass --config or initialise the store");
    actor_ = opt.as.empty() ? admins.front() : opt.as;

    vo_ = std::make_unique<VoService>(*store_, admins);
    acls_ = std::make_unique<AclService>(*store_);
    sessions_ = std::make_unique<SessionStore>(*store_);
    register_group_module(registry_, *vo_);
    register_acl_module(registry_, *acls_, *vo_);
    register_session_module(registry_, *sessions_);
  }

  RpcValue call(const std::string& method, std::vector<RpcValue> args) override {
    const MethodDescriptor* d = registry_.find(method);
    if (d == nullptr) throw Error(Errc::NoSuchMethod, "no such method '" + method + "'");
    CallContext ctx;
    Session s;
    s.dn = actor_;
    ctx.session = s;
    try {
      return d->handler(ctx, args);
    } catch (const RpcFault& f) {
      throw RpcCallError(Fault{static_cast<std::int32_t>(f.code()), f.what()});
    }
  }

  KvStore& store() { return *store_; }

 private:
  std::unique_ptr<FileKvStore> store_;
  std::string actor_;
  std::unique_ptr<VoService> vo_;
  std::unique_ptr<AclService> acls_;
  std::unique_ptr<SessionStore> sessions_;
  ModuleRegistry registry_;
};

class RemoteBackend final : public Backend {
 public:
  explicit RemoteBackend(const Options& opt) {
    if (opt.cert.empty() || opt.key.empty() || opt.ca.empty())
      throw Error(Errc::ConfigError, "remote mode needs --cert, --key and --ca");
    ClientTls tls;
    tls.ca = CaStore::from_pem(slurp(opt.ca));
    tls.certificate = Certificate::from_pem(slurp(opt.cert));
    tls.key = Key::private_from_pem(slurp(opt.key));
    client_ = std::make_unique<RpcClient>(opt.remote, tls);
    client_->authenticate_basic(*tls.certificate, *tls.key);
  }

  RpcValue call(const std::string& method, std::vector<RpcValue> args) override {
    return client_->call(method, std::move(args));
  }

 private:
  std::unique_ptr<RpcClient> client_;
};

// ---------------------------------------------------------------- serve

int serve(const Options& opt, const std::string& listen, bool no_tls) {
  if (opt.config.empty()) throw Error(Errc::ConfigError, "serve needs --config");
  GatewayConfig cfg = load_config_file(opt.config);
  if (!listen.empty()) std::tie(cfg.listen_host, cfg.listen_port) = parse_listen(listen);
  if (!opt.store.empty()) cfg.store_path = opt.store;
  if (no_tls) cfg.tls_required = false;

  // Handle SIGINT/SIGTERM on a dedicated thread; workers inherit the mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  auto store = FileKvStore::open(cfg.store_path);
  Gateway gateway(cfg, *store, load_server_identity(cfg), load_ca_store(cfg));
  HttpServer server(gateway, !no_tls);
  const std::uint16_t port = server.bind(cfg.listen_host, cfg.listen_port);

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  std::cout << "listening on " << cfg.listen_host << ':' << port << (no_tls ? " (plain HTTP)" : "")
            << std::endl;
  server.run();
  // run() also returns if the listener fails; release the waiter then.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return 0;
}

std::vector<RpcValue> strings(const std::vector<std::string>& v) {
  return std::vector<RpcValue>(v.begin(), v.end());
}

RpcValue string_list(const std::vector<std::string>& v) {
  return RpcValue::Array(v.begin(), v.end());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clarens gateway and administration tool"};
  app.require_subcommand(1);
  // Global options may follow the subcommand.
  app.fallthrough();
  Options opt;
  app.add_option("--config", opt.config, "Configuration file");
  app.add_option("--store", opt.store, "Store directory (overrides the config)");
  app.add_option("--as", opt.as, "Acting DN in local mode (default: first configured admin)");
  app.add_option("--remote", opt.remote, "Administer a running server at this URL");
  app.add_option("--cert", opt.cert, "Client certificate PEM for --remote");
  app.add_option("--key", opt.key, "Client private key PEM for --remote");
  app.add_option("--ca", opt.ca, "CA bundle PEM for --remote");
  app.add_flag("--json", opt.json, "Structured output");

  // Each leaf command fills in method + args; store commands set `special`.
  std::string method;
  std::vector<RpcValue> args;
  std::function<int()> special;

  auto* serve_cmd = app.add_subcommand("serve", "Run the gateway");
  std::string listen;
  bool no_tls = false;
  serve_cmd->add_option("--listen", listen, "host:port (port 0 picks a free port)");
  serve_cmd->add_flag("--no-tls", no_tls, "Serve plain HTTP");
  serve_cmd->callback([&] { special = [&] { return serve(opt, listen, no_tls); }; });

  // group
  auto* group = app.add_subcommand("group", "VO groups")->require_subcommand(1);
  std::string path, dn, name, prefix, file;
  std::vector<std::string> members, admins;
  {
    auto* c = group->add_subcommand("create", "Create a group");
    c->add_option("path", path)->required();
    c->add_option("--member", members, "Member DN (repeatable)");
    c->add_option("--admin", admins, "Administrator DN (repeatable)");
    c->callback([&] {
      method = "group.create";
      args = {path, string_list(members), string_list(admins)};
    });
    auto* d = group->add_subcommand("delete", "Delete a group and its subgroups");
    d->add_option("path", path)->required();
    d->callback([&] { method = "group.delete", args = {path}; });
    for (auto [cmd, m] : {std::pair{"add-member", "group.addMember"},
                          std::pair{"remove-member", "group.removeMember"},
                          std::pair{"add-admin", "group.addAdministrator"},
                          std::pair{"remove-admin", "group.removeAdministrator"}}) {
      auto* e = group->add_subcommand(cmd, std::string("Run ") + m);
      e->add_option("path", path)->required();
      e->add_option("dn", dn)->required();
      e->callback([&, m = std::string(m)] { method = m, args = {path, dn}; });
    }
    auto* l = group->add_subcommand("list", "List groups");
    l->add_option("path", path);
    l->callback([&] { method = "group.list", args = path.empty() ? std::vector<RpcValue>{} : strings({path}); });
  }

  // acl / usermap
  std::string order = "deny,allow";
  std::vector<std::string> allow_dns, allow_groups, deny_dns, deny_groups;
  auto acl_value = [&] {
    RpcValue::Struct s;
    s["order"] = order;
    s["allow_dns"] = string_list(allow_dns);
    s["allow_groups"] = string_list(allow_groups);
    s["deny_dns"] = string_list(deny_dns);
    s["deny_groups"] = string_list(deny_groups);
    return RpcValue(s);
  };
  auto* acl = app.add_subcommand("acl", "Method ACLs")->require_subcommand(1);
  {
    auto* s = acl->add_subcommand("set", "Replace the ACL of a method prefix");
    s->add_option("prefix", prefix)->required();
    s->add_option("--order", order, "deny,allow or allow,deny");
    s->add_option("--allow-dn", allow_dns);
    s->add_option("--allow-group", allow_groups);
    s->add_option("--deny-dn", deny_dns);
    s->add_option("--deny-group", deny_groups);
    s->callback([&] { method = "acl.set", args = {prefix, acl_value()}; });
    auto* g = acl->add_subcommand("get", "Show the ACL of a method prefix");
    g->add_option("prefix", prefix)->required();
    g->callback([&] { method = "acl.get", args = {prefix}; });
  }
  auto* usermap = app.add_subcommand("usermap", "DN to account mapping")->require_subcommand(1);
  {
    auto* s = usermap->add_subcommand("set", "Replace the DN list of an account");
    s->add_option("user", name)->required();
    s->add_option("--allow-dn", allow_dns);
    s->add_option("--allow-group", allow_groups);
    s->callback([&] { method = "acl.setUser", args = {name, acl_value()}; });
    auto* r = usermap->add_subcommand("resolve", "Account a DN maps to");
    r->add_option("dn", dn)->required();
    r->callback([&] { method = "acl.map", args = {dn}; });
  }

  auto* session = app.add_subcommand("session", "Sessions")->require_subcommand(1);
  {
    session->add_subcommand("list", "Live sessions")->callback([&] { method = "session.list", args = {}; });
    auto* r = session->add_subcommand("revoke", "End a session");
    r->add_option("client_id", name)->required();
    r->callback([&] { method = "session.revoke", args = {name}; });
  }

  auto* store_cmd = app.add_subcommand("store", "Backup and restore")->require_subcommand(1);
  {
    auto* e = store_cmd->add_subcommand("export", "Write every record as NDJSON");
    e->add_option("file", file, "Output file (default stdout)");
    e->callback([&] {
      special = [&] {
        LocalBackend local(opt);
        const std::string text = export_store(local.store());
        if (file.empty()) std::cout << text;
        else std::ofstream(file, std::ios::binary) << text;
        return 0;
      };
    });
    auto* i = store_cmd->add_subcommand("import", "Load NDJSON records");
    i->add_option("file", file)->required();
    i->callback([&] {
      special = [&] {
        LocalBackend local(opt);
        const std::size_t n = import_store(local.store(), slurp(file));
        if (opt.json) std::cout << json{{"imported", n}}.dump() << '\n';
        else std::cout << "imported " << n << " records\n";
        return 0;
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version exit 0; anything else is a usage error.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (special) return special();

    std::unique_ptr<Backend> backend;
    if (!opt.remote.empty()) backend = std::make_unique<RemoteBackend>(opt);
    else backend = std::make_unique<LocalBackend>(opt);
    RpcValue result = backend->call(method, args);

    if (method == "acl.map") {
      const auto& a = result.as<RpcValue::Array>();
      if (a.empty()) throw Error(Errc::NoSuchAcl, "no account maps '" + dn + "'");
      result = a.front();
    }
    if (opt.json) std::cout << to_json(result).dump() << '\n';
    else print_text(result, std::cout);
    return 0;
  } catch (const RpcCallError& e) {
    // Handler faults carry "<Code>: message"; ACL and lookup faults do not.
    std::string msg = e.fault().message;
    if (msg.find(": ") == std::string::npos || msg.find(' ') < msg.find(": ")) {
      const char* code = e.fault().code == 2 ? "NoSuchMethod"
                         : e.fault().code == 3 ? "NotAuthorized"
                         : e.fault().code == 1 ? "ParseError"
                         : e.fault().code == 5 ? "ProtocolError"
                                               : "HandlerError";
      msg = std::string(code) + ": " + msg;
    }
    std::cerr << "error: " << msg << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
  }
  return 1;
}
