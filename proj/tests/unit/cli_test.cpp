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


#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "clarens/rpc_client.hpp"
#include "process.hpp"
#include "server_dir.hpp"
#include "table_one.hpp"

namespace clarens {
namespace {

using namespace clarens::testing;
using Args = std::vector<std::string>;

RunResult local(const ServerDir& d, Args args) {
  args.insert(args.begin(), {"--config", d.config.string()});
  return run_cli(args);
}

TEST(Cli, GroupLifecycleLocal) {
  ServerDir d("cli-group");
  EXPECT_EQ(local(d, {"group", "create", "CMS"}).exit_code, 0);
  EXPECT_EQ(local(d, {"group", "create", "CMS.USA", "--member", kUsaMember}).exit_code, 0);
  const auto r = local(d, {"group", "create", "CMS.USA.Caltech", "--member", kCaltechMember});
  EXPECT_EQ(r.exit_code, 0) << r.err;

  const auto list = local(d, {"group", "list", "CMS.USA"});
  ASSERT_EQ(list.exit_code, 0) << list.err;
  EXPECT_NE(list.out.find("path: CMS.USA\n"), std::string::npos);
  EXPECT_NE(list.out.find("  " + std::string(kUsaMember) + "\n"), std::string::npos);

  const auto orphan = local(d, {"group", "create", "ATLAS.EU"});
  EXPECT_EQ(orphan.exit_code, 1);
  EXPECT_EQ(orphan.err.rfind("error: MissingParent: ", 0), 0u) << orphan.err;

  const auto dup = local(d, {"group", "create", "CMS"});
  EXPECT_EQ(dup.exit_code, 1);
  EXPECT_EQ(dup.err.rfind("error: DuplicateGroup: ", 0), 0u) << dup.err;

  const auto del = local(d, {"--json", "group", "delete", "CMS.USA"});
  ASSERT_EQ(del.exit_code, 0) << del.err;
  EXPECT_EQ(nlohmann::json::parse(del.out), nlohmann::json::array({"CMS.USA.Caltech", "CMS.USA"}));
}

TEST(Cli, ActingAsSomeoneElse) {
  ServerDir d("cli-as");
  ASSERT_EQ(local(d, {"group", "create", "CMS", "--admin", kVoAdmin}).exit_code, 0);
  EXPECT_EQ(local(d, {"--as", kVoAdmin, "group", "create", "CMS.CERN"}).exit_code, 0);
  const auto r = local(d, {"--as", kEdPeng, "group", "create", "CMS.UFL"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: NotAuthorized: ", 0), 0u) << r.err;
}

TEST(Cli, AdminsGroupIsProtected) {
  ServerDir d("cli-admins");
  const auto r = local(d, {"group", "add-member", "admins", kEdPeng});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: ProtectedGroup: ", 0), 0u) << r.err;
}

TEST(Cli, UserMapping) {
  ServerDir d("cli-usermap");
  auto r = local(d, {"usermap", "set", "cmsuser", "--allow-dn", "/O=doesciencegrid.org/OU=People"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = local(d, {"usermap", "resolve", "/O=doesciencegrid.org/OU=People/CN=John Smith 12345"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_EQ(r.out, "cmsuser\n");
  r = local(d, {"usermap", "resolve", "/O=elsewhere/CN=Nobody"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: NoSuchAcl: ", 0), 0u) << r.err;
}

TEST(Cli, AclSetAndGet) {
  ServerDir d("cli-acl");
  auto r = local(d, {"acl", "set", "mod", "--order", "allow,deny", "--allow-dn", "/O=doesg.org",
                     "--deny-group", "crackers"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = local(d, {"--json", "acl", "get", "mod"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["order"], "allow,deny");
  EXPECT_EQ(j["allow_dns"], nlohmann::json::array({"/O=doesg.org"}));
  EXPECT_EQ(j["deny_groups"], nlohmann::json::array({"crackers"}));
  r = local(d, {"acl", "set", "mod", "--order", "sideways"});
  EXPECT_EQ(r.exit_code, 1);
}

TEST(Cli, ExportImportRoundTrip) {
  ServerDir a("cli-export");
  ASSERT_EQ(local(a, {"group", "create", "CMS", "--member", kUsaMember}).exit_code, 0);
  ASSERT_EQ(local(a, {"usermap", "set", "cmsuser", "--allow-dn", "/O=fnal.gov"}).exit_code, 0);
  const auto dump_file = (a.root / "dump.ndjson").string();
  ASSERT_EQ(local(a, {"store", "export", dump_file}).exit_code, 0);
  const auto dumped = local(a, {"store", "export"});
  ASSERT_EQ(dumped.exit_code, 0);
  std::istringstream lines(dumped.out);
  int records = 0;
  for (std::string line; std::getline(lines, line); ++records)
    EXPECT_TRUE(nlohmann::json::parse(line).contains("key")) << line;
  EXPECT_GE(records, 3);

  ServerDir b("cli-import");
  const auto r = local(b, {"--json", "store", "import", dump_file});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_GT(nlohmann::json::parse(r.out)["imported"].get<int>(), 0);
  const auto list = local(b, {"--json", "group", "list", "CMS"});
  ASSERT_EQ(list.exit_code, 0) << list.err;
  EXPECT_EQ(nlohmann::json::parse(list.out)["members"], nlohmann::json::array({kUsaMember}));
  const auto mapped = local(b, {"usermap", "resolve", kUsaMember});
  EXPECT_EQ(mapped.out, "cmsuser\n");
}

TEST(Cli, StoreFlagWithoutConfig) {
  ServerDir d("cli-store");
  ASSERT_EQ(local(d, {"group", "create", "CMS"}).exit_code, 0);
  // The admins record in the store names the actor.
  const auto r = run_cli({"--store", d.store.string(), "group", "list"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_NE(r.out.find("path: CMS"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).exit_code, 2);
  EXPECT_EQ(run_cli({"group"}).exit_code, 2);
  EXPECT_EQ(run_cli({"group", "create"}).exit_code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).exit_code, 2);
  EXPECT_EQ(run_cli({"--help"}).exit_code, 0);
  const auto r = run_cli({"group", "list"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: ConfigError: ", 0), 0u) << r.err;
}

TEST(Cli, BadConfigIsReported) {
  ServerDir d("cli-badcfg");
  d.write_config("[bogus]\nx = 1\n");
  const auto r = run_cli({"serve", "--config", d.config.string()});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_NE(r.err.find("unknown section [bogus]"), std::string::npos) << r.err;
}

TEST(Cli, SecondLocalWriterIsLockedOut) {
  ServerDir d("cli-lock");
  ServerProcess server({"serve", "--config", d.config.string()});
  const auto r = local(d, {"group", "list"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: StorageFailure: ", 0), 0u) << r.err;
}

TEST(Cli, RemoteAdministration) {
  ServerDir d("cli-remote");
  ServerProcess server({"serve", "--config", d.config.string()});
  const std::string url = "https://127.0.0.1:" + std::to_string(server.port()) + "/clarens/";
  auto remote = [&](Args args) {
    Args full = {"--remote", url};
    for (auto& a : d.remote_args()) full.push_back(a);
    full.insert(full.end(), args.begin(), args.end());
    return run_cli(full);
  };
  auto r = remote({"group", "create", "CMS"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = remote({"group", "create", "CMS.USA", "--member", kUsaMember});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  r = remote({"--json", "session", "list"});
  ASSERT_EQ(r.exit_code, 0) << r.err;
  EXPECT_TRUE(nlohmann::json::parse(r.out).is_array());
  r = remote({"group", "create", "X.Y"});
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: MissingParent: ", 0), 0u) << r.err;

  // Someone who is not an admin gets stopped by the acl module's ACL.
  Args other = {"--remote", url, "--cert", d.pki.other_cert.string(), "--key",
                d.pki.other_key.string(), "--ca", d.pki.ca.string(), "acl", "get", "mod"};
  r = run_cli(other);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.err.rfind("error: NotAuthorized: ", 0), 0u) << r.err;

  // The running server sees what the remote client wrote.
  RpcClient c(url, ClientTls{CaStore(std::vector<Certificate>{shared_pki().ca.cert}), {}, {}});
  c.authenticate_basic(shared_pki().client.cert, shared_pki().client.key);
  const auto g = c.call("group.list", {"CMS.USA"}).as<RpcValue::Struct>();
  EXPECT_EQ(g.at("members"), RpcValue(RpcValue::Array{kUsaMember}));
  EXPECT_EQ(server.terminate(), 0);
}

TEST(Cli, ServePlainHttp) {
  ServerDir d("cli-plain");
  ServerProcess server({"serve", "--config", d.config.string(), "--no-tls", "--listen", "127.0.0.1:0"});
  RpcClient c("http://127.0.0.1:" + std::to_string(server.port()) + "/clarens/",
              ClientTls{CaStore(std::vector<Certificate>{shared_pki().ca.cert}), {}, {}});
  EXPECT_TRUE(c.call("system.listMethods").is<RpcValue::Array>());
  EXPECT_EQ(server.terminate(), 0);
}

}  // namespace
}  // namespace clarens
