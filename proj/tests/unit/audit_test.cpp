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


#include "clarens/audit.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <thread>

#include <unistd.h>

namespace clarens {
namespace {

namespace fs = std::filesystem;

TimePoint at(long long ms) { return TimePoint(std::chrono::milliseconds(ms)); }

std::vector<std::string> lines_of(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

TEST(Audit, TimestampFormat) {
  // 2026-01-02T03:04:05.678Z
  const TimePoint t = at(1767323045678LL);
  EXPECT_EQ(format_timestamp(t), "2026-01-02T03:04:05.678Z");
  EXPECT_EQ(parse_timestamp("2026-01-02T03:04:05.678Z"), t);
  EXPECT_EQ(format_timestamp(at(0)), "1970-01-01T00:00:00.000Z");
  EXPECT_FALSE(parse_timestamp("2026-01-02 03:04:05"));
  EXPECT_FALSE(parse_timestamp("2026-13-02T03:04:05.678Z"));
}

TEST(Audit, LineFormat) {
  AuditRecord r{at(1767323045678LL), "127.0.0.1", std::string("/O=Grid/CN=Alice"), "echo.echo", "ok", 3};
  EXPECT_EQ(format_audit_line(r), "2026-01-02T03:04:05.678Z\t127.0.0.1\t/O=Grid/CN=Alice\techo.echo\tok\t3");
  EXPECT_EQ(parse_audit_line(format_audit_line(r)), r);
  r.dn.reset();
  r.verdict = "fault:413";
  EXPECT_EQ(format_audit_line(r), "2026-01-02T03:04:05.678Z\t127.0.0.1\t-\techo.echo\tfault:413\t3");
  EXPECT_EQ(parse_audit_line(format_audit_line(r)), r);
}

TEST(Audit, EscapesSurviveRoundTrip) {
  AuditRecord r{at(5), "::1", std::string("/O=x/CN=tab\there\\and\nnewline\r"), "/files/a\tb", "denied", 0};
  const std::string line = format_audit_line(r);
  EXPECT_EQ(std::count(line.begin(), line.end(), '\t'), 5);
  EXPECT_EQ(line.find('\n'), std::string::npos);
  EXPECT_EQ(parse_audit_line(line), r);
}

TEST(Audit, RejectsBadLines) {
  EXPECT_FALSE(parse_audit_line(""));
  EXPECT_FALSE(parse_audit_line("a\tb\tc"));
  EXPECT_FALSE(parse_audit_line("2026-01-02T03:04:05.678Z\tp\t-\tt\tmaybe\t3"));
  EXPECT_FALSE(parse_audit_line("2026-01-02T03:04:05.678Z\tp\t-\tt\tok\tx"));
  EXPECT_FALSE(parse_audit_line("2026-01-02T03:04:05.678Z\tp\t-\tt\tok\t3\textra"));
}

TEST(Audit, VerdictShapes) {
  EXPECT_TRUE(is_valid_verdict("ok"));
  EXPECT_TRUE(is_valid_verdict("denied"));
  EXPECT_TRUE(is_valid_verdict("fault:3"));
  EXPECT_TRUE(is_valid_verdict("fault:404"));
  EXPECT_FALSE(is_valid_verdict("fault:"));
  EXPECT_FALSE(is_valid_verdict("fault:x"));
  EXPECT_FALSE(is_valid_verdict("OK"));
}

TEST(AuditLog, ConcurrentWritersProduceWholeLines) {
  const fs::path p = fs::temp_directory_path() / ("clarens-audit-" + std::to_string(::getpid()) + ".log");
  fs::remove(p);
  {
    AuditLog log(p);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
      threads.emplace_back([&, t] {
        for (int i = 0; i < 250; ++i)
          log.write(AuditRecord{now_ms(), "10.0.0." + std::to_string(t), std::nullopt,
                                std::string(200, static_cast<char>('a' + t)), "ok", i});
      });
    for (auto& th : threads) th.join();
    EXPECT_EQ(log.records(), 2000u);
    EXPECT_EQ(log.failures(), 0u);
  }
  const auto lines = lines_of(p);
  ASSERT_EQ(lines.size(), 2000u);
  for (const auto& l : lines) ASSERT_TRUE(parse_audit_line(l)) << l;
  fs::remove(p);
}

TEST(AuditLog, AppendsAcrossInstances) {
  const fs::path p = fs::temp_directory_path() / ("clarens-audit2-" + std::to_string(::getpid()) + ".log");
  fs::remove(p);
  for (int round = 0; round < 2; ++round) {
    AuditLog log(p);
    log.write(AuditRecord{now_ms(), "p", std::nullopt, "t", "ok", 0});
  }
  EXPECT_EQ(lines_of(p).size(), 2u);
  fs::remove(p);
  EXPECT_THROW(AuditLog("/nonexistent-dir/x/audit.log"), std::exception);
}

}  // namespace
}  // namespace clarens
