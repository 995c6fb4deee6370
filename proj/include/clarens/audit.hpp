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

#ifndef CLARENS_AUDIT_HPP
#define CLARENS_AUDIT_HPP

// One line per completed request, six tab-separated fields:
//
//   2026-01-02T03:04:05.678Z  127.0.0.1  /O=Grid/CN=Alice  echo.echo  ok  3
//
// timestamp (UTC, millisecond precision), peer address, DN or "-", method
// name or request path, verdict, duration in milliseconds. The verdict is
// "ok", "denied", or "fault:N" where N is an XML-RPC fault code or, for
// transport errors and GETs, the HTTP status. Backslash, tab, CR and LF
// inside fields are written as \\, \t, \r and \n.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "clarens/session.hpp"

namespace clarens {

struct AuditRecord {
  TimePoint timestamp;
  std::string peer;
  std::optional<std::string> dn;
  std::string target;
  std::string verdict;
  std::int64_t duration_ms = 0;

  friend bool operator==(const AuditRecord&, const AuditRecord&) = default;
};

std::string format_timestamp(TimePoint t);
std::optional<TimePoint> parse_timestamp(std::string_view text);

std::string format_audit_line(const AuditRecord& record);
/// Inverse of format_audit_line (without the trailing newline).
std::optional<AuditRecord> parse_audit_line(std::string_view line);

/// True for "ok", "denied" and "fault:<digits>".
bool is_valid_verdict(std::string_view verdict);

class AuditLog {
 public:
  /// Appends to `path`; an empty path writes to stderr.
  /// Throws Error(StorageFailure) when the file cannot be opened.
  explicit AuditLog(const std::filesystem::path& path);
  ~AuditLog();

  AuditLog(const AuditLog&) = delete;
  AuditLog& operator=(const AuditLog&) = delete;

  /// Never throws. A failed write bumps failures().
  void write(const AuditRecord& record) noexcept;

  std::uint64_t failures() const noexcept { return failures_.load(); }
  std::uint64_t records() const noexcept { return records_.load(); }

 private:
  std::mutex mutex_;
  std::FILE* file_ = nullptr;
  bool owned_ = false;
  std::atomic<std::uint64_t> failures_{0};
  std::atomic<std::uint64_t> records_{0};
};

}  // namespace clarens

#endif  // CLARENS_AUDIT_HPP
