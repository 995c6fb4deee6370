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

#include <cctype>
#include <charconv>
#include <cstring>
#include <vector>

#include "clarens/error.hpp"

namespace clarens {

namespace {

void escape_into(std::string& out, std::string_view field) {
  for (char c : field) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out += c;
    }
  }
}

std::optional<std::string> unescape(std::string_view field) {
  std::string out;
  out.reserve(field.size());
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (field[i] != '\\') {
      out += field[i];
      continue;
    }
    if (++i == field.size()) return std::nullopt;
    switch (field[i]) {
      case '\\': out += '\\'; break;
      case 't': out += '\t'; break;
      case 'n': out += '\n'; break;
      case 'r': out += '\r'; break;
      default: return std::nullopt;
    }
  }
  return out;
}

template <class Int>
bool read_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::string format_timestamp(TimePoint t) {
  using namespace std::chrono;
  const auto day = floor<days>(t);
  const year_month_day ymd(day);
  const hh_mm_ss hms(t - day);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()), static_cast<int>(hms.subseconds().count()));
  return buf;
}

std::optional<TimePoint> parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  // YYYY-MM-DDTHH:MM:SS.mmmZ
  if (s.size() != 24 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
      s[16] != ':' || s[19] != '.' || s[23] != 'Z')
    return std::nullopt;
  int y, mo, d, h, mi, se, ms;
  if (!read_int(s.substr(0, 4), y) || !read_int(s.substr(5, 2), mo) || !read_int(s.substr(8, 2), d) ||
      !read_int(s.substr(11, 2), h) || !read_int(s.substr(14, 2), mi) ||
      !read_int(s.substr(17, 2), se) || !read_int(s.substr(20, 3), ms))
    return std::nullopt;
  const year_month_day ymd{year(y), month(static_cast<unsigned>(mo)), day(static_cast<unsigned>(d))};
  if (!ymd.ok() || h > 23 || mi > 59 || se > 59) return std::nullopt;
  return TimePoint(sys_days(ymd).time_since_epoch() + hours(h) + minutes(mi) + seconds(se) +
                   milliseconds(ms));
}

bool is_valid_verdict(std::string_view v) {
  if (v == "ok" || v == "denied") return true;
  if (v.substr(0, 6) != "fault:" || v.size() == 6) return false;
  for (char c : v.substr(6))
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string format_audit_line(const AuditRecord& r) {
  std::string out = format_timestamp(r.timestamp);
  out += '\t';
  escape_into(out, r.peer);
  out += '\t';
  if (r.dn) escape_into(out, *r.dn);
  else out += '-';
  out += '\t';
  escape_into(out, r.target);
  out += '\t';
  escape_into(out, r.verdict);
  out += '\t';
  out += std::to_string(r.duration_ms);
  return out;
}

std::optional<AuditRecord> parse_audit_line(std::string_view line) {
  std::vector<std::string_view> f;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    f.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  if (f.size() != 6) return std::nullopt;
  AuditRecord r;
  auto ts = parse_timestamp(f[0]);
  auto peer = unescape(f[1]);
  auto target = unescape(f[3]);
  auto verdict = unescape(f[4]);
  if (!ts || !peer || !target || !verdict || !is_valid_verdict(*verdict)) return std::nullopt;
  if (!read_int(f[5], r.duration_ms) || r.duration_ms < 0) return std::nullopt;
  if (f[2] != "-") {
    auto dn = unescape(f[2]);
    if (!dn) return std::nullopt;
    r.dn = std::move(*dn);
  }
  r.timestamp = *ts;
  r.peer = std::move(*peer);
  r.target = std::move(*target);
  r.verdict = std::move(*verdict);
  return r;
}

AuditLog::AuditLog(const std::filesystem::path& path) {
  if (path.empty()) {
    file_ = stderr;
    return;
  }
  file_ = std::fopen(path.c_str(), "a");
  if (file_ == nullptr)
    throw Error(Errc::StorageFailure,
                "cannot open audit log '" + path.string() + "': " + std::strerror(errno));
  owned_ = true;
}

AuditLog::~AuditLog() {
  if (owned_) std::fclose(file_);
}

void AuditLog::write(const AuditRecord& record) noexcept {
  try {
    std::string line = format_audit_line(record);
    line += '\n';
    std::lock_guard lock(mutex_);
    const bool ok = std::fwrite(line.data(), 1, line.size(), file_) == line.size() &&
                    std::fflush(file_) == 0;
    if (ok) ++records_;
    else ++failures_;
  } catch (...) {
    ++failures_;
  }
}

}  // namespace clarens
