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

#include "clarens/kv_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>
#include <zlib.h>

#include <cerrno>
#include <cstring>
#include <json.hpp>

#include "clarens/crypto.hpp"
#include "clarens/error.hpp"

namespace clarens {

namespace {

constexpr std::string_view kLogHeader = "CLRNSKV1";
constexpr std::uint8_t kOpPut = 1;
constexpr std::uint8_t kOpErase = 2;
constexpr std::size_t kRecordHead = 4 + 1 + 4 + 4;

[[noreturn]] void io_fail(const std::string& what) {
  throw Error(Errc::StorageFailure, what + ": " + std::strerror(errno));
}

void check_key(std::string_view key) {
  if (key.empty()) throw Error(Errc::EmptyKey, "store keys must be non-empty");
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t get_u32(const char* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(p[i]);
  return v;
}

std::uint32_t crc_of(const char* p, std::size_t n) {
  return static_cast<std::uint32_t>(
      ::crc32(0L, reinterpret_cast<const Bytef*>(p), static_cast<uInt>(n)));
}

std::string encode_record(std::uint8_t op, std::string_view key, std::string_view value) {
  std::string body;
  body.reserve(9 + key.size() + value.size());
  body.push_back(static_cast<char>(op));
  put_u32(body, static_cast<std::uint32_t>(key.size()));
  put_u32(body, static_cast<std::uint32_t>(value.size()));
  body.append(key);
  body.append(value);
  std::string rec;
  rec.reserve(4 + body.size());
  put_u32(rec, crc_of(body.data(), body.size()));
  rec += body;
  return rec;
}

void write_all(int fd, std::string_view data, const std::string& what) {
  while (!data.empty()) {
    const ssize_t n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail(what);
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string read_file(int fd, const std::string& what) {
  std::string out;
  if (::lseek(fd, 0, SEEK_SET) < 0) io_fail(what);
  char buf[1 << 16];
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      io_fail(what);
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

void sync_dir(const std::filesystem::path& dir) {
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd < 0) return;
  ::fsync(fd);
  ::close(fd);
}

template <class Map>
std::vector<KvPair> scan_map(const Map& data, std::string_view prefix) {
  std::vector<KvPair> out;
  for (auto it = data.lower_bound(prefix); it != data.end(); ++it) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    out.emplace_back(it->first, it->second);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- memory

void MemoryKvStore::put(std::string_view key, std::string_view value) {
  check_key(key);
  std::unique_lock lock(mutex_);
  data_.insert_or_assign(std::string(key), std::string(value));
}

std::optional<std::string> MemoryKvStore::get(std::string_view key) const {
  std::shared_lock lock(mutex_);
  auto it = data_.find(key);
  if (it == data_.end()) return std::nullopt;
  return it->second;
}

void MemoryKvStore::erase(std::string_view key) {
  check_key(key);
  std::unique_lock lock(mutex_);
  auto it = data_.find(key);
  if (it != data_.end()) data_.erase(it);
}

std::vector<KvPair> MemoryKvStore::scan(std::string_view prefix) const {
  std::shared_lock lock(mutex_);
  return scan_map(data_, prefix);
}

// ---------------------------------------------------------------- file

std::unique_ptr<FileKvStore> FileKvStore::open(const std::filesystem::path& dir) {
  return open(dir, Options{});
}

std::unique_ptr<FileKvStore> FileKvStore::open(const std::filesystem::path& dir, Options options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::StorageFailure, "cannot create store directory " + dir.string() + ": " + ec.message());
  std::unique_ptr<FileKvStore> store(new FileKvStore(dir, options));
  store->replay();
  return store;
}

FileKvStore::FileKvStore(std::filesystem::path dir, Options options)
    : dir_(std::move(dir)), options_(options) {
  const auto lock_path = dir_ / "LOCK";
  lock_fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
  if (lock_fd_ < 0) io_fail("open " + lock_path.string());
  if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(lock_fd_);
    lock_fd_ = -1;
    throw Error(Errc::StorageFailure, "store " + dir_.string() + " is in use by another process");
  }
}

FileKvStore::~FileKvStore() {
  if (log_fd_ >= 0) ::close(log_fd_);
  if (lock_fd_ >= 0) ::close(lock_fd_);  // releases the flock
}

void FileKvStore::replay() {
  const auto path = log_path();
  log_fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0600);
  if (log_fd_ < 0) io_fail("open " + path.string());
  const std::string contents = read_file(log_fd_, "read " + path.string());

  std::size_t good = 0;
  if (contents.size() >= kLogHeader.size()) {
    if (contents.compare(0, kLogHeader.size(), kLogHeader) != 0)
      throw Error(Errc::CorruptRecord, path.string() + " is not a store log");
    good = kLogHeader.size();
  }
  std::uint64_t live_bytes = 0;
  while (good + kRecordHead <= contents.size()) {
    const char* p = contents.data() + good;
    const std::uint32_t crc = get_u32(p);
    const std::uint8_t op = static_cast<std::uint8_t>(p[4]);
    const std::uint64_t klen = get_u32(p + 5);
    const std::uint64_t vlen = get_u32(p + 9);
    const std::uint64_t total = kRecordHead + klen + vlen;
    if (good + total > contents.size()) break;
    if (crc_of(p + 4, total - 4) != crc || (op != kOpPut && op != kOpErase) || klen == 0) break;
    std::string key(p + kRecordHead, klen);
    if (op == kOpPut) {
      data_.insert_or_assign(std::move(key), std::string(p + kRecordHead + klen, vlen));
    } else {
      data_.erase(key);
    }
    good += total;
  }
  for (const auto& [k, v] : data_) live_bytes += kRecordHead + k.size() + v.size();

  if (good < contents.size() || contents.size() < kLogHeader.size()) {
    recovered_tail_ = contents.size() > good ? contents.size() - good : 0;
    if (contents.size() < kLogHeader.size()) {
      // Fresh (or torn-before-header) log.
      if (::ftruncate(log_fd_, 0) != 0) io_fail("truncate " + path.string());
      if (::lseek(log_fd_, 0, SEEK_SET) < 0) io_fail("seek " + path.string());
      write_all(log_fd_, kLogHeader, "write " + path.string());
      good = kLogHeader.size();
    } else if (::ftruncate(log_fd_, static_cast<off_t>(good)) != 0) {
      io_fail("truncate " + path.string());
    }
    if (options_.sync && ::fsync(log_fd_) != 0) io_fail("fsync " + path.string());
  }
  log_bytes_ = good;
  if (::lseek(log_fd_, 0, SEEK_END) < 0) io_fail("seek " + path.string());

  if (log_bytes_ > options_.compact_min_bytes &&
      static_cast<double>(log_bytes_) > options_.compact_ratio * static_cast<double>(live_bytes))
    rewrite();
}

void FileKvStore::append(std::uint8_t op, std::string_view key, std::string_view value) {
  const std::string rec = encode_record(op, key, value);
  try {
    write_all(log_fd_, rec, "append to " + log_path().string());
    if (options_.sync && ::fdatasync(log_fd_) != 0) io_fail("fdatasync " + log_path().string());
  } catch (...) {
    // Drop whatever part of the record made it out so the next append
    // starts on a record boundary.
    if (::ftruncate(log_fd_, static_cast<off_t>(log_bytes_)) == 0)
      ::lseek(log_fd_, 0, SEEK_END);
    throw;
  }
  log_bytes_ += rec.size();
}

void FileKvStore::put(std::string_view key, std::string_view value) {
  check_key(key);
  std::unique_lock lock(mutex_);
  append(kOpPut, key, value);
  data_.insert_or_assign(std::string(key), std::string(value));
}

std::optional<std::string> FileKvStore::get(std::string_view key) const {
  std::shared_lock lock(mutex_);
  auto it = data_.find(key);
  if (it == data_.end()) return std::nullopt;
  return it->second;
}

void FileKvStore::erase(std::string_view key) {
  check_key(key);
  std::unique_lock lock(mutex_);
  auto it = data_.find(key);
  if (it == data_.end()) return;
  append(kOpErase, key, {});
  data_.erase(it);
}

std::vector<KvPair> FileKvStore::scan(std::string_view prefix) const {
  std::shared_lock lock(mutex_);
  return scan_map(data_, prefix);
}

void FileKvStore::compact() {
  std::unique_lock lock(mutex_);
  rewrite();
}

void FileKvStore::rewrite() {
  const auto tmp = dir_ / "data.log.tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) io_fail("open " + tmp.string());
  try {
    std::string buf(kLogHeader);
    for (const auto& [k, v] : data_) {
      buf += encode_record(kOpPut, k, v);
      if (buf.size() > (1 << 20)) {
        write_all(fd, buf, "write " + tmp.string());
        buf.clear();
      }
    }
    write_all(fd, buf, "write " + tmp.string());
    if (::fsync(fd) != 0) io_fail("fsync " + tmp.string());
  } catch (...) {
    ::close(fd);
    std::filesystem::remove(tmp);
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), log_path().c_str()) != 0) io_fail("rename " + tmp.string());
  sync_dir(dir_);

  ::close(log_fd_);
  log_fd_ = ::open(log_path().c_str(), O_RDWR | O_CLOEXEC);
  if (log_fd_ < 0) io_fail("reopen " + log_path().string());
  const off_t end = ::lseek(log_fd_, 0, SEEK_END);
  if (end < 0) io_fail("seek " + log_path().string());
  log_bytes_ = static_cast<std::uint64_t>(end);
}

// ---------------------------------------------------------------- export

std::string export_store(const KvStore& store) {
  std::string out;
  for (const auto& [k, v] : store.scan("")) {
    nlohmann::json line = {{"key", base64_encode(as_bytes(k))}, {"value", base64_encode(as_bytes(v))}};
    out += line.dump();
    out += '\n';
  }
  return out;
}

std::size_t import_store(KvStore& store, std::string_view lines) {
  std::vector<KvPair> records;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < lines.size()) {
    std::size_t end = lines.find('\n', start);
    if (end == std::string_view::npos) end = lines.size();
    const std::string_view line = lines.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    auto bad = [&](const std::string& why) {
      return Error(Errc::CorruptRecord, "line " + std::to_string(line_no) + ": " + why);
    };
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("value") ||
        !j["key"].is_string() || !j["value"].is_string())
      throw bad("expected {\"key\": ..., \"value\": ...}");
    auto key = base64_decode(j["key"].get<std::string>());
    auto value = base64_decode(j["value"].get<std::string>());
    if (!key || !value || key->empty()) throw bad("invalid base64 field");
    records.emplace_back(to_string(*key), to_string(*value));
  }
  // Validate everything before writing anything.
  for (const auto& [k, v] : records) store.put(k, v);
  return records.size();
}

}  // namespace clarens
