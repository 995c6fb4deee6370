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

#ifndef CLARENS_KV_STORE_HPP
#define CLARENS_KV_STORE_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace clarens {

using KvPair = std::pair<std::string, std::string>;

/// Byte-string map that outlives the process. Keys are namespaced by
/// prefix: "session/", "vo/", "acl/method/", "acl/user/".
///
/// Implementations are thread-safe: writes are serialized, reads run
/// concurrently. Failures surface as Error(StorageFailure); an empty key is
/// Error(EmptyKey).
class KvStore {
 public:
  virtual ~KvStore() = default;

  /// Durable once it returns.
  virtual void put(std::string_view key, std::string_view value) = 0;
  virtual std::optional<std::string> get(std::string_view key) const = 0;
  /// Removing an absent key is a no-op.
  virtual void erase(std::string_view key) = 0;
  /// Entries whose key starts with `prefix`, in bytewise key order.
  virtual std::vector<KvPair> scan(std::string_view prefix) const = 0;
};

class MemoryKvStore final : public KvStore {
 public:
  void put(std::string_view key, std::string_view value) override;
  std::optional<std::string> get(std::string_view key) const override;
  void erase(std::string_view key) override;
  std::vector<KvPair> scan(std::string_view prefix) const override;

 private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string, std::less<>> data_;
};

/// Log-structured store in a directory.
///
/// On-disk layout:
///   LOCK      advisory lock held while the store is open (single process)
///   data.log  8-byte header "CLRNSKV1" followed by records
///
/// Record: crc32 (u32 LE, over the remaining bytes) | op (u8: 1 put, 2 erase)
///         | key length (u32 LE) | value length (u32 LE) | key | value
///
/// Every write appends one record and syncs before returning. Opening the
/// store replays the log; a torn or corrupt tail (from a crash mid-append)
/// is truncated away, so each put either fully applies or leaves the prior
/// value. The log is rewritten compactly on open once it has grown well past
/// the live data size, and on compact().
class FileKvStore final : public KvStore {
 public:
  struct Options {
    bool sync = true;
    /// Compact on open when the log exceeds this multiple of live bytes.
    double compact_ratio = 2.0;
    std::size_t compact_min_bytes = 1 << 20;
  };

  static std::unique_ptr<FileKvStore> open(const std::filesystem::path& dir);
  static std::unique_ptr<FileKvStore> open(const std::filesystem::path& dir, Options options);
  ~FileKvStore() override;

  FileKvStore(const FileKvStore&) = delete;
  FileKvStore& operator=(const FileKvStore&) = delete;

  void put(std::string_view key, std::string_view value) override;
  std::optional<std::string> get(std::string_view key) const override;
  void erase(std::string_view key) override;
  std::vector<KvPair> scan(std::string_view prefix) const override;

  void compact();

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::filesystem::path log_path() const { return dir_ / "data.log"; }
  /// Bytes dropped from the log tail while opening.
  std::uint64_t recovered_tail_bytes() const noexcept { return recovered_tail_; }

 private:
  FileKvStore(std::filesystem::path dir, Options options);
  void replay();
  void append(std::uint8_t op, std::string_view key, std::string_view value);
  void rewrite();

  std::filesystem::path dir_;
  Options options_;
  int lock_fd_ = -1;
  int log_fd_ = -1;
  std::uint64_t log_bytes_ = 0;
  std::uint64_t recovered_tail_ = 0;

  mutable std::shared_mutex mutex_;
  std::map<std::string, std::string, std::less<>> data_;
};

/// One JSON object per line: {"key": "<base64>", "value": "<base64>"}, in
/// key order.
std::string export_store(const KvStore& store);
/// Returns the number of records imported. Throws CorruptRecord.
std::size_t import_store(KvStore& store, std::string_view lines);

}  // namespace clarens

#endif  // CLARENS_KV_STORE_HPP
