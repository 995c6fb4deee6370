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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <thread>

#include <unistd.h>

#include "clarens/error.hpp"

namespace clarens {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("clarens-kv-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_all(const fs::path& p, std::string_view s) {
  std::ofstream(p, std::ios::binary | std::ios::trunc).write(s.data(), static_cast<std::streamsize>(s.size()));
}

FileKvStore::Options fast() {
  FileKvStore::Options o;
  o.sync = false;
  return o;
}

template <class Store>
void basic_contract(Store& s) {
  EXPECT_FALSE(s.get("a"));
  s.put("session/x", "1");
  s.put("session/y", "2");
  s.put("vo/CMS", "3");
  s.put("session/x", "4");
  EXPECT_EQ(s.get("session/x"), "4");
  EXPECT_EQ(s.scan("session/"), (std::vector<KvPair>{{"session/x", "4"}, {"session/y", "2"}}));
  EXPECT_EQ(s.scan("").size(), 3u);
  s.erase("session/x");
  s.erase("never-there");
  EXPECT_FALSE(s.get("session/x"));
  try {
    s.put("", "v");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyKey);
  }
  const std::string binary("\0\x01\xff", 3);
  s.put("bin", binary);
  EXPECT_EQ(s.get("bin"), binary);
}

TEST(MemoryKvStore, Contract) {
  MemoryKvStore s;
  basic_contract(s);
}

TEST(FileKvStore, Contract) {
  TempDir dir;
  auto s = FileKvStore::open(dir.path(), fast());
  basic_contract(*s);
}

TEST(FileKvStore, SurvivesReopen) {
  TempDir dir;
  {
    auto s = FileKvStore::open(dir.path());
    s->put("k1", "v1");
    s->put("k2", "v2");
    s->erase("k1");
  }
  auto s = FileKvStore::open(dir.path());
  EXPECT_FALSE(s->get("k1"));
  EXPECT_EQ(s->get("k2"), "v2");
  EXPECT_EQ(s->recovered_tail_bytes(), 0u);
  EXPECT_EQ(read_all(s->log_path()).substr(0, 8), "CLRNSKV1");
}

TEST(FileKvStore, SecondOpenIsLockedOut) {
  TempDir dir;
  auto s = FileKvStore::open(dir.path(), fast());
  try {
    FileKvStore::open(dir.path(), fast());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::StorageFailure);
  }
}

TEST(FileKvStore, TornTailAtEveryOffset) {
  TempDir dir;
  std::string before;
  std::size_t full = 0;
  {
    auto s = FileKvStore::open(dir.path(), fast());
    s->put("stable", "old");
    before = read_all(s->log_path());
    s->put("stable", "new-value-that-is-longer");
    full = read_all(s->log_path()).size();
  }
  const std::string complete = read_all(dir.path() / "data.log");
  ASSERT_EQ(complete.size(), full);
  for (std::size_t cut = before.size(); cut < full; ++cut) {
    write_all(dir.path() / "data.log", complete.substr(0, cut));
    auto s = FileKvStore::open(dir.path(), fast());
    ASSERT_EQ(s->get("stable"), "old") << "cut at " << cut;
    EXPECT_EQ(s->recovered_tail_bytes(), cut - before.size());
    EXPECT_EQ(fs::file_size(s->log_path()), before.size());
  }
  write_all(dir.path() / "data.log", complete);
  auto s = FileKvStore::open(dir.path(), fast());
  EXPECT_EQ(s->get("stable"), "new-value-that-is-longer");
}

TEST(FileKvStore, CorruptByteStopsReplay) {
  TempDir dir;
  std::size_t first_end = 0;
  {
    auto s = FileKvStore::open(dir.path(), fast());
    s->put("a", "1");
    first_end = fs::file_size(s->log_path());
    s->put("b", "2");
    s->put("c", "3");
  }
  std::string log = read_all(dir.path() / "data.log");
  log[first_end + 14] ^= 0x40;  // inside the second record
  write_all(dir.path() / "data.log", log);
  auto s = FileKvStore::open(dir.path(), fast());
  EXPECT_EQ(s->get("a"), "1");
  EXPECT_FALSE(s->get("b"));
  EXPECT_FALSE(s->get("c"));
  s->put("d", "4");
  s.reset();
  auto again = FileKvStore::open(dir.path(), fast());
  EXPECT_EQ(again->get("d"), "4");
}

TEST(FileKvStore, ForeignFileRejected) {
  TempDir dir;
  fs::create_directories(dir.path());
  write_all(dir.path() / "data.log", "NOTASTORE-at-all");
  try {
    FileKvStore::open(dir.path(), fast());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::CorruptRecord);
  }
}

TEST(FileKvStore, CompactShrinksLog) {
  TempDir dir;
  auto s = FileKvStore::open(dir.path(), fast());
  for (int i = 0; i < 500; ++i) s->put("hot", std::string(100, static_cast<char>('a' + i % 26)));
  s->put("cold", "x");
  const auto before = fs::file_size(s->log_path());
  s->compact();
  const auto after = fs::file_size(s->log_path());
  EXPECT_LT(after, before / 10);
  EXPECT_EQ(s->get("hot"), std::string(100, static_cast<char>('a' + 499 % 26)));
  s->put("later", "y");
  s.reset();
  auto again = FileKvStore::open(dir.path(), fast());
  EXPECT_EQ(again->get("cold"), "x");
  EXPECT_EQ(again->get("later"), "y");
}

TEST(FileKvStore, CompactsOnOpenPastThreshold) {
  TempDir dir;
  FileKvStore::Options o = fast();
  o.compact_min_bytes = 1024;
  {
    auto s = FileKvStore::open(dir.path(), o);
    for (int i = 0; i < 200; ++i) s->put("k", std::string(50, 'z'));
  }
  const auto grown = fs::file_size(dir.path() / "data.log");
  auto s = FileKvStore::open(dir.path(), o);
  EXPECT_LT(fs::file_size(s->log_path()), grown);
  EXPECT_EQ(s->get("k"), std::string(50, 'z'));
}

TEST(FileKvStore, ConcurrentWritersAllLand) {
  TempDir dir;
  auto s = FileKvStore::open(dir.path(), fast());
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t)
    threads.emplace_back([&, t] {
      for (int i = 0; i < 100; ++i) s->put("t" + std::to_string(t) + "/" + std::to_string(i), "v");
    });
  for (auto& t : threads) t.join();
  EXPECT_EQ(s->scan("t").size(), 400u);
  s.reset();
  EXPECT_EQ(FileKvStore::open(dir.path(), fast())->scan("t").size(), 400u);
}

TEST(KvExport, RoundTrip) {
  MemoryKvStore a;
  a.put("session/abc", std::string("\x01{\"x\":1}"));
  a.put("vo/CMS", std::string("bin\0ary", 7));
  const std::string dump = export_store(a);
  EXPECT_EQ(std::count(dump.begin(), dump.end(), '\n'), 2);
  MemoryKvStore b;
  EXPECT_EQ(import_store(b, dump), 2u);
  EXPECT_EQ(b.scan(""), a.scan(""));
  EXPECT_EQ(export_store(b), dump);
}

TEST(KvExport, RejectsGarbage) {
  MemoryKvStore s;
  for (const char* bad : {"not json\n", "{\"key\": \"!!\", \"value\": \"\"}\n", "{\"value\": \"eA==\"}\n", "[1,2]\n"}) {
    try {
      import_store(s, bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::CorruptRecord) << bad;
    }
  }
  EXPECT_EQ(import_store(s, "\n\n"), 0u);
}

}  // namespace
}  // namespace clarens
