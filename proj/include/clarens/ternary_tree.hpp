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

#ifndef CLARENS_TERNARY_TREE_HPP
#define CLARENS_TERNARY_TREE_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "clarens/error.hpp"

namespace clarens {

/// String set answering "which stored string is the longest initial
/// substring of this query". Every DN list in the server (VO members and
/// administrators, ACL DN lists) is one of these.
///
/// Each node holds a fragment of two bytes. A string of odd length ends in
/// a node whose fragment is a single byte; there is no padding, so every
/// byte value other than NUL may appear in stored strings. Fragments are
/// compared bytewise (unsigned), a one-byte fragment ordering before every
/// two-byte fragment that starts with the same byte.
///
/// Removal tombstones the terminal node and leaves the structure alone.
/// The tree is a plain value: copying it yields an independent snapshot,
/// which is how owners publish updates to concurrent readers.
class TernaryTree {
 public:
  TernaryTree() = default;

  /// Stores `s`. Returns true if the live set grew (new string, or a
  /// tombstoned one revived).
  bool insert(std::string_view s) {
    if (s.empty()) throw Error(Errc::EmptyString, "cannot store an empty string");
    if (s.find('\0') != std::string_view::npos)
      throw Error(Errc::EmbeddedNul, "stored strings may not contain NUL bytes");

    std::size_t pos = 0;
    std::int32_t parent = kNil;
    Link via = Link::Root;
    std::int32_t cur = root_;
    for (;;) {
      const std::size_t len = std::min<std::size_t>(2, s.size() - pos);
      const char* frag = s.data() + pos;
      if (cur == kNil) {
        cur = allocate(frag, len);
        link(parent, via) = cur;
      }
      const int c = compare(frag, len, nodes_[cur]);
      if (c < 0) {
        parent = cur;
        via = Link::Lo;
        cur = nodes_[cur].lo;
        continue;
      }
      if (c > 0) {
        parent = cur;
        via = Link::Hi;
        cur = nodes_[cur].hi;
        continue;
      }
      pos += len;
      if (pos == s.size()) {
        Node& n = nodes_[cur];
        if (n.terminal && !n.tombstone) return false;
        n.terminal = true;
        n.tombstone = false;
        ++live_;
        return true;
      }
      parent = cur;
      via = Link::Eq;
      cur = nodes_[cur].eq;
    }
  }

  /// Tombstones `s` if it is stored. Returns true if the live set shrank.
  bool remove(std::string_view s) {
    const std::int32_t n = find_terminal(s);
    if (n == kNil || !is_live(nodes_[n])) return false;
    nodes_[n].tombstone = true;
    --live_;
    return true;
  }

  /// Length of the longest stored string that is an initial substring of
  /// `query`, or nullopt when none is. A result equal to query.size() is an
  /// exact match; anything shorter is a prefix match.
  std::optional<std::size_t> longest_prefix_match(std::string_view query) const {
    std::optional<std::size_t> best;
    std::size_t pos = 0;
    std::int32_t level = root_;
    while (level != kNil && pos < query.size()) {
      const char* p = query.data() + pos;
      const std::size_t remaining = query.size() - pos;

      // A one-byte terminal fragment ends an odd-length stored string here.
      const std::int32_t single = find_in_level(level, p, 1);
      if (single != kNil && is_live(nodes_[single])) best = pos + 1;
      if (remaining < 2) break;

      const std::int32_t pair = find_in_level(level, p, 2);
      if (pair == kNil) break;
      pos += 2;
      if (is_live(nodes_[pair])) best = pos;
      level = nodes_[pair].eq;
    }
    return best;
  }

  bool contains(std::string_view s) const {
    const std::int32_t n = find_terminal(s);
    return n != kNil && is_live(nodes_[n]);
  }

  std::size_t size() const noexcept { return live_; }
  bool empty() const noexcept { return live_ == 0; }

  /// Nodes allocated, including those only reachable through tombstones.
  std::size_t node_count() const noexcept { return nodes_.size(); }

  void clear() noexcept {
    nodes_.clear();
    root_ = kNil;
    live_ = 0;
  }

  /// Visits live strings in bytewise order.
  template <class F>
  void for_each(F&& fn) const {
    std::string prefix;
    walk(root_, prefix, fn);
  }

  std::vector<std::string> strings() const {
    std::vector<std::string> out;
    out.reserve(live_);
    for_each([&](const std::string& s) { out.push_back(s); });
    return out;
  }

  /// Graphviz rendering of the node structure. Terminal nodes are drawn as
  /// double circles, tombstoned ones dashed.
  std::string to_dot() const {
    std::ostringstream os;
    os << "digraph ternary_tree {\n  node [shape=circle];\n";
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      os << "  n" << i << " [label=\"" << dot_escape(std::string_view(n.frag.data(), n.len))
         << "\"";
      if (n.terminal) os << ", shape=doublecircle";
      if (n.tombstone) os << ", style=dashed";
      os << "];\n";
      if (n.lo != kNil) os << "  n" << i << " -> n" << n.lo << " [label=\"<\"];\n";
      if (n.eq != kNil) os << "  n" << i << " -> n" << n.eq << " [label=\"=\"];\n";
      if (n.hi != kNil) os << "  n" << i << " -> n" << n.hi << " [label=\">\"];\n";
    }
    os << "}\n";
    return os.str();
  }

  friend bool operator==(const TernaryTree& a, const TernaryTree& b) {
    return a.live_ == b.live_ && a.strings() == b.strings();
  }

 private:
  static constexpr std::int32_t kNil = -1;

  struct Node {
    std::array<char, 2> frag{};
    std::uint8_t len = 0;
    bool terminal = false;
    bool tombstone = false;
    std::int32_t lo = kNil;
    std::int32_t eq = kNil;
    std::int32_t hi = kNil;
  };

  enum class Link { Root, Lo, Eq, Hi };

  static bool is_live(const Node& n) noexcept { return n.terminal && !n.tombstone; }

  static int compare(const char* p, std::size_t len, const Node& n) noexcept {
    const auto a0 = static_cast<unsigned char>(p[0]);
    const auto b0 = static_cast<unsigned char>(n.frag[0]);
    if (a0 != b0) return a0 < b0 ? -1 : 1;
    if (len == 1 || n.len == 1) return static_cast<int>(len) - static_cast<int>(n.len);
    const auto a1 = static_cast<unsigned char>(p[1]);
    const auto b1 = static_cast<unsigned char>(n.frag[1]);
    if (a1 != b1) return a1 < b1 ? -1 : 1;
    return 0;
  }

  std::int32_t find_in_level(std::int32_t n, const char* p, std::size_t len) const noexcept {
    while (n != kNil) {
      const int c = compare(p, len, nodes_[n]);
      if (c == 0) return n;
      n = c < 0 ? nodes_[n].lo : nodes_[n].hi;
    }
    return kNil;
  }

  std::int32_t find_terminal(std::string_view s) const noexcept {
    if (s.empty()) return kNil;
    std::size_t pos = 0;
    std::int32_t level = root_;
    for (;;) {
      const std::size_t len = std::min<std::size_t>(2, s.size() - pos);
      const std::int32_t n = find_in_level(level, s.data() + pos, len);
      if (n == kNil) return kNil;
      pos += len;
      if (pos == s.size()) return n;
      level = nodes_[n].eq;
    }
  }

  std::int32_t allocate(const char* frag, std::size_t len) {
    Node n;
    n.frag[0] = frag[0];
    if (len == 2) n.frag[1] = frag[1];
    n.len = static_cast<std::uint8_t>(len);
    nodes_.push_back(n);
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t& link(std::int32_t parent, Link via) {
    switch (via) {
      case Link::Lo: return nodes_[parent].lo;
      case Link::Eq: return nodes_[parent].eq;
      case Link::Hi: return nodes_[parent].hi;
      case Link::Root: break;
    }
    return root_;
  }

  template <class F>
  void walk(std::int32_t n, std::string& prefix, F& fn) const {
    if (n == kNil) return;
    const Node& node = nodes_[n];
    walk(node.lo, prefix, fn);
    prefix.append(node.frag.data(), node.len);
    if (is_live(node)) fn(static_cast<const std::string&>(prefix));
    walk(node.eq, prefix, fn);
    prefix.resize(prefix.size() - node.len);
    walk(node.hi, prefix, fn);
  }

  static std::string dot_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out.push_back('\\');
      out.push_back(c);
    }
    return out;
  }

  std::vector<Node> nodes_;
  std::int32_t root_ = kNil;
  std::size_t live_ = 0;
};

}  // namespace clarens

#endif  // CLARENS_TERNARY_TREE_HPP
