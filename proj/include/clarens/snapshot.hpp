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

#ifndef CLARENS_SNAPSHOT_HPP
#define CLARENS_SNAPSHOT_HPP

#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>

namespace clarens {

/// Copy-on-write holder. Readers grab an immutable snapshot and keep it as
/// long as they like; writers are serialized, mutate a private copy and
/// publish it in one pointer swap, so no reader ever observes a partially
/// applied change.
template <class T>
class Snapshot {
 public:
  explicit Snapshot(T initial = T{})
      : current_(std::make_shared<const T>(std::move(initial))) {}

  std::shared_ptr<const T> read() const {
    std::lock_guard lock(ptr_mutex_);
    return current_;
  }

  /// Runs `fn(T&)` on a copy of the current value and publishes the copy
  /// if `fn` returns normally. An exception from `fn` leaves the published
  /// value untouched. Returns whatever `fn` returns.
  template <class F>
  decltype(auto) update(F&& fn) {
    std::lock_guard writer(writer_mutex_);
    auto next = std::make_shared<T>(*read());
    if constexpr (std::is_void_v<std::invoke_result_t<F, T&>>) {
      fn(*next);
      publish(std::move(next));
    } else {
      auto result = fn(*next);
      publish(std::move(next));
      return result;
    }
  }

  void replace(T value) {
    std::lock_guard writer(writer_mutex_);
    publish(std::make_shared<T>(std::move(value)));
  }

 private:
  void publish(std::shared_ptr<T> next) {
    std::shared_ptr<const T> frozen = std::move(next);
    std::lock_guard lock(ptr_mutex_);
    current_.swap(frozen);
  }

  mutable std::mutex ptr_mutex_;
  std::mutex writer_mutex_;
  std::shared_ptr<const T> current_;
};

}  // namespace clarens

#endif  // CLARENS_SNAPSHOT_HPP
