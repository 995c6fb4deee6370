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

#ifndef CLARENS_ERROR_HPP
#define CLARENS_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace clarens {

/// Every failure the library reports carries one of these codes. The names
/// are stable: the CLI prints them and RPC fault messages are prefixed with
/// them, so remote callers can recover the code.
enum class Errc {
  // ternary tree
  EmptyString,
  EmbeddedNul,
  // DNs, groups, method names
  MalformedDn,
  BadGroupPath,
  MalformedMethodName,
  BadUsername,
  // virtual organization
  EmptyAdmins,
  NotAuthorized,
  DuplicateGroup,
  MissingParent,
  NoSuchGroup,
  ProtectedGroup,
  // acl
  DenyListForbidden,
  NoSuchAcl,
  // authentication
  NoPeerCertificate,
  BadCookieProtocol,
  ChainVerifyFailed,
  ExpiredCertificate,
  MalformedCertificate,
  MalformedKey,
  OversizedClientId,
  InvalidClientId,
  CryptoFailure,
  // rpc
  ParseError,
  ProtocolError,
  DuplicateMethod,
  BadPrefix,
  NoSuchMethod,
  BadArguments,
  UnknownComponent,
  // storage
  EmptyKey,
  StorageFailure,
  CorruptRecord,
  // configuration
  ConfigError,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace clarens

#endif  // CLARENS_ERROR_HPP
