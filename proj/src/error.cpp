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

#include "clarens/error.hpp"

namespace clarens {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyString: return "EmptyString";
    case Errc::EmbeddedNul: return "EmbeddedNul";
    case Errc::MalformedDn: return "MalformedDn";
    case Errc::BadGroupPath: return "BadGroupPath";
    case Errc::MalformedMethodName: return "MalformedMethodName";
    case Errc::BadUsername: return "BadUsername";
    case Errc::EmptyAdmins: return "EmptyAdmins";
    case Errc::NotAuthorized: return "NotAuthorized";
    case Errc::DuplicateGroup: return "DuplicateGroup";
    case Errc::MissingParent: return "MissingParent";
    case Errc::NoSuchGroup: return "NoSuchGroup";
    case Errc::ProtectedGroup: return "ProtectedGroup";
    case Errc::DenyListForbidden: return "DenyListForbidden";
    case Errc::NoSuchAcl: return "NoSuchAcl";
    case Errc::NoPeerCertificate: return "NoPeerCertificate";
    case Errc::BadCookieProtocol: return "BadCookieProtocol";
    case Errc::ChainVerifyFailed: return "ChainVerifyFailed";
    case Errc::ExpiredCertificate: return "ExpiredCertificate";
    case Errc::MalformedCertificate: return "MalformedCertificate";
    case Errc::MalformedKey: return "MalformedKey";
    case Errc::OversizedClientId: return "OversizedClientId";
    case Errc::InvalidClientId: return "InvalidClientId";
    case Errc::CryptoFailure: return "CryptoFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::ProtocolError: return "ProtocolError";
    case Errc::DuplicateMethod: return "DuplicateMethod";
    case Errc::BadPrefix: return "BadPrefix";
    case Errc::NoSuchMethod: return "NoSuchMethod";
    case Errc::BadArguments: return "BadArguments";
    case Errc::UnknownComponent: return "UnknownComponent";
    case Errc::EmptyKey: return "EmptyKey";
    case Errc::StorageFailure: return "StorageFailure";
    case Errc::CorruptRecord: return "CorruptRecord";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace clarens
