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

#include "clarens/rpc_registry.hpp"

#include "clarens/dotted_name.hpp"
#include "clarens/error.hpp"

namespace clarens {

void ModuleRegistry::register_module(std::string_view prefix, std::vector<MethodDescriptor> methods) {
  if (!is_valid_method_name(prefix))
    throw Error(Errc::BadPrefix, "invalid module prefix '" + std::string(prefix) + "'");
  if (prefix.front() == '~' && prefix.find('.') == std::string_view::npos)
    throw Error(Errc::BadPrefix, "user-scoped modules are named '~user.module'");
  const std::string lead = std::string(prefix) + ".";
  for (const auto& m : methods) {
    if (m.full_name.compare(0, lead.size(), lead) != 0 || m.full_name.size() == lead.size())
      throw Error(Errc::BadPrefix, "method '" + m.full_name + "' is not under '" + std::string(prefix) + "'");
    if (!is_valid_method_name(m.full_name))
      throw Error(Errc::MalformedMethodName, "invalid method name '" + m.full_name + "'");
    if (m.signatures.empty())
      throw Error(Errc::BadArguments, "method '" + m.full_name + "' declares no signature");
    if (!m.handler) throw Error(Errc::BadArguments, "method '" + m.full_name + "' has no handler");
  }
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods_.count(methods[i].full_name))
      throw Error(Errc::DuplicateMethod, "method '" + methods[i].full_name + "' already registered");
    for (std::size_t j = 0; j < i; ++j)
      if (methods[j].full_name == methods[i].full_name)
        throw Error(Errc::DuplicateMethod, "method '" + methods[i].full_name + "' listed twice");
  }
  auto& names = modules_[std::string(prefix)];
  for (auto& m : methods) {
    names.push_back(m.full_name);
    std::string key = m.full_name;
    methods_.emplace(std::move(key), std::move(m));
  }
}

const MethodDescriptor* ModuleRegistry::find(std::string_view full_name) const {
  auto it = methods_.find(full_name);
  return it == methods_.end() ? nullptr : &it->second;
}

std::vector<std::string> ModuleRegistry::method_names() const {
  std::vector<std::string> out;
  out.reserve(methods_.size());
  for (const auto& [name, m] : methods_) out.push_back(name);
  return out;
}

std::vector<std::string> ModuleRegistry::module_prefixes() const {
  std::vector<std::string> out;
  for (const auto& [prefix, names] : modules_) out.push_back(prefix);
  return out;
}

namespace {

Fault fault(FaultCode code, std::string message) {
  return Fault{static_cast<std::int32_t>(code), std::move(message)};
}

}  // namespace

DispatchResult dispatch(const ModuleRegistry& registry, const AclStore& acls,
                        const VoRegistry& vo, CallContext& ctx, std::string_view method,
                        std::span<const RpcValue> args) {
  DispatchResult result{RpcValue(), false, std::nullopt};
  const MethodDescriptor* desc = registry.find(method);
  if (desc == nullptr) {
    result.response = fault(FaultCode::NoSuchMethod, "no such method '" + std::string(method) + "'");
    return result;
  }

  if (!bypasses_acl(method)) {
    const AclDecision decision = acls.check_method_access(method, ctx.dn(), vo);
    result.decided_at = decision.decided_at;
    if (decision.verdict != Verdict::allow) {
      result.denied = true;
      result.response = fault(FaultCode::NotAuthorized,
                              "access to '" + std::string(method) + "' denied for " + ctx.dn());
      return result;
    }
  }

  try {
    if (desc->concurrency == Concurrency::exclusive) {
      std::lock_guard lock(registry.exclusive_mutex());
      result.response = desc->handler(ctx, args);
    } else {
      result.response = desc->handler(ctx, args);
    }
  } catch (const RpcFault& f) {
    result.response = fault(f.code(), f.what());
  } catch (const Error& e) {
    const FaultCode code = e.code() == Errc::NotAuthorized ? FaultCode::NotAuthorized
                           : e.code() == Errc::NoSuchMethod ? FaultCode::NoSuchMethod
                                                            : FaultCode::HandlerError;
    result.response = fault(code, std::string(to_string(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    result.response = fault(FaultCode::HandlerError, e.what());
  }
  return result;
}

void expect_arity(std::span<const RpcValue> args, std::size_t min, std::size_t max) {
  if (args.size() < min || args.size() > max) {
    std::string want = min == max ? std::to_string(min)
                                  : std::to_string(min) + ".." + std::to_string(max);
    throw RpcFault(FaultCode::HandlerError, "BadArguments: expected " + want + " arguments, got " +
                                                std::to_string(args.size()));
  }
}

const std::string& string_arg(std::span<const RpcValue> args, std::size_t i) {
  if (i >= args.size() || !args[i].is<std::string>())
    throw RpcFault(FaultCode::HandlerError,
                   "BadArguments: argument " + std::to_string(i + 1) + " must be a string");
  return args[i].as<std::string>();
}

std::vector<std::string> string_list_arg(std::span<const RpcValue> args, std::size_t i) {
  if (i >= args.size() || !args[i].is<RpcValue::Array>())
    throw RpcFault(FaultCode::HandlerError,
                   "BadArguments: argument " + std::to_string(i + 1) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : args[i].as<RpcValue::Array>()) {
    if (!v.is<std::string>())
      throw RpcFault(FaultCode::HandlerError,
                     "BadArguments: argument " + std::to_string(i + 1) + " must be an array of strings");
    out.push_back(v.as<std::string>());
  }
  return out;
}

}  // namespace clarens
