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

#include "clarens/xmlrpc.hpp"

#include <expat.h>

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <memory>

#include "clarens/crypto.hpp"
#include "clarens/error.hpp"

namespace clarens {

namespace {

constexpr int kMaxDepth = 128;

// ---------------------------------------------------------------- DOM

struct Element {
  std::string name;
  std::string text;
  std::vector<Element> children;
};

struct ParseState {
  std::vector<Element*> stack;
  Element root;
  bool have_root = false;
  std::string abort_reason;
  XML_Parser parser = nullptr;
};

void abort_parse(ParseState& st, std::string reason) {
  if (st.abort_reason.empty()) st.abort_reason = std::move(reason);
  XML_StopParser(st.parser, XML_FALSE);
}

void XMLCALL on_start(void* data, const XML_Char* name, const XML_Char**) {
  auto& st = *static_cast<ParseState*>(data);
  if (st.stack.size() >= kMaxDepth) return abort_parse(st, "document nested too deeply");
  Element* e;
  if (st.stack.empty()) {
    st.have_root = true;
    e = &st.root;
  } else {
    st.stack.back()->children.emplace_back();
    e = &st.stack.back()->children.back();
  }
  e->name = name;
  st.stack.push_back(e);
}

void XMLCALL on_end(void* data, const XML_Char*) {
  static_cast<ParseState*>(data)->stack.pop_back();
}

void XMLCALL on_text(void* data, const XML_Char* s, int len) {
  auto& st = *static_cast<ParseState*>(data);
  if (!st.stack.empty()) st.stack.back()->text.append(s, static_cast<std::size_t>(len));
}

void XMLCALL on_doctype(void* data, const XML_Char*, const XML_Char*, const XML_Char*, int) {
  abort_parse(*static_cast<ParseState*>(data), "DOCTYPE declarations are not accepted");
}

Element parse_xml(std::string_view body) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw Error(Errc::ParseError, "cannot allocate XML parser");
  ParseState st;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetStartDoctypeDeclHandler(parser.get(), on_doctype);

  const auto status = XML_Parse(parser.get(), body.data(), static_cast<int>(body.size()), XML_TRUE);
  if (!st.abort_reason.empty()) throw Error(Errc::ProtocolError, st.abort_reason);
  if (status != XML_STATUS_OK || !st.have_root) {
    const auto line = XML_GetCurrentLineNumber(parser.get());
    throw Error(Errc::ParseError, std::string("malformed XML: ") +
                                      XML_ErrorString(XML_GetErrorCode(parser.get())) + " at line " +
                                      std::to_string(line));
  }
  return std::move(st.root);
}

// ---------------------------------------------------------------- decode

[[noreturn]] void protocol(const std::string& why) { throw Error(Errc::ProtocolError, why); }

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\r\n") == std::string_view::npos;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string_view local_name(std::string_view name) {
  const auto colon = name.rfind(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

const Element& only_child(const Element& e, std::string_view name) {
  if (e.children.size() != 1 || e.children.front().name != name || !is_blank(e.text))
    protocol("<" + e.name + "> must contain exactly one <" + std::string(name) + ">");
  return e.children.front();
}

void require_leaf(const Element& e) {
  if (!e.children.empty()) protocol("<" + e.name + "> may not contain elements");
}

std::int32_t parse_int(std::string_view text) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  std::int32_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || p != text.data() + text.size())
    protocol("invalid int value '" + std::string(text) + "'");
  return v;
}

double parse_double(std::string_view text) {
  const std::string s(trim(text));
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) protocol("invalid double value '" + s + "'");
  return v;
}

DateTime parse_datetime(std::string_view text) {
  const std::string s(trim(text));
  int y, mo, d, h, mi, sec;
  char tail = 0;
  int n = std::sscanf(s.c_str(), "%4d%2d%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &tail);
  if (n < 6) n = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &tail);
  if (n < 6 || (n == 7 && (tail != 'Z' || s.back() != 'Z')) || mo < 1 || mo > 12 || d < 1 ||
      d > 31 || h > 23 || mi > 59 || sec > 60)
    protocol("invalid dateTime.iso8601 value '" + s + "'");
  std::tm tm{};
  tm.tm_year = y - 1900;
  tm.tm_mon = mo - 1;
  tm.tm_mday = d;
  tm.tm_hour = h;
  tm.tm_min = mi;
  tm.tm_sec = sec;
  return DateTime{std::chrono::sys_seconds(std::chrono::seconds(timegm(&tm)))};
}

RpcValue decode_value(const Element& value);

RpcValue decode_typed(const Element& t) {
  const std::string& tag = t.name;
  if (tag == "i4" || tag == "int") {
    require_leaf(t);
    return parse_int(t.text);
  }
  if (tag == "boolean") {
    require_leaf(t);
    const auto s = trim(t.text);
    if (s == "1") return true;
    if (s == "0") return false;
    protocol("invalid boolean value '" + std::string(s) + "'");
  }
  if (tag == "string") {
    require_leaf(t);
    return t.text;
  }
  if (tag == "double") {
    require_leaf(t);
    return parse_double(t.text);
  }
  if (tag == "dateTime.iso8601") {
    require_leaf(t);
    return parse_datetime(t.text);
  }
  if (tag == "base64") {
    require_leaf(t);
    auto bytes = base64_decode(t.text);
    if (!bytes) protocol("invalid base64 value");
    return Binary{std::move(*bytes)};
  }
  if (tag == "array") {
    const Element& data = only_child(t, "data");
    if (!is_blank(data.text)) protocol("<data> may only contain <value> elements");
    RpcValue::Array items;
    items.reserve(data.children.size());
    for (const auto& v : data.children) {
      if (v.name != "value") protocol("<data> may only contain <value> elements");
      items.push_back(decode_value(v));
    }
    return items;
  }
  if (tag == "struct") {
    if (!is_blank(t.text)) protocol("<struct> may only contain <member> elements");
    RpcValue::Struct members;
    for (const auto& m : t.children) {
      if (m.name != "member" || m.children.size() != 2 || !is_blank(m.text))
        protocol("<member> must contain <name> and <value>");
      const Element* name = nullptr;
      const Element* value = nullptr;
      for (const auto& c : m.children) {
        if (c.name == "name") name = &c;
        else if (c.name == "value") value = &c;
      }
      if (name == nullptr || value == nullptr) protocol("<member> must contain <name> and <value>");
      require_leaf(*name);
      members.insert_or_assign(name->text, decode_value(*value));
    }
    return members;
  }
  protocol("unknown value type <" + tag + ">");
}

RpcValue decode_value(const Element& value) {
  if (value.children.empty()) return value.text;  // untyped means string
  if (value.children.size() != 1 || !is_blank(value.text))
    protocol("<value> must contain a single typed element");
  return decode_typed(value.children.front());
}

std::vector<RpcValue> decode_params(const Element& params) {
  if (!is_blank(params.text)) protocol("<params> may only contain <param> elements");
  std::vector<RpcValue> out;
  out.reserve(params.children.size());
  for (const auto& p : params.children) {
    if (p.name != "param") protocol("<params> may only contain <param> elements");
    out.push_back(decode_value(only_child(p, "value")));
  }
  return out;
}

void reject_soap(const Element& root) {
  if (local_name(root.name) == "Envelope") protocol("SOAP not supported");
}

// ---------------------------------------------------------------- encode

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '\r': out += "&#13;"; break;  // parsers normalize a raw CR away
      default: out.push_back(c);
    }
  }
}

void encode_value(std::string& out, const RpcValue& v) {
  out += "<value>";
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int32_t>) {
          out += "<int>" + std::to_string(x) + "</int>";
        } else if constexpr (std::is_same_v<T, bool>) {
          out += x ? "<boolean>1</boolean>" : "<boolean>0</boolean>";
        } else if constexpr (std::is_same_v<T, std::string>) {
          out += "<string>";
          escape_into(out, x);
          out += "</string>";
        } else if constexpr (std::is_same_v<T, double>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", x);
          out += "<double>";
          out += buf;
          out += "</double>";
        } else if constexpr (std::is_same_v<T, DateTime>) {
          const std::time_t t = x.time.time_since_epoch().count();
          std::tm tm{};
          gmtime_r(&t, &tm);
          char buf[32];
          std::strftime(buf, sizeof buf, "%Y%m%dT%H:%M:%S", &tm);
          out += "<dateTime.iso8601>";
          out += buf;
          out += "</dateTime.iso8601>";
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += "<base64>" + base64_encode(x.bytes) + "</base64>";
        } else if constexpr (std::is_same_v<T, RpcValue::Array>) {
          out += "<array><data>";
          for (const auto& e : x) encode_value(out, e);
          out += "</data></array>";
        } else {
          out += "<struct>";
          for (const auto& [k, e] : x) {
            out += "<member><name>";
            escape_into(out, k);
            out += "</name>";
            encode_value(out, e);
            out += "</member>";
          }
          out += "</struct>";
        }
      },
      v.variant());
  out += "</value>";
}

constexpr std::string_view kProlog = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

}  // namespace

MethodCall decode_call(std::string_view body) {
  const Element root = parse_xml(body);
  reject_soap(root);
  if (root.name != "methodCall") protocol("expected <methodCall>, got <" + root.name + ">");
  if (!is_blank(root.text)) protocol("unexpected text in <methodCall>");

  MethodCall call;
  bool have_name = false;
  bool have_params = false;
  for (const auto& c : root.children) {
    if (c.name == "methodName" && !have_name) {
      require_leaf(c);
      call.method = std::string(trim(c.text));
      have_name = true;
    } else if (c.name == "params" && !have_params) {
      call.params = decode_params(c);
      have_params = true;
    } else {
      protocol("unexpected <" + c.name + "> in <methodCall>");
    }
  }
  if (!have_name || call.method.empty()) protocol("<methodCall> lacks a <methodName>");
  return call;
}

MethodResponse decode_response(std::string_view body) {
  const Element root = parse_xml(body);
  reject_soap(root);
  if (root.name != "methodResponse") protocol("expected <methodResponse>, got <" + root.name + ">");
  if (root.children.size() != 1 || !is_blank(root.text))
    protocol("<methodResponse> must contain <params> or <fault>");
  const Element& c = root.children.front();
  if (c.name == "params") {
    auto params = decode_params(c);
    if (params.size() != 1) protocol("a response carries exactly one value");
    return std::move(params.front());
  }
  if (c.name == "fault") {
    const RpcValue v = decode_value(only_child(c, "value"));
    if (!v.is<RpcValue::Struct>()) protocol("fault value must be a struct");
    const auto& s = v.as<RpcValue::Struct>();
    auto code = s.find("faultCode");
    auto text = s.find("faultString");
    if (code == s.end() || text == s.end() || !code->second.is<std::int32_t>() ||
        !text->second.is<std::string>())
      protocol("fault struct needs an int faultCode and a string faultString");
    return Fault{code->second.as<std::int32_t>(), text->second.as<std::string>()};
  }
  protocol("unexpected <" + c.name + "> in <methodResponse>");
}

std::string encode_call(const MethodCall& call) {
  std::string out(kProlog);
  out += "<methodCall><methodName>";
  escape_into(out, call.method);
  out += "</methodName><params>";
  for (const auto& p : call.params) {
    out += "<param>";
    encode_value(out, p);
    out += "</param>";
  }
  out += "</params></methodCall>\n";
  return out;
}

std::string encode_response(const RpcValue& value) {
  std::string out(kProlog);
  out += "<methodResponse><params><param>";
  encode_value(out, value);
  out += "</param></params></methodResponse>\n";
  return out;
}

std::string encode_fault(std::int32_t code, std::string_view message) {
  RpcValue::Struct s;
  s.emplace("faultCode", RpcValue(code));
  s.emplace("faultString", RpcValue(message));
  std::string out(kProlog);
  out += "<methodResponse><fault>";
  encode_value(out, RpcValue(std::move(s)));
  out += "</fault></methodResponse>\n";
  return out;
}

}  // namespace clarens
