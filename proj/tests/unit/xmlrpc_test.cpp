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

#include <gtest/gtest.h>

#include "clarens/error.hpp"
#include "generators.hpp"

namespace clarens {
namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::ConfigError;
}

TEST(XmlRpc, DecodesCanonicalCall) {
  const auto call = decode_call(R"(<?xml version="1.0"?>
<methodCall>
  <methodName>echo.echo</methodName>
  <params>
    <param><value><i4>41</i4></value></param>
    <param><value>untyped</value></param>
    <param><value><struct>
      <member><name>a</name><value><boolean>1</boolean></value></member>
      <member><name>b</name><value><array><data>
        <value><double>2.5</double></value>
        <value><dateTime.iso8601>20030512T08:30:00</dateTime.iso8601></value>
        <value><base64>aGVsbG8=</base64></value>
      </data></array></value></member>
    </struct></value></param>
  </params>
</methodCall>)");
  EXPECT_EQ(call.method, "echo.echo");
  ASSERT_EQ(call.params.size(), 3u);
  EXPECT_EQ(call.params[0], RpcValue(41));
  EXPECT_EQ(call.params[1], RpcValue("untyped"));
  const auto& s = call.params[2].as<RpcValue::Struct>();
  EXPECT_EQ(s.at("a"), RpcValue(true));
  const auto& arr = s.at("b").as<RpcValue::Array>();
  ASSERT_EQ(arr.size(), 3u);
  EXPECT_EQ(arr[0], RpcValue(2.5));
  using namespace std::chrono;
  EXPECT_EQ(arr[1].as<DateTime>().time, sys_days(year(2003) / May / 12) + hours(8) + minutes(30));
  EXPECT_EQ(arr[2].as<Binary>().bytes, (std::vector<std::uint8_t>{'h', 'e', 'l', 'l', 'o'}));
}

TEST(XmlRpc, ZeroParamCall) {
  for (const char* body : {"<methodCall><methodName>system.auth2</methodName></methodCall>",
                           "<methodCall><methodName>system.auth2</methodName><params/></methodCall>"}) {
    const auto call = decode_call(body);
    EXPECT_EQ(call.method, "system.auth2");
    EXPECT_TRUE(call.params.empty());
  }
}

TEST(XmlRpc, MalformedXmlIsParseError) {
  EXPECT_EQ(code_of([] { decode_call("<not-xml"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { decode_call(""); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { decode_call("<a></b>"); }), Errc::ParseError);
}

TEST(XmlRpc, WrongShapeIsProtocolError) {
  EXPECT_EQ(code_of([] {
              decode_call(R"(<soap:Envelope xmlns:soap="http://schemas.xmlsoap.org/soap/envelope/">
                <soap:Body><m:echo xmlns:m="urn:x"/></soap:Body></soap:Envelope>)");
            }),
            Errc::ProtocolError);
  EXPECT_EQ(code_of([] { decode_call("<methodResponse/>"); }), Errc::ProtocolError);
  EXPECT_EQ(code_of([] { decode_call("<methodCall><params/></methodCall>"); }), Errc::ProtocolError);
  EXPECT_EQ(code_of([] {
              decode_call("<methodCall><methodName>a.b</methodName><params><param><value><nil/></value></param></params></methodCall>");
            }),
            Errc::ProtocolError);
  EXPECT_EQ(code_of([] {
              decode_call("<methodCall><methodName>a.b</methodName><params><param><value><int>12x</int></value></param></params></methodCall>");
            }),
            Errc::ProtocolError);
  EXPECT_EQ(code_of([] {
              decode_call("<methodCall><methodName>a.b</methodName><params><param><value><int>99999999999</int></value></param></params></methodCall>");
            }),
            Errc::ProtocolError);
}

TEST(XmlRpc, DoctypeRefused) {
  const std::string bomb = R"(<?xml version="1.0"?>
<!DOCTYPE lolz [<!ENTITY lol "lol"><!ENTITY lol2 "&lol;&lol;&lol;">]>
<methodCall><methodName>&lol2;</methodName></methodCall>)";
  EXPECT_THROW(decode_call(bomb), Error);
}

TEST(XmlRpc, FaultResponse) {
  const std::string body = encode_fault(FaultCode::NotAuthorized, "NotAuthorized: no <access>");
  const auto r = decode_response(body);
  ASSERT_TRUE(std::holds_alternative<Fault>(r));
  EXPECT_EQ(std::get<Fault>(r), (Fault{3, "NotAuthorized: no <access>"}));
}

TEST(XmlRpc, EscapingSurvives) {
  const RpcValue v(std::string("a<b & c>\r\n\t\"'"));
  const auto r = decode_response(encode_response(v));
  EXPECT_EQ(std::get<RpcValue>(r), v);
}

TEST(XmlRpc, CallRoundTrip) {
  MethodCall c{"group.create", {RpcValue("CMS.USA"), RpcValue(RpcValue::Array{RpcValue("/O=x/CN=y")})}};
  const auto back = decode_call(encode_call(c));
  EXPECT_EQ(back.method, c.method);
  EXPECT_EQ(back.params, c.params);
}

TEST(XmlRpc, RandomValuesRoundTrip) {
  testing::Rng rng(20030512);
  for (int i = 0; i < 500; ++i) {
    const RpcValue v = testing::random_value(rng);
    const auto r = decode_response(encode_response(v));
    ASSERT_TRUE(std::holds_alternative<RpcValue>(r));
    ASSERT_EQ(std::get<RpcValue>(r), v) << to_display_string(v);
    MethodCall c{"echo.echo", {v}};
    ASSERT_EQ(decode_call(encode_call(c)).params.front(), v);
  }
}

TEST(RpcValue, TypeNamesAndMismatch) {
  EXPECT_EQ(RpcValue(1).type_name(), "int");
  EXPECT_EQ(RpcValue(true).type_name(), "boolean");
  EXPECT_EQ(RpcValue("s").type_name(), "string");
  EXPECT_EQ(RpcValue(1.0).type_name(), "double");
  EXPECT_EQ(RpcValue(Binary{}).type_name(), "base64");
  EXPECT_EQ(RpcValue(RpcValue::Array{}).type_name(), "array");
  EXPECT_EQ(RpcValue(RpcValue::Struct{}).type_name(), "struct");
  try {
    RpcValue(1).as<std::string>();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadArguments);
  }
}

}  // namespace
}  // namespace clarens
