// Copyright 2026 The PromptLock Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "promptlock/bridge/http_api.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"

namespace promptlock::bridge {
namespace {

using nlohmann::json;

SessionId session_from_path(const std::string& text) {
  try {
    return SessionId::parse(text);
  } catch (const Error&) {
    throw Error(Errc::unknown_session, "no session " + text);
  }
}

json parse_object(const std::string& body) {
  auto j = json::parse(body, nullptr, false);
  if (!j.is_object()) throw Error(Errc::parse_error, "body is not a JSON object");
  return j;
}

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void fail(httplib::Response& res, const std::optional<http::Failure>& f) {
  if (!f) return;
  res.status = f->status;
  res.set_content(f->body, "application/json");
}

}  // namespace

void mount_bridge_api(httplib::Server& server, BridgeService& service) {
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"status", "ok"}});
  });

  server.Post("/v1/session", [&service](const httplib::Request& req, httplib::Response& res) {
    fail(res, http::guard([&] {
      const auto j = parse_object(req.body);
      const auto envelope = j.at("envelope").get<std::string>();
      if (j.contains("bearer_token")) {
        auto out = service.open_escrow_session(envelope, j.at("bearer_token").get<std::string>(),
                                               j.at("request").get<std::string>());
        send(res, 201, {{"session_id", out.session_id.str()},
                        {"state", to_string(service.state(out.session_id))},
                        {"response", out.artifact.text},
                        {"redacted", out.artifact.redacted}});
        return;
      }
      const auto id = service.open_session(envelope, j.at("user_key").get<std::string>());
      send(res, 201, {{"session_id", id.str()}, {"state", to_string(service.state(id))}});
    }));
  });

  server.Post(R"(/v1/session/([A-Za-z0-9_-]+)/chat)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                fail(res, http::guard([&] {
                  const auto id = session_from_path(req.matches[1]);
                  auto out = service.chat(id, req.body);
                  send(res, 200, {{"response", out.text}, {"redacted", out.redacted}});
                }));
              });

  server.Delete(R"(/v1/session/([A-Za-z0-9_-]+))",
                [&service](const httplib::Request& req, httplib::Response& res) {
                  fail(res, http::guard([&] {
                    service.close_session(session_from_path(req.matches[1]));
                    send(res, 200, {{"closed", true}});
                  }));
                });
}

BridgeClient::BridgeClient(std::string base_url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  auto ep = http::parse_endpoint(base_url);
  origin_ = std::move(ep.origin);
  base_path_ = std::move(ep.base_path);
}

namespace {

json expect(const httplib::Result& res, const std::string& origin, int want) {
  if (!res) {
    throw Error(Errc::provider_unavailable,
                "bridge " + origin + " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != want) http::throw_remote_error(res->status, res->body);
  auto j = json::parse(res->body, nullptr, false);
  if (!j.is_object()) throw Error(Errc::parse_error, "bridge reply is not a JSON object");
  return j;
}

httplib::Client make_client(const std::string& origin, std::chrono::milliseconds timeout) {
  httplib::Client c(origin);
  c.set_connection_timeout(timeout);
  c.set_read_timeout(timeout);
  c.set_write_timeout(timeout);
  return c;
}

}  // namespace

std::string BridgeClient::open_session(std::string_view envelope, std::string_view user_key) {
  auto c = make_client(origin_, timeout_);
  const json body = {{"envelope", envelope}, {"user_key", user_key}};
  auto j = expect(c.Post(base_path_ + "/v1/session", body.dump(), "application/json"), origin_,
                  201);
  return j.at("session_id").get<std::string>();
}

std::pair<std::string, ChatReply> BridgeClient::open_escrow_session(std::string_view envelope,
                                                                    std::string_view bearer_token,
                                                                    std::string_view request) {
  auto c = make_client(origin_, timeout_);
  const json body = {{"envelope", envelope}, {"bearer_token", bearer_token}, {"request", request}};
  auto j = expect(c.Post(base_path_ + "/v1/session", body.dump(), "application/json"), origin_,
                  201);
  return {j.at("session_id").get<std::string>(),
          ChatReply{j.at("response").get<std::string>(), j.at("redacted").get<bool>()}};
}

ChatReply BridgeClient::chat(std::string_view session_id, std::string_view request) {
  auto c = make_client(origin_, timeout_);
  auto j = expect(c.Post(base_path_ + "/v1/session/" + std::string(session_id) + "/chat",
                         std::string(request), "text/plain"),
                  origin_, 200);
  return {j.at("response").get<std::string>(), j.at("redacted").get<bool>()};
}

void BridgeClient::close(std::string_view session_id) {
  auto c = make_client(origin_, timeout_);
  expect(c.Delete(base_path_ + "/v1/session/" + std::string(session_id)), origin_, 200);
}

}  // namespace promptlock::bridge
