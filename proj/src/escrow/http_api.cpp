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

#include "promptlock/escrow/http_api.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"

namespace promptlock::escrow {
namespace {

using nlohmann::json;

json parse_object(const std::string& body) {
  auto j = json::parse(body, nullptr, false);
  if (!j.is_object()) throw Error(Errc::parse_error, "body is not a JSON object");
  return j;
}

TokenId token_from(const std::string& text) {
  try {
    return TokenId::parse(text);
  } catch (const Error&) {
    throw Error(Errc::token_unknown, "no token " + text);
  }
}

PromptId prompt_from(const std::string& text) {
  try {
    return PromptId::parse(text);
  } catch (const Error&) {
    throw Error(Errc::unknown_prompt, "no listing " + text);
  }
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

void mount_escrow_api(httplib::Server& server, EscrowService& service) {
  server.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"status", "ok"}});
  });

  server.Get("/v1/listings", [&service](const httplib::Request&, httplib::Response& res) {
    fail(res, http::guard([&] {
      json out = json::array();
      for (const auto& l : service.listings()) out.push_back(l.public_json());
      send(res, 200, {{"listings", out}});
    }));
  });

  server.Post("/v1/listings", [&service](const httplib::Request& req, httplib::Response& res) {
    fail(res, http::guard([&] {
      const auto j = parse_object(req.body);
      sealer::TaskPrompt task(j.at("task").get<std::string>());
      const auto listing = service.register_listing(
          task, j.at("description").get<std::string>(), j.value("preamble", std::string()));
      task.wipe();
      send(res, 201, listing.public_json());
    }));
  });

  server.Post(R"(/v1/listings/([A-Za-z0-9_-]+)/purchase)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                fail(res, http::guard([&] {
                  const auto p = service.purchase(prompt_from(req.matches[1]));
                  send(res, 200, {{"envelope", p.envelope}, {"token", p.token.to_json()}});
                }));
              });

  server.Post("/v1/redeem/key", [&service](const httplib::Request& req, httplib::Response& res) {
    fail(res, http::guard([&] {
      const auto j = parse_object(req.body);
      const auto key = service.redeem_key(token_from(j.at("token").get<std::string>()));
      send(res, 200, {{"key", key.to_text()}});
    }));
  });

  server.Post("/v1/redeem/full", [&service](const httplib::Request& req, httplib::Response& res) {
    fail(res, http::guard([&] {
      const auto j = parse_object(req.body);
      const auto artifact = service.redeem_full(token_from(j.at("token").get<std::string>()),
                                                j.at("request").get<std::string>());
      send(res, 200, {{"artifact", artifact}});
    }));
  });

  server.Get(R"(/v1/tokens/([A-Za-z0-9_-]+))",
             [&service](const httplib::Request& req, httplib::Response& res) {
               fail(res, http::guard([&] {
                 const auto id = token_from(req.matches[1]);
                 const auto s = service.introspect_token(id);
                 send(res, 200, {{"token_id", id.str()},
                                 {"state", to_string(s.state)},
                                 {"prompt_id", s.prompt_id.str()},
                                 {"bound_key_version", s.bound_key_version}});
               }));
             });

  server.Post(R"(/v1/tokens/([A-Za-z0-9_-]+)/revoke)",
              [&service](const httplib::Request& req, httplib::Response& res) {
                fail(res, http::guard([&] {
                  service.revoke_token(token_from(req.matches[1]));
                  send(res, 200, {{"state", "revoked"}});
                }));
              });
}

}  // namespace promptlock::escrow
