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

#include "promptlock/escrow/http_client.hpp"

#include <httplib.h>

#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"

namespace promptlock::escrow {

using nlohmann::json;

EscrowClient::EscrowClient(std::string base_url, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  auto ep = http::parse_endpoint(base_url);
  origin_ = std::move(ep.origin);
  base_path_ = std::move(ep.base_path);
}

json EscrowClient::call(const std::string& method, const std::string& path, const json* body,
                        int want) {
  httplib::Client c(origin_);
  c.set_connection_timeout(timeout_);
  c.set_read_timeout(timeout_);
  c.set_write_timeout(timeout_);
  const auto full = base_path_ + path;
  const std::string payload = body ? body->dump() : std::string("{}");
  auto res = method == "GET" ? c.Get(full) : c.Post(full, payload, "application/json");
  if (!res) {
    throw Error(Errc::provider_unavailable,
                "escrow " + origin_ + " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != want) http::throw_remote_error(res->status, res->body);
  auto j = json::parse(res->body, nullptr, false);
  if (!j.is_object()) throw Error(Errc::parse_error, "escrow reply is not a JSON object");
  return j;
}

std::vector<json> EscrowClient::listings() {
  auto j = call("GET", "/v1/listings", nullptr, 200);
  return j.at("listings").get<std::vector<json>>();
}

json EscrowClient::add_listing(std::string_view task_body, std::string_view description,
                               std::string_view preamble) {
  const json body = {{"task", task_body}, {"description", description}, {"preamble", preamble}};
  return call("POST", "/v1/listings", &body, 201);
}

RemotePurchase EscrowClient::purchase(std::string_view prompt_id) {
  auto j = call("POST", "/v1/listings/" + std::string(prompt_id) + "/purchase", nullptr, 200);
  RemotePurchase p;
  p.envelope = j.at("envelope").get<std::string>();
  p.token = j.at("token");
  p.token_id = p.token.at("token_id").get<std::string>();
  return p;
}

sealer::ContentKey EscrowClient::redeem_key(std::string_view token_id) {
  const json body = {{"token", token_id}};
  auto j = call("POST", "/v1/redeem/key", &body, 200);
  return sealer::ContentKey::from_text(j.at("key").get<std::string>());
}

std::string EscrowClient::redeem_full(std::string_view token_id, std::string_view request) {
  const json body = {{"token", token_id}, {"request", request}};
  return call("POST", "/v1/redeem/full", &body, 200).at("artifact").get<std::string>();
}

json EscrowClient::token_status(std::string_view token_id) {
  return call("GET", "/v1/tokens/" + std::string(token_id), nullptr, 200);
}

void EscrowClient::revoke(std::string_view token_id) {
  call("POST", "/v1/tokens/" + std::string(token_id) + "/revoke", nullptr, 200);
}

std::shared_ptr<bridge::EscrowKeyClient> in_process_key_client(EscrowService& service) {
  return std::make_shared<bridge::FunctionEscrowKeyClient>(
      [&service](std::string_view, std::string_view token) {
        TokenId id;
        try {
          id = TokenId::parse(token);
        } catch (const Error&) {
          throw Error(Errc::token_unknown, "no token " + std::string(token));
        }
        return service.redeem_key(id);
      });
}

}  // namespace promptlock::escrow
