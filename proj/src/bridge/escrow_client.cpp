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

#include "promptlock/bridge/escrow_client.hpp"

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"

namespace promptlock::bridge {

sealer::ContentKey HttpEscrowKeyClient::redeem_key(std::string_view escrow_locator,
                                                   std::string_view bearer_token) {
  const auto ep = http::parse_endpoint(escrow_locator);
  httplib::Client client(ep.origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  const nlohmann::json body = {{"token", bearer_token}};
  auto res = client.Post(ep.base_path + "/v1/redeem/key", body.dump(), "application/json");
  if (!res) {
    throw Error(Errc::provider_unavailable,
                "escrow " + ep.origin + " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) http::throw_remote_error(res->status, res->body);
  const auto j = nlohmann::json::parse(res->body, nullptr, false);
  if (!j.is_object() || !j.contains("key") || !j["key"].is_string()) {
    throw Error(Errc::parse_error, "escrow reply lacks key material");
  }
  return sealer::ContentKey::from_text(j["key"].get<std::string>());
}

}  // namespace promptlock::bridge
