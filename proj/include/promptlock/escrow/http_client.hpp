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

#pragma once

#include <chrono>
#include <memory>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/bridge/escrow_client.hpp"
#include "promptlock/escrow/service.hpp"

namespace promptlock::escrow {

struct RemotePurchase {
  std::string envelope;
  std::string token_id;
  nlohmann::json token;
};

// Client for the escrow API. Remote errors come back as promptlock::Error
// with the service's code; an unreachable escrow is provider_unavailable.
class EscrowClient {
 public:
  explicit EscrowClient(std::string base_url,
                        std::chrono::milliseconds timeout = std::chrono::seconds(10));

  std::vector<nlohmann::json> listings();
  nlohmann::json add_listing(std::string_view task_body, std::string_view description,
                             std::string_view preamble);
  RemotePurchase purchase(std::string_view prompt_id);
  sealer::ContentKey redeem_key(std::string_view token_id);
  std::string redeem_full(std::string_view token_id, std::string_view request);
  nlohmann::json token_status(std::string_view token_id);
  void revoke(std::string_view token_id);

 private:
  nlohmann::json call(const std::string& method, const std::string& path,
                      const nlohmann::json* body, int want);

  std::string origin_;
  std::string base_path_;
  std::chrono::milliseconds timeout_;
};

// Lets a bridge redeem keys against an escrow in the same process. The
// escrow locator is ignored.
std::shared_ptr<bridge::EscrowKeyClient> in_process_key_client(EscrowService& service);

}  // namespace promptlock::escrow
