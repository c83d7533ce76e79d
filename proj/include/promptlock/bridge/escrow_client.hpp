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
#include <functional>
#include <string>
#include <string_view>

#include "promptlock/sealer/envelope.hpp"

namespace promptlock::bridge {

// How the bridge fetches a content key for an escrow-backed prompt.
// Escrow errors (TOKEN_ALREADY_REDEEMED, KEY_VERSION_STALE, ...) surface
// unchanged as promptlock::Error.
class EscrowKeyClient {
 public:
  virtual ~EscrowKeyClient() = default;
  virtual sealer::ContentKey redeem_key(std::string_view escrow_locator,
                                        std::string_view bearer_token) = 0;
};

// POST <locator>/v1/redeem/key {"token": ...} -> {"key": <base64url>}
class HttpEscrowKeyClient final : public EscrowKeyClient {
 public:
  explicit HttpEscrowKeyClient(std::chrono::milliseconds timeout = std::chrono::seconds(5))
      : timeout_(timeout) {}
  sealer::ContentKey redeem_key(std::string_view escrow_locator,
                                std::string_view bearer_token) override;

 private:
  std::chrono::milliseconds timeout_;
};

// Adapts any callable, e.g. an in-process escrow service.
class FunctionEscrowKeyClient final : public EscrowKeyClient {
 public:
  using Fn = std::function<sealer::ContentKey(std::string_view, std::string_view)>;
  explicit FunctionEscrowKeyClient(Fn fn) : fn_(std::move(fn)) {}
  sealer::ContentKey redeem_key(std::string_view escrow_locator,
                                std::string_view bearer_token) override {
    return fn_(escrow_locator, bearer_token);
  }

 private:
  Fn fn_;
};

}  // namespace promptlock::bridge
