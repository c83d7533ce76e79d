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
#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "promptlock/opaque_id.hpp"
#include "promptlock/sealer/envelope.hpp"

namespace promptlock::escrow {

using Clock = std::chrono::system_clock;

enum class TokenState { issued, redeemed, expired, revoked };

std::string_view to_string(TokenState s) noexcept;
std::optional<TokenState> token_state_from_string(std::string_view name) noexcept;

// issued -> redeemed | expired | revoked; nothing else.
bool transition_allowed(TokenState from, TokenState to) noexcept;

// Timestamps travel as integer milliseconds since the Unix epoch.
std::int64_t to_unix_ms(Clock::time_point t) noexcept;
Clock::time_point from_unix_ms(std::int64_t ms) noexcept;

struct PromptListing {
  PromptId prompt_id;
  std::string description;
  sealer::SealedPrompt sealed_current;
  sealer::ContentKey current_key;
  std::uint64_t key_version = 1;
  Clock::time_point created_at{};

  // Stored form, key included.
  nlohmann::json to_json() const;
  static PromptListing from_json(const nlohmann::json& j);
  // What buyers may see before purchase.
  nlohmann::json public_json() const;
};

struct BearerToken {
  TokenId token_id;
  PromptId prompt_id;
  TokenState state = TokenState::issued;
  Clock::time_point issued_at{};
  std::optional<Clock::time_point> redeemed_at;
  Clock::time_point expires_at{};
  std::uint64_t bound_key_version = 1;

  nlohmann::json to_json() const;
  static BearerToken from_json(const nlohmann::json& j);
};

// Outcomes: issued, redeemed, expired, revoked, reissued (a stale token
// retired in exchange for a fresh one).
struct LedgerEntry {
  std::uint64_t seq = 0;
  TokenId token_id;
  PromptId prompt_id;
  Clock::time_point issued_at{};
  std::string outcome;
  Clock::time_point at{};

  nlohmann::json to_json() const;
  static LedgerEntry from_json(const nlohmann::json& j, std::uint64_t seq);
};

struct TokenStatus {
  TokenState state;
  PromptId prompt_id;
  std::uint64_t bound_key_version;
};

struct Purchase {
  std::string envelope;  // armored
  BearerToken token;
};

}  // namespace promptlock::escrow
