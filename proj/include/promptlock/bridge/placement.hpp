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
#include <cstddef>
#include <optional>
#include <string_view>

namespace promptlock::bridge {

// Where the decryption bridge runs. user_side is supported for
// completeness but hands the buyer's machine the plaintext; do not deploy it
// where interception matters.
enum class Placement { user_side, owner_side, provider_side };

std::string_view to_string(Placement p) noexcept;
std::optional<Placement> placement_from_string(std::string_view name) noexcept;

struct PlacementConfig {
  Placement placement = Placement::provider_side;
  std::chrono::milliseconds delay_user_owner{0};
  std::chrono::milliseconds delay_owner_provider{0};
  std::chrono::milliseconds delay_user_provider{0};
};

struct PlacementOverhead {
  std::chrono::milliseconds per_message{0};
  std::chrono::milliseconds total{0};
};

// Extra latency per chat message relative to talking to the provider
// directly. Hop model:
//   user_side      bridge on the user's host: user -> provider, no extra hop
//   owner_side     user -> owner -> provider replaces user -> provider:
//                  delay_user_owner + delay_owner_provider - delay_user_provider
//   provider_side  bridge co-located with the provider: no extra hop
// Throws Error(negative_delay) for negative delays and
// Error(invalid_argument) when messages is zero.
PlacementOverhead simulate_placement(const PlacementConfig& config, std::size_t messages);

}  // namespace promptlock::bridge
