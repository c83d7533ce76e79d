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

#include "promptlock/bridge/placement.hpp"

#include "promptlock/error.hpp"

namespace promptlock::bridge {

std::string_view to_string(Placement p) noexcept {
  switch (p) {
    case Placement::user_side: return "user_side";
    case Placement::owner_side: return "owner_side";
    case Placement::provider_side: return "provider_side";
  }
  return "unknown";
}

std::optional<Placement> placement_from_string(std::string_view name) noexcept {
  for (auto p : {Placement::user_side, Placement::owner_side, Placement::provider_side}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

PlacementOverhead simulate_placement(const PlacementConfig& config, std::size_t messages) {
  using std::chrono::milliseconds;
  if (config.delay_user_owner < milliseconds::zero() ||
      config.delay_owner_provider < milliseconds::zero() ||
      config.delay_user_provider < milliseconds::zero()) {
    throw Error(Errc::negative_delay, "placement delays must be non-negative");
  }
  if (messages == 0) throw Error(Errc::invalid_argument, "messages must be at least 1");

  milliseconds per_message{0};
  if (config.placement == Placement::owner_side) {
    per_message = config.delay_user_owner + config.delay_owner_provider -
                  config.delay_user_provider;
  }
  return {per_message, per_message * static_cast<milliseconds::rep>(messages)};
}

}  // namespace promptlock::bridge
