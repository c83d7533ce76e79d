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

#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <shared_mutex>
#include <string_view>
#include <vector>

#include "promptlock/bridge/escrow_client.hpp"
#include "promptlock/bridge/placement.hpp"
#include "promptlock/bridge/registry.hpp"
#include "promptlock/bridge/session.hpp"
#include "promptlock/log.hpp"
#include "promptlock/route.hpp"

namespace promptlock::bridge {

struct BridgeOptions {
  PlacementConfig placement;
  std::shared_ptr<Logger> logger;  // null: discard
  RouteObserver routes;            // optional
};

struct EscrowSessionResult {
  SessionId session_id;
  FilterResult artifact;
};

// The decryption bridge. Validates credentials before touching ciphertext,
// unseals, assimilates, forgets, and filters every reply. Plaintext exists
// only inside open_session and is wiped before it returns.
class BridgeService {
 public:
  BridgeService(std::shared_ptr<IssuerRegistry> registry,
                std::shared_ptr<mockllm::LlmProvider> provider, BridgeOptions options = {},
                std::shared_ptr<EscrowKeyClient> escrow = nullptr);

  // Throws parse_error / version_error, key_invalid (bad tag, unknown
  // prompt or revoked user), key_mismatch, auth_failure.
  SessionId open_session(std::string_view envelope_armored, std::string_view user_key_token);

  // Escrow-backed prompts: fetches the key from the envelope's escrow with
  // the bearer token, then answers `request` once. The session stays open
  // for further chat. Escrow errors propagate unchanged.
  EscrowSessionResult open_escrow_session(std::string_view envelope_armored,
                                          std::string_view bearer_token,
                                          std::string_view request);

  // Throws unknown_session, session_not_ready, provider errors.
  FilterResult chat(const SessionId& id, std::string_view request);

  // Throws unknown_session. The session is erased.
  void close_session(const SessionId& id);

  bool has_session(const SessionId& id) const;
  SessionState state(const SessionId& id) const;
  std::vector<mockllm::LlmExchange> transcript(const SessionId& id) const;
  std::size_t session_count() const;

  // All retained session state, as a persistence or debug dump would see it.
  nlohmann::json dump_state() const;

  const PlacementConfig& placement() const noexcept { return options_.placement; }
  IssuerRegistry& registry() noexcept { return *registry_; }

 private:
  struct Slot {
    std::mutex mu;
    BridgeSession session;
    Slot(SessionId id, std::string user) : session(id, std::move(user)) {}
  };

  std::shared_ptr<Slot> find(const SessionId& id) const;
  SessionId start(const sealer::SealedPrompt& envelope, const sealer::ContentKey& key,
                  std::string user_id);
  void emit(Route step, std::string_view actor, std::string detail) const;

  std::shared_ptr<IssuerRegistry> registry_;
  std::shared_ptr<mockllm::LlmProvider> provider_;
  BridgeOptions options_;
  std::shared_ptr<EscrowKeyClient> escrow_;

  mutable std::shared_mutex mu_;
  std::map<SessionId, std::shared_ptr<Slot>> sessions_;
};

}  // namespace promptlock::bridge
