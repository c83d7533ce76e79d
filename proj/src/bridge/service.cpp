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

#include "promptlock/bridge/service.hpp"

#include "promptlock/crypto.hpp"
#include "promptlock/error.hpp"
#include "promptlock/sealer/user_key.hpp"

namespace promptlock::bridge {
namespace {

constexpr std::string_view kComponent = "bridge";

struct WipeOnExit {
  sealer::TaskPrompt& task;
  ~WipeOnExit() { task.wipe(); }
};

}  // namespace

BridgeService::BridgeService(std::shared_ptr<IssuerRegistry> registry,
                             std::shared_ptr<mockllm::LlmProvider> provider,
                             BridgeOptions options, std::shared_ptr<EscrowKeyClient> escrow)
    : registry_(std::move(registry)),
      provider_(std::move(provider)),
      options_(std::move(options)),
      escrow_(std::move(escrow)) {
  if (!options_.logger) options_.logger = Logger::null();
  if (!escrow_) escrow_ = std::make_shared<HttpEscrowKeyClient>();
  simulate_placement(options_.placement, 1);  // rejects negative delays
}

void BridgeService::emit(Route step, std::string_view actor, std::string detail) const {
  if (options_.routes) options_.routes({step, std::string(actor), std::move(detail)});
}

SessionId BridgeService::start(const sealer::SealedPrompt& envelope,
                               const sealer::ContentKey& key, std::string user_id) {
  auto task = sealer::unseal(envelope, key);
  WipeOnExit guard{task};
  const auto id = SessionId::random();
  auto slot = std::make_shared<Slot>(id, std::move(user_id));
  slot->session.assimilate(*provider_, task);
  slot->session.forget(*provider_);
  {
    std::unique_lock lock(mu_);
    sessions_.emplace(id, slot);
  }
  options_.logger->info(kComponent, "session " + id.str() + " opened for prompt " +
                                        envelope.header.prompt_id.str());
  return id;
}

SessionId BridgeService::open_session(std::string_view envelope_armored,
                                      std::string_view user_key_token) {
  const auto envelope = sealer::parse_sealed(envelope_armored);
  const auto& prompt_id = envelope.header.prompt_id;
  const Bytes secret = registry_->secret_for(prompt_id);
  auto user_key = sealer::decode_user_key(user_key_token, secret);
  if (registry_->is_revoked(prompt_id, user_key.user_id)) {
    options_.logger->warn(kComponent, "revoked user rejected for prompt " + prompt_id.str());
    throw Error(Errc::key_invalid, "user key has been revoked");
  }
  if (user_key.content_key.key_id != envelope.header.key_id) {
    throw Error(Errc::key_mismatch, "user key is for a different content key");
  }
  auto id = start(envelope, user_key.content_key, user_key.user_id);
  crypto::secure_zero(user_key.content_key.key_bytes);
  return id;
}

EscrowSessionResult BridgeService::open_escrow_session(std::string_view envelope_armored,
                                                       std::string_view bearer_token,
                                                       std::string_view request) {
  const auto envelope = sealer::parse_sealed(envelope_armored);
  const auto& prompt_id = envelope.header.prompt_id;
  emit(Route::submit, "user", "prompt " + prompt_id.str());
  if (!envelope.header.escrow_locator) {
    throw Error(Errc::invalid_argument, "envelope names no escrow");
  }
  emit(Route::call_escrow, "bridge", *envelope.header.escrow_locator);
  auto key = escrow_->redeem_key(*envelope.header.escrow_locator, bearer_token);
  if (key.key_id != envelope.header.key_id) {
    throw Error(Errc::key_mismatch, "escrow released a key for a different envelope");
  }
  emit(Route::unseal, "bridge", "prompt " + prompt_id.str());
  auto id = start(envelope, key, "bearer");
  crypto::secure_zero(key.key_bytes);
  emit(Route::assimilate_forget, "bridge", "session " + id.str());
  auto artifact = chat(id, request);
  emit(Route::artifact, "bridge", "session " + id.str());
  return {id, std::move(artifact)};
}

std::shared_ptr<BridgeService::Slot> BridgeService::find(const SessionId& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::unknown_session, "no session " + id.str());
  return it->second;
}

FilterResult BridgeService::chat(const SessionId& id, std::string_view request) {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  auto result = slot->session.chat(*provider_, request);
  options_.logger->info(kComponent, "chat on session " + id.str() +
                                        (result.redacted ? " redacted" : " delivered"));
  return result;
}

void BridgeService::close_session(const SessionId& id) {
  std::shared_ptr<Slot> slot;
  {
    std::unique_lock lock(mu_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(Errc::unknown_session, "no session " + id.str());
    slot = it->second;
    std::lock_guard slot_lock(slot->mu);
    slot->session.close();
    sessions_.erase(it);
  }
  options_.logger->info(kComponent, "session " + id.str() + " closed");
}

bool BridgeService::has_session(const SessionId& id) const {
  std::shared_lock lock(mu_);
  return sessions_.contains(id);
}

SessionState BridgeService::state(const SessionId& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return slot->session.state();
}

std::vector<mockllm::LlmExchange> BridgeService::transcript(const SessionId& id) const {
  auto slot = find(id);
  std::lock_guard lock(slot->mu);
  return slot->session.transcript();
}

std::size_t BridgeService::session_count() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

nlohmann::json BridgeService::dump_state() const {
  std::vector<std::shared_ptr<Slot>> slots;
  {
    std::shared_lock lock(mu_);
    for (const auto& [id, slot] : sessions_) slots.push_back(slot);
  }
  nlohmann::json sessions = nlohmann::json::array();
  for (const auto& slot : slots) {
    std::lock_guard lock(slot->mu);
    sessions.push_back(slot->session.to_json());
  }
  return {{"placement", to_string(options_.placement.placement)},
          {"registry", registry_->entries_json()},
          {"sessions", sessions}};
}

}  // namespace promptlock::bridge
