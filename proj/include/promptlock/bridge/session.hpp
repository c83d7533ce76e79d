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

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/bridge/leak_filter.hpp"
#include "promptlock/mockllm/provider.hpp"
#include "promptlock/ngram.hpp"
#include "promptlock/opaque_id.hpp"

namespace promptlock::bridge {

enum class SessionState { created, assimilated, forgotten, closed };

std::string_view to_string(SessionState s) noexcept;

// One buyer's conversation with an unsealed prompt. Transitions run strictly
// created -> assimilated -> forgotten -> closed; any operation in another
// state throws Error(session_not_ready) and leaves the session untouched.
// Not thread-safe; the service serializes access per session.
class BridgeSession {
 public:
  BridgeSession(SessionId id, std::string user_id);

  const SessionId& session_id() const noexcept { return id_; }
  const std::string& user_id() const noexcept { return user_id_; }
  SessionState state() const noexcept { return state_; }
  const std::optional<mockllm::AssimilatedContext>& context() const noexcept { return context_; }
  const std::vector<mockllm::LlmExchange>& transcript() const noexcept { return transcript_; }
  const ngram::Fingerprint& fingerprint() const noexcept { return fingerprint_; }

  // created -> assimilated. Builds the leak fingerprint from the body.
  void assimilate(mockllm::LlmProvider& provider, const sealer::TaskPrompt& task);
  // assimilated -> forgotten.
  void forget(mockllm::LlmProvider& provider);
  // Requires forgotten. Provider errors propagate and append nothing.
  FilterResult chat(mockllm::LlmProvider& provider, std::string_view request);
  // forgotten -> closed. Drops the context, fingerprint and transcript.
  void close();

  // Everything the session holds, as it would be persisted or dumped.
  nlohmann::json to_json() const;

 private:
  void require(SessionState expected) const;

  SessionId id_;
  std::string user_id_;
  SessionState state_ = SessionState::created;
  std::optional<mockllm::AssimilatedContext> context_;
  ngram::Fingerprint fingerprint_;
  std::vector<mockllm::LlmExchange> transcript_;
};

}  // namespace promptlock::bridge
