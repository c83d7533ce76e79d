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

#include "promptlock/bridge/session.hpp"

#include "promptlock/error.hpp"

namespace promptlock::bridge {

std::string_view to_string(SessionState s) noexcept {
  switch (s) {
    case SessionState::created: return "created";
    case SessionState::assimilated: return "assimilated";
    case SessionState::forgotten: return "forgotten";
    case SessionState::closed: return "closed";
  }
  return "unknown";
}

BridgeSession::BridgeSession(SessionId id, std::string user_id)
    : id_(id), user_id_(std::move(user_id)) {}

void BridgeSession::require(SessionState expected) const {
  if (state_ != expected) {
    throw Error(Errc::session_not_ready, "session is " + std::string(to_string(state_)) +
                                             ", operation needs " +
                                             std::string(to_string(expected)));
  }
}

void BridgeSession::assimilate(mockllm::LlmProvider& provider, const sealer::TaskPrompt& task) {
  require(SessionState::created);
  auto ctx = provider.assimilate(task);
  auto fp = ngram::Fingerprint::of(task.body());
  context_ = std::move(ctx);
  fingerprint_ = std::move(fp);
  state_ = SessionState::assimilated;
}

void BridgeSession::forget(mockllm::LlmProvider& provider) {
  require(SessionState::assimilated);
  auto forgotten = provider.forget(*context_);
  // Zero the raw prompt held by our own copy as well.
  mockllm::forget(std::move(*context_));
  context_ = std::move(forgotten);
  state_ = SessionState::forgotten;
}

FilterResult BridgeSession::chat(mockllm::LlmProvider& provider, std::string_view request) {
  require(SessionState::forgotten);
  auto exchange = provider.query(*context_, request);
  auto result = leak_filter(exchange.response, fingerprint_);
  transcript_.push_back({std::string(request), result.text, exchange.context_id});
  return result;
}

void BridgeSession::close() {
  require(SessionState::forgotten);
  context_.reset();
  fingerprint_.clear();
  transcript_.clear();
  state_ = SessionState::closed;
}

nlohmann::json BridgeSession::to_json() const {
  nlohmann::json transcript = nlohmann::json::array();
  for (const auto& ex : transcript_) {
    transcript.push_back({{"request", ex.request},
                          {"response", ex.response},
                          {"context_id", ex.context_id.str()}});
  }
  return {{"session_id", id_.str()},
          {"user_id", user_id_},
          {"state", to_string(state_)},
          {"context", context_ ? context_->to_json() : nlohmann::json(nullptr)},
          {"fingerprint", fingerprint_.dump()},
          {"transcript", transcript}};
}

}  // namespace promptlock::bridge
