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

#include "promptlock/escrow/types.hpp"

#include "promptlock/error.hpp"

namespace promptlock::escrow {

using nlohmann::json;

std::string_view to_string(TokenState s) noexcept {
  switch (s) {
    case TokenState::issued: return "issued";
    case TokenState::redeemed: return "redeemed";
    case TokenState::expired: return "expired";
    case TokenState::revoked: return "revoked";
  }
  return "unknown";
}

std::optional<TokenState> token_state_from_string(std::string_view name) noexcept {
  for (auto s : {TokenState::issued, TokenState::redeemed, TokenState::expired,
                 TokenState::revoked}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

bool transition_allowed(TokenState from, TokenState to) noexcept {
  return from == TokenState::issued && to != TokenState::issued;
}

std::int64_t to_unix_ms(Clock::time_point t) noexcept {
  return std::chrono::duration_cast<std::chrono::milliseconds>(t.time_since_epoch()).count();
}

Clock::time_point from_unix_ms(std::int64_t ms) noexcept {
  return Clock::time_point(std::chrono::duration_cast<Clock::duration>(
      std::chrono::milliseconds(ms)));
}

json PromptListing::to_json() const {
  return {{"prompt_id", prompt_id.str()},
          {"description", description},
          {"envelope", sealed_current.serialize()},
          {"key", current_key.to_text()},
          {"key_version", key_version},
          {"created_at", to_unix_ms(created_at)}};
}

PromptListing PromptListing::from_json(const json& j) {
  PromptListing l;
  l.prompt_id = PromptId::parse(j.at("prompt_id").get<std::string>());
  l.description = j.at("description").get<std::string>();
  l.sealed_current = sealer::parse_sealed(j.at("envelope").get<std::string>());
  l.current_key = sealer::ContentKey::from_text(j.at("key").get<std::string>());
  l.key_version = j.at("key_version").get<std::uint64_t>();
  l.created_at = from_unix_ms(j.at("created_at").get<std::int64_t>());
  return l;
}

json PromptListing::public_json() const {
  return {{"prompt_id", prompt_id.str()},
          {"description", description},
          {"key_version", key_version},
          {"created_at", to_unix_ms(created_at)}};
}

json BearerToken::to_json() const {
  return {{"token_id", token_id.str()},
          {"prompt_id", prompt_id.str()},
          {"state", to_string(state)},
          {"issued_at", to_unix_ms(issued_at)},
          {"redeemed_at", redeemed_at ? json(to_unix_ms(*redeemed_at)) : json(nullptr)},
          {"expires_at", to_unix_ms(expires_at)},
          {"bound_key_version", bound_key_version}};
}

BearerToken BearerToken::from_json(const json& j) {
  BearerToken t;
  t.token_id = TokenId::parse(j.at("token_id").get<std::string>());
  t.prompt_id = PromptId::parse(j.at("prompt_id").get<std::string>());
  auto state = token_state_from_string(j.at("state").get<std::string>());
  if (!state) throw Error(Errc::store_corrupt, "unknown token state");
  t.state = *state;
  t.issued_at = from_unix_ms(j.at("issued_at").get<std::int64_t>());
  if (!j.at("redeemed_at").is_null()) {
    t.redeemed_at = from_unix_ms(j["redeemed_at"].get<std::int64_t>());
  }
  t.expires_at = from_unix_ms(j.at("expires_at").get<std::int64_t>());
  t.bound_key_version = j.at("bound_key_version").get<std::uint64_t>();
  return t;
}

json LedgerEntry::to_json() const {
  return {{"token_id", token_id.str()},
          {"prompt_id", prompt_id.str()},
          {"issued_at", to_unix_ms(issued_at)},
          {"outcome", outcome},
          {"at", to_unix_ms(at)}};
}

LedgerEntry LedgerEntry::from_json(const json& j, std::uint64_t seq) {
  LedgerEntry e;
  e.seq = seq;
  e.token_id = TokenId::parse(j.at("token_id").get<std::string>());
  e.prompt_id = PromptId::parse(j.at("prompt_id").get<std::string>());
  e.issued_at = from_unix_ms(j.at("issued_at").get<std::int64_t>());
  e.outcome = j.at("outcome").get<std::string>();
  e.at = from_unix_ms(j.at("at").get<std::int64_t>());
  return e;
}

}  // namespace promptlock::escrow
