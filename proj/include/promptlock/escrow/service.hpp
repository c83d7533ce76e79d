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
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/escrow/types.hpp"
#include "promptlock/log.hpp"
#include "promptlock/mockllm/provider.hpp"
#include "promptlock/route.hpp"
#include "promptlock/sealer/task_prompt.hpp"
#include "promptlock/store/store.hpp"

namespace promptlock::escrow {

inline constexpr std::chrono::hours kDefaultTokenTtl{24 * 30};

struct EscrowOptions {
  // Base URL of this service's API, embedded in every envelope it seals.
  std::string public_url = "http://127.0.0.1:8081";
  std::chrono::milliseconds token_ttl = kDefaultTokenTtl;
  std::function<Clock::time_point()> now;  // default: system clock
  std::shared_ptr<Logger> logger;          // default: discard
  RouteObserver routes;                    // optional
};

// Listings, purchases and single-use redemption. All token transitions and
// key rotations for one listing run under that listing's lock and are
// persisted through store compare-and-swap, so many concurrent purchases
// and redemptions of one listing stay consistent.
//
// Redemption order on disk: rotated listing first, then the consumed
// token, then the ledger entry. A crash in between leaves the token issued
// but bound to a retired key version, which the stale-token policy turns
// into a free replacement.
class EscrowService {
 public:
  EscrowService(std::shared_ptr<store::Store> store,
                std::shared_ptr<mockllm::LlmProvider> provider, EscrowOptions options = {});

  // Throws description_leaks, invalid_preamble.
  PromptListing register_listing(const sealer::TaskPrompt& task, std::string_view description,
                                 std::string_view preamble);

  // Throws unknown_prompt.
  Purchase purchase(const PromptId& prompt_id);

  // Variant A: releases the current key and rotates. Throws token_unknown,
  // token_already_redeemed, token_expired, token_revoked, and
  // key_version_stale; the last retires the token and carries
  // {"token": <replacement token JSON>, "envelope": <current envelope>} in
  // Error::details().
  sealer::ContentKey redeem_key(const TokenId& token_id);

  // Variant B: unseals, assimilates, forgets, queries once, then consumes
  // the token and rotates. Provider failures leave the token issued.
  std::string redeem_full(const TokenId& token_id, std::string_view request);

  // Throws unknown_prompt.
  std::uint64_t rotate_key(const PromptId& prompt_id);

  // issued -> revoked. Throws token_unknown, or the matching token error
  // when the token has already left the issued state.
  void revoke_token(const TokenId& token_id);

  // Read-only; reports a lapsed token as expired without persisting it.
  TokenStatus introspect_token(const TokenId& token_id) const;

  std::vector<PromptListing> listings() const;
  // Throws unknown_prompt.
  PromptListing listing(const PromptId& prompt_id) const;
  std::vector<LedgerEntry> ledger() const;

  const std::string& public_url() const noexcept { return options_.public_url; }

 private:
  struct ListingRow {
    PromptListing listing;
    std::uint64_t version;
  };
  struct TokenRow {
    BearerToken token;
    std::uint64_t version;
  };

  std::mutex& lock_for(const PromptId& prompt_id);
  Clock::time_point now() const;
  void emit(Route step, std::string_view actor, std::string detail) const;

  std::optional<ListingRow> load_listing(const PromptId& prompt_id) const;
  ListingRow require_listing(const PromptId& prompt_id) const;
  TokenRow require_token(const TokenId& token_id) const;
  // Throws the token error matching a non-redeemable state, persisting a
  // lapse to expired. Caller holds the listing lock.
  void check_redeemable(TokenRow& row);
  // Retires a stale token and issues its replacement. Caller holds the
  // listing lock. Always throws key_version_stale.
  [[noreturn]] void reissue(TokenRow& row, const ListingRow& listing);

  void put_listing(ListingRow& row);
  void put_token(TokenRow& row);
  void append_ledger(const BearerToken& token, std::string_view outcome);

  BearerToken issue_token(const ListingRow& listing);
  // Re-seals under a fresh key; returns the retired key.
  sealer::ContentKey rotate_locked(ListingRow& row);

  std::shared_ptr<store::Store> store_;
  std::shared_ptr<mockllm::LlmProvider> provider_;
  EscrowOptions options_;

  std::mutex locks_mu_;
  std::map<PromptId, std::unique_ptr<std::mutex>> locks_;
};

}  // namespace promptlock::escrow
