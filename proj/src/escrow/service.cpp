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

#include "promptlock/escrow/service.hpp"

#include "promptlock/bridge/leak_filter.hpp"
#include "promptlock/error.hpp"
#include "promptlock/ngram.hpp"

namespace promptlock::escrow {
namespace {

using nlohmann::json;
using store::RecordKind;

constexpr std::string_view kComponent = "escrow";

struct WipeOnExit {
  sealer::TaskPrompt& task;
  ~WipeOnExit() { task.wipe(); }
};

}  // namespace

EscrowService::EscrowService(std::shared_ptr<store::Store> store,
                             std::shared_ptr<mockllm::LlmProvider> provider,
                             EscrowOptions options)
    : store_(std::move(store)), provider_(std::move(provider)), options_(std::move(options)) {
  if (!options_.logger) options_.logger = Logger::null();
  if (!options_.now) options_.now = [] { return Clock::now(); };
  if (options_.token_ttl.count() <= 0) {
    throw Error(Errc::invalid_argument, "token lifetime must be positive");
  }
}

std::mutex& EscrowService::lock_for(const PromptId& prompt_id) {
  std::lock_guard lock(locks_mu_);
  auto& slot = locks_[prompt_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

Clock::time_point EscrowService::now() const { return options_.now(); }

void EscrowService::emit(Route step, std::string_view actor, std::string detail) const {
  if (options_.routes) options_.routes({step, std::string(actor), std::move(detail)});
}

std::optional<EscrowService::ListingRow> EscrowService::load_listing(
    const PromptId& prompt_id) const {
  auto rec = store_->get(RecordKind::listing, prompt_id.str());
  if (!rec) return std::nullopt;
  try {
    return ListingRow{PromptListing::from_json(json::parse(rec->payload)), rec->version};
  } catch (const std::exception& e) {
    throw Error(Errc::store_corrupt, "listing " + prompt_id.str() + " unreadable: " + e.what());
  }
}

EscrowService::ListingRow EscrowService::require_listing(const PromptId& prompt_id) const {
  auto row = load_listing(prompt_id);
  if (!row) throw Error(Errc::unknown_prompt, "no listing " + prompt_id.str());
  return std::move(*row);
}

EscrowService::TokenRow EscrowService::require_token(const TokenId& token_id) const {
  auto rec = store_->get(RecordKind::token, token_id.str());
  if (!rec) throw Error(Errc::token_unknown, "no token " + token_id.str());
  try {
    return TokenRow{BearerToken::from_json(json::parse(rec->payload)), rec->version};
  } catch (const std::exception& e) {
    throw Error(Errc::store_corrupt, "token " + token_id.str() + " unreadable: " + e.what());
  }
}

void EscrowService::put_listing(ListingRow& row) {
  auto v = store_->compare_and_swap(RecordKind::listing, row.listing.prompt_id.str(),
                                    row.version, row.listing.to_json());
  if (!v) throw Error(Errc::conflict, "listing " + row.listing.prompt_id.str() + " changed");
  row.version = *v;
}

void EscrowService::put_token(TokenRow& row) {
  auto v = store_->compare_and_swap(RecordKind::token, row.token.token_id.str(), row.version,
                                    row.token.to_json());
  if (!v) throw Error(Errc::conflict, "token " + row.token.token_id.str() + " changed");
  row.version = *v;
}

void EscrowService::append_ledger(const BearerToken& token, std::string_view outcome) {
  LedgerEntry e;
  e.token_id = token.token_id;
  e.prompt_id = token.prompt_id;
  e.issued_at = token.issued_at;
  e.outcome = std::string(outcome);
  e.at = now();
  store_->append_ledger(e.to_json());
}

PromptListing EscrowService::register_listing(const sealer::TaskPrompt& task,
                                              std::string_view description,
                                              std::string_view preamble) {
  if (ngram::shares_window(description, task.body())) {
    throw Error(Errc::description_leaks, "description repeats part of the task prompt");
  }
  ListingRow row{{}, 0};
  row.listing.prompt_id = PromptId::random();
  row.listing.description = std::string(description);
  row.listing.current_key = sealer::generate_content_key();
  row.listing.sealed_current =
      sealer::seal(task, row.listing.current_key, preamble, options_.public_url,
                   {.prompt_id = row.listing.prompt_id, .nonce = std::nullopt});
  row.listing.key_version = 1;
  row.listing.created_at = now();
  std::lock_guard lock(lock_for(row.listing.prompt_id));
  put_listing(row);
  options_.logger->info(kComponent, "listing " + row.listing.prompt_id.str() + " registered");
  return row.listing;
}

BearerToken EscrowService::issue_token(const ListingRow& listing) {
  TokenRow row{{}, 0};
  row.token.token_id = TokenId::random();
  row.token.prompt_id = listing.listing.prompt_id;
  row.token.state = TokenState::issued;
  row.token.issued_at = now();
  row.token.expires_at =
      row.token.issued_at + std::chrono::duration_cast<Clock::duration>(options_.token_ttl);
  row.token.bound_key_version = listing.listing.key_version;
  put_token(row);
  append_ledger(row.token, "issued");
  return row.token;
}

Purchase EscrowService::purchase(const PromptId& prompt_id) {
  if (!load_listing(prompt_id)) throw Error(Errc::unknown_prompt, "no listing " + prompt_id.str());
  std::lock_guard lock(lock_for(prompt_id));
  const auto listing = require_listing(prompt_id);
  auto token = issue_token(listing);
  emit(Route::purchase, "user", "prompt " + prompt_id.str());
  emit(Route::deliver, "escrow", "token " + token.token_id.str());
  options_.logger->info(kComponent, "token " + token.token_id.str() + " issued for prompt " +
                                        prompt_id.str());
  return {listing.listing.sealed_current.serialize(), std::move(token)};
}

void EscrowService::check_redeemable(TokenRow& row) {
  const auto id = row.token.token_id.str();
  switch (row.token.state) {
    case TokenState::redeemed:
      throw Error(Errc::token_already_redeemed, "token " + id + " was already redeemed");
    case TokenState::revoked:
      throw Error(Errc::token_revoked, "token " + id + " was revoked");
    case TokenState::expired:
      throw Error(Errc::token_expired, "token " + id + " has expired");
    case TokenState::issued:
      break;
  }
  if (now() >= row.token.expires_at) {
    row.token.state = TokenState::expired;
    put_token(row);
    append_ledger(row.token, "expired");
    throw Error(Errc::token_expired, "token " + id + " has expired");
  }
}

void EscrowService::reissue(TokenRow& row, const ListingRow& listing) {
  row.token.state = TokenState::revoked;
  put_token(row);
  append_ledger(row.token, "reissued");
  auto fresh = issue_token(listing);
  options_.logger->info(kComponent, "stale token " + row.token.token_id.str() +
                                        " exchanged for " + fresh.token_id.str());
  const json details = {{"token", fresh.to_json()},
                        {"envelope", listing.listing.sealed_current.serialize()}};
  throw Error(Errc::key_version_stale,
              "token was bound to key version " + std::to_string(row.token.bound_key_version) +
                  ", listing is at " + std::to_string(listing.listing.key_version) +
                  "; a replacement token was issued")
      .with_details(details.dump());
}

sealer::ContentKey EscrowService::rotate_locked(ListingRow& row) {
  auto& l = row.listing;
  sealer::TaskPrompt task;
  try {
    task = sealer::unseal(l.sealed_current, l.current_key);
  } catch (const Error& e) {
    if (e.code() != Errc::auth_failure) throw;
    throw Error(Errc::store_corrupt,
                "listing " + l.prompt_id.str() + " does not open under its own key");
  }
  WipeOnExit guard{task};
  const auto retired = l.current_key;
  const auto fresh = sealer::generate_content_key();
  auto sealed = sealer::seal(task, fresh, l.sealed_current.preamble,
                             l.sealed_current.header.escrow_locator,
                             {.prompt_id = l.prompt_id, .nonce = std::nullopt});
  ListingRow next = row;
  next.listing.current_key = fresh;
  next.listing.sealed_current = std::move(sealed);
  next.listing.key_version = l.key_version + 1;
  put_listing(next);
  row = std::move(next);
  return retired;
}

std::uint64_t EscrowService::rotate_key(const PromptId& prompt_id) {
  if (!load_listing(prompt_id)) throw Error(Errc::unknown_prompt, "no listing " + prompt_id.str());
  std::lock_guard lock(lock_for(prompt_id));
  auto row = require_listing(prompt_id);
  rotate_locked(row);
  options_.logger->info(kComponent, "listing " + prompt_id.str() + " rotated to key version " +
                                        std::to_string(row.listing.key_version));
  return row.listing.key_version;
}

sealer::ContentKey EscrowService::redeem_key(const TokenId& token_id) {
  const auto prompt_id = require_token(token_id).token.prompt_id;
  std::lock_guard lock(lock_for(prompt_id));
  auto row = require_token(token_id);
  check_redeemable(row);
  auto listing = require_listing(prompt_id);
  if (row.token.bound_key_version != listing.listing.key_version) reissue(row, listing);
  emit(Route::validate, "escrow", "token " + token_id.str());
  const auto version = listing.listing.key_version;
  emit(Route::release_key, "escrow", "key version " + std::to_string(version));
  auto released = rotate_locked(listing);
  row.token.state = TokenState::redeemed;
  row.token.redeemed_at = now();
  put_token(row);
  append_ledger(row.token, "redeemed");
  emit(Route::register_and_rotate, "escrow",
       "token " + token_id.str() + " redeemed; key version " + std::to_string(version + 1));
  options_.logger->info(kComponent, "token " + token_id.str() + " redeemed for key; prompt " +
                                        prompt_id.str() + " at key version " +
                                        std::to_string(version + 1));
  return released;
}

std::string EscrowService::redeem_full(const TokenId& token_id, std::string_view request) {
  emit(Route::submit, "user", "token " + token_id.str());
  const auto prompt_id = require_token(token_id).token.prompt_id;
  emit(Route::call_escrow, "intermediary", "token " + token_id.str());
  std::lock_guard lock(lock_for(prompt_id));
  auto row = require_token(token_id);
  check_redeemable(row);
  auto listing = require_listing(prompt_id);
  emit(Route::validate, "escrow", "token " + token_id.str());
  const auto version = listing.listing.key_version;
  emit(Route::release_key, "escrow", "key version " + std::to_string(version));
  emit(Route::register_and_rotate, "escrow",
       "state change staged for token " + token_id.str());

  std::string artifact;
  {
    auto task = sealer::unseal(listing.listing.sealed_current, listing.listing.current_key);
    WipeOnExit guard{task};
    emit(Route::unseal, "intermediary", "prompt " + prompt_id.str());
    const auto fingerprint = ngram::Fingerprint::of(task.body());
    auto ctx = provider_->forget(provider_->assimilate(task));
    emit(Route::assimilate_forget, "intermediary", "context " + ctx.context_id().str());
    const auto exchange = provider_->query(ctx, request);
    artifact = bridge::leak_filter(exchange.response, fingerprint).text;
  }

  rotate_locked(listing);
  row.token.state = TokenState::redeemed;
  row.token.redeemed_at = now();
  put_token(row);
  append_ledger(row.token, "redeemed");
  options_.logger->info(kComponent, "token " + token_id.str() + " fully redeemed; prompt " +
                                        prompt_id.str() + " at key version " +
                                        std::to_string(version + 1));
  emit(Route::artifact, "intermediary", "token " + token_id.str());
  return artifact;
}

void EscrowService::revoke_token(const TokenId& token_id) {
  const auto prompt_id = require_token(token_id).token.prompt_id;
  std::lock_guard lock(lock_for(prompt_id));
  auto row = require_token(token_id);
  check_redeemable(row);
  row.token.state = TokenState::revoked;
  put_token(row);
  append_ledger(row.token, "revoked");
  options_.logger->info(kComponent, "token " + token_id.str() + " revoked");
}

TokenStatus EscrowService::introspect_token(const TokenId& token_id) const {
  const auto row = require_token(token_id);
  auto state = row.token.state;
  if (state == TokenState::issued && now() >= row.token.expires_at) state = TokenState::expired;
  return {state, row.token.prompt_id, row.token.bound_key_version};
}

std::vector<PromptListing> EscrowService::listings() const {
  std::vector<PromptListing> out;
  for (const auto& rec : store_->scan(RecordKind::listing)) {
    out.push_back(require_listing(PromptId::parse(rec.key)).listing);
  }
  return out;
}

PromptListing EscrowService::listing(const PromptId& prompt_id) const {
  return require_listing(prompt_id).listing;
}

std::vector<LedgerEntry> EscrowService::ledger() const {
  std::vector<LedgerEntry> out;
  for (const auto& rec : store_->ledger()) {
    out.push_back(LedgerEntry::from_json(json::parse(rec.payload), rec.version));
  }
  return out;
}

}  // namespace promptlock::escrow
