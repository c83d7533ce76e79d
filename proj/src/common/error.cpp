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

#include "promptlock/error.hpp"

#include <array>
#include <utility>

namespace promptlock {
namespace {

constexpr std::array<std::pair<Errc, std::string_view>, 24> kNames{{
    {Errc::parse_error, "PARSE_ERROR"},
    {Errc::version_error, "VERSION_ERROR"},
    {Errc::invalid_preamble, "INVALID_PREAMBLE"},
    {Errc::auth_failure, "AUTH_FAILURE"},
    {Errc::invalid_user_id, "INVALID_USER_ID"},
    {Errc::key_invalid, "KEY_INVALID"},
    {Errc::key_mismatch, "KEY_MISMATCH"},
    {Errc::provider_unavailable, "PROVIDER_UNAVAILABLE"},
    {Errc::provider_error, "PROVIDER_ERROR"},
    {Errc::session_not_ready, "SESSION_NOT_READY"},
    {Errc::unknown_session, "UNKNOWN_SESSION"},
    {Errc::negative_delay, "NEGATIVE_DELAY"},
    {Errc::invalid_argument, "INVALID_ARGUMENT"},
    {Errc::description_leaks, "DESCRIPTION_LEAKS"},
    {Errc::unknown_prompt, "UNKNOWN_PROMPT"},
    {Errc::token_unknown, "TOKEN_UNKNOWN"},
    {Errc::token_already_redeemed, "TOKEN_ALREADY_REDEEMED"},
    {Errc::token_expired, "TOKEN_EXPIRED"},
    {Errc::token_revoked, "TOKEN_REVOKED"},
    {Errc::key_version_stale, "KEY_VERSION_STALE"},
    {Errc::conflict, "CONFLICT"},
    {Errc::store_corrupt, "STORE_CORRUPT"},
    {Errc::io_error, "IO_ERROR"},
    {Errc::entropy_failure, "ENTROPY_FAILURE"},
}};

}  // namespace

std::string_view to_string(Errc code) noexcept {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UNKNOWN";
}

std::optional<Errc> errc_from_string(std::string_view name) noexcept {
  for (const auto& [c, n] : kNames) {
    if (n == name) return c;
  }
  return std::nullopt;
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

Error::Error(Errc code, const std::string& message, std::size_t offset)
    : std::runtime_error(std::string(to_string(code)) + ": " + message +
                         " (at byte " + std::to_string(offset) + ")"),
      code_(code),
      offset_(offset) {}

Error Error::provider_status(int status) {
  Error e(Errc::provider_error, "upstream returned status " + std::to_string(status));
  e.upstream_status_ = status;
  return e;
}

}  // namespace promptlock
