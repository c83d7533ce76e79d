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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace promptlock {

// Error codes shared by every module. Names match the wire strings
// returned by to_string() and carried in HTTP error bodies.
enum class Errc {
  parse_error,
  version_error,
  invalid_preamble,
  auth_failure,
  invalid_user_id,
  key_invalid,
  key_mismatch,
  provider_unavailable,
  provider_error,
  session_not_ready,
  unknown_session,
  negative_delay,
  invalid_argument,
  description_leaks,
  unknown_prompt,
  token_unknown,
  token_already_redeemed,
  token_expired,
  token_revoked,
  key_version_stale,
  conflict,
  store_corrupt,
  io_error,
  entropy_failure,
};

std::string_view to_string(Errc code) noexcept;
std::optional<Errc> errc_from_string(std::string_view name) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);
  Error(Errc code, const std::string& message, std::size_t offset);

  Errc code() const noexcept { return code_; }
  // Byte offset into the input for parse failures, when known.
  std::optional<std::size_t> offset() const noexcept { return offset_; }

  // Upstream status for Errc::provider_error.
  static Error provider_status(int status);
  int upstream_status() const noexcept { return upstream_status_; }

  // Structured context for the caller, as JSON text (empty when absent).
  const std::string& details() const noexcept { return details_; }
  Error& with_details(std::string details) {
    details_ = std::move(details);
    return *this;
  }

 private:
  Errc code_;
  std::optional<std::size_t> offset_;
  int upstream_status_ = 0;
  std::string details_;
};

}  // namespace promptlock
