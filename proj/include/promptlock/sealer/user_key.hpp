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

#include <array>
#include <string>
#include <string_view>

#include "promptlock/bytes.hpp"
#include "promptlock/sealer/envelope.hpp"

namespace promptlock::sealer {

inline constexpr std::string_view kUserKeyPrefix = "PLKEY1";
inline constexpr std::size_t kIssuerTagBytes = 16;
inline constexpr std::size_t kMaxUserIdLength = 64;

// A buyer's credential: user id plus content key, tagged by the issuer.
// Wire form:
//   PLKEY1.<b64url(user_id)>.<b64url(key_id || key_bytes)>.<b64url(tag)>
// where tag = HMAC-SHA-256(issuer_secret, user_id || key_id || key_bytes)[0:16].
struct UserKey {
  std::string user_id;
  ContentKey content_key;
  std::array<std::uint8_t, kIssuerTagBytes> issuer_tag{};
};

// 1..64 printable ASCII characters.
bool is_valid_user_id(std::string_view user_id) noexcept;

// Throws Error(invalid_user_id).
std::string encode_user_key(std::string_view user_id, const ContentKey& key,
                            ByteView issuer_secret);

// Verifies the tag before releasing key material. Throws Error(parse_error)
// for a malformed token and Error(key_invalid) when the tag does not verify.
UserKey decode_user_key(std::string_view token, ByteView issuer_secret);

}  // namespace promptlock::sealer
