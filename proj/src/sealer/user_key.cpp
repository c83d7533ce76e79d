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

#include "promptlock/sealer/user_key.hpp"

#include <algorithm>
#include <vector>

#include "promptlock/crypto.hpp"
#include "promptlock/error.hpp"

namespace promptlock::sealer {
namespace {

constexpr std::size_t kMaterialBytes = KeyId::kBytes + crypto::kAeadKeyBytes;

std::array<std::uint8_t, kIssuerTagBytes> compute_tag(ByteView user_id, ByteView material,
                                                       ByteView issuer_secret) {
  Bytes message(user_id.begin(), user_id.end());
  message.insert(message.end(), material.begin(), material.end());
  auto mac = crypto::hmac_sha256(issuer_secret, message);
  crypto::secure_zero(message);
  std::array<std::uint8_t, kIssuerTagBytes> tag;
  std::copy_n(mac.begin(), tag.size(), tag.begin());
  crypto::secure_zero(mac);
  return tag;
}

std::vector<std::string_view> split_dots(std::string_view token) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto dot = token.find('.', start);
    parts.push_back(token.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return parts;
}

}  // namespace

bool is_valid_user_id(std::string_view user_id) noexcept {
  return !user_id.empty() && user_id.size() <= kMaxUserIdLength &&
         is_printable_ascii(user_id, false);
}

std::string encode_user_key(std::string_view user_id, const ContentKey& key,
                            ByteView issuer_secret) {
  if (!is_valid_user_id(user_id)) {
    throw Error(Errc::invalid_user_id, "user id must be 1-64 printable ASCII characters");
  }
  Bytes material(key.key_id.bytes().begin(), key.key_id.bytes().end());
  material.insert(material.end(), key.key_bytes.begin(), key.key_bytes.end());
  const auto tag = compute_tag(as_bytes(user_id), material, issuer_secret);

  std::string out(kUserKeyPrefix);
  out += '.';
  out += base64url_encode(as_bytes(user_id));
  out += '.';
  out += base64url_encode(material);
  out += '.';
  out += base64url_encode(tag);
  crypto::secure_zero(material);
  return out;
}

UserKey decode_user_key(std::string_view token, ByteView issuer_secret) {
  const auto parts = split_dots(token);
  if (parts.size() != 4 || parts[0] != kUserKeyPrefix) {
    throw Error(Errc::parse_error, "user key is not a PLKEY1 token");
  }
  const Bytes user_id = base64url_decode(parts[1]);
  Bytes material = base64url_decode(parts[2]);
  const Bytes tag = base64url_decode(parts[3]);
  const std::string uid = to_string(user_id);
  if (!is_valid_user_id(uid) || material.size() != kMaterialBytes ||
      tag.size() != kIssuerTagBytes) {
    crypto::secure_zero(material);
    throw Error(Errc::parse_error, "user key segments have the wrong shape");
  }

  const auto expected = compute_tag(user_id, material, issuer_secret);
  if (!crypto::constant_time_equal(expected, tag)) {
    crypto::secure_zero(material);
    throw Error(Errc::key_invalid, "user key failed issuer verification");
  }

  UserKey out;
  out.user_id = uid;
  KeyId::Storage id;
  std::copy_n(material.begin(), id.size(), id.begin());
  out.content_key.key_id = KeyId(id);
  std::copy_n(material.begin() + id.size(), out.content_key.key_bytes.size(),
              out.content_key.key_bytes.begin());
  std::copy(tag.begin(), tag.end(), out.issuer_tag.begin());
  crypto::secure_zero(material);
  return out;
}

}  // namespace promptlock::sealer
