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

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

#include "promptlock/bytes.hpp"
#include "promptlock/crypto.hpp"
#include "promptlock/error.hpp"

namespace promptlock {

// 16 random bytes, rendered as 22 base64url characters. The tag type keeps
// prompt ids, key ids, token ids and session ids from mixing.
template <typename Tag>
class OpaqueId {
 public:
  static constexpr std::size_t kBytes = 16;
  using Storage = std::array<std::uint8_t, kBytes>;

  OpaqueId() = default;
  explicit OpaqueId(const Storage& bytes) : bytes_(bytes) {}

  static OpaqueId random() { return OpaqueId(crypto::random_array<kBytes>()); }

  // Throws Error(parse_error) unless `text` is exactly 16 bytes of base64url.
  static OpaqueId parse(std::string_view text) {
    const Bytes raw = base64url_decode(text);
    if (raw.size() != kBytes) {
      throw Error(Errc::parse_error, "identifier must encode 16 bytes");
    }
    Storage s;
    std::copy(raw.begin(), raw.end(), s.begin());
    return OpaqueId(s);
  }

  std::string str() const { return base64url_encode(bytes_); }
  const Storage& bytes() const noexcept { return bytes_; }

  auto operator<=>(const OpaqueId&) const = default;

 private:
  Storage bytes_{};
};

struct PromptIdTag {};
struct KeyIdTag {};
struct TokenIdTag {};
struct SessionIdTag {};
struct ContextIdTag {};

using PromptId = OpaqueId<PromptIdTag>;
using KeyId = OpaqueId<KeyIdTag>;
using TokenId = OpaqueId<TokenIdTag>;
using SessionId = OpaqueId<SessionIdTag>;
using ContextId = OpaqueId<ContextIdTag>;

}  // namespace promptlock

template <typename Tag>
struct std::hash<promptlock::OpaqueId<Tag>> {
  std::size_t operator()(const promptlock::OpaqueId<Tag>& id) const noexcept {
    std::size_t h = 0;
    for (auto b : id.bytes()) h = h * 131 + b;
    return h;
  }
};
