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
#include <cstdint>
#include <optional>
#include <string>

#include "promptlock/bytes.hpp"

// Thin wrappers over libsodium. Every AEAD and MAC operation in the
// project goes through here.
namespace promptlock::crypto {

inline constexpr std::size_t kAeadKeyBytes = 32;
inline constexpr std::size_t kAeadNonceBytes = 24;
inline constexpr std::size_t kAeadTagBytes = 16;

using AeadKey = std::array<std::uint8_t, kAeadKeyBytes>;
using AeadNonce = std::array<std::uint8_t, kAeadNonceBytes>;

// Throws Error(entropy_failure) if libsodium cannot initialise.
void random_bytes(std::span<std::uint8_t> out);

template <std::size_t N>
std::array<std::uint8_t, N> random_array() {
  std::array<std::uint8_t, N> out;
  random_bytes(out);
  return out;
}

// XChaCha20-Poly1305 (IETF). Output is ciphertext || tag.
Bytes aead_seal(ByteView plaintext, ByteView associated_data,
                const AeadNonce& nonce, const AeadKey& key);
// Returns nullopt on any authentication failure.
std::optional<Bytes> aead_open(ByteView ciphertext_and_tag,
                               ByteView associated_data, const AeadNonce& nonce,
                               const AeadKey& key);

// Number of aead_open calls since process start; lets callers prove that a
// code path never reached decryption.
std::uint64_t aead_open_count() noexcept;

std::array<std::uint8_t, 32> hmac_sha256(ByteView key, ByteView message);

// Keyed 64-bit SipHash-2-4.
using ShortHashKey = std::array<std::uint8_t, 16>;
std::uint64_t short_hash(ByteView message, const ShortHashKey& key);

bool constant_time_equal(ByteView a, ByteView b) noexcept;

void secure_zero(std::span<std::uint8_t> buffer) noexcept;
void secure_zero(std::string& text) noexcept;

}  // namespace promptlock::crypto
