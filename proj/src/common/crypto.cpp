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

#include "promptlock/crypto.hpp"

#include <sodium.h>

#include <atomic>
#include <cstring>

#include "promptlock/error.hpp"

namespace promptlock::crypto {
namespace {

std::atomic<std::uint64_t> g_open_count{0};

void ensure_init() {
  static const int rc = sodium_init();
  if (rc < 0) throw Error(Errc::entropy_failure, "libsodium initialisation failed");
}

}  // namespace

void random_bytes(std::span<std::uint8_t> out) {
  ensure_init();
  randombytes_buf(out.data(), out.size());
}

Bytes aead_seal(ByteView plaintext, ByteView associated_data,
                const AeadNonce& nonce, const AeadKey& key) {
  ensure_init();
  Bytes out(plaintext.size() + kAeadTagBytes);
  unsigned long long out_len = 0;
  crypto_aead_xchacha20poly1305_ietf_encrypt(
      out.data(), &out_len, plaintext.data(), plaintext.size(),
      associated_data.data(), associated_data.size(), nullptr, nonce.data(),
      key.data());
  out.resize(static_cast<std::size_t>(out_len));
  return out;
}

std::optional<Bytes> aead_open(ByteView ciphertext_and_tag,
                               ByteView associated_data, const AeadNonce& nonce,
                               const AeadKey& key) {
  ensure_init();
  g_open_count.fetch_add(1, std::memory_order_relaxed);
  if (ciphertext_and_tag.size() < kAeadTagBytes) return std::nullopt;
  Bytes out(ciphertext_and_tag.size() - kAeadTagBytes);
  unsigned long long out_len = 0;
  const int rc = crypto_aead_xchacha20poly1305_ietf_decrypt(
      out.data(), &out_len, nullptr, ciphertext_and_tag.data(),
      ciphertext_and_tag.size(), associated_data.data(), associated_data.size(),
      nonce.data(), key.data());
  if (rc != 0) return std::nullopt;
  out.resize(static_cast<std::size_t>(out_len));
  return out;
}

std::uint64_t aead_open_count() noexcept {
  return g_open_count.load(std::memory_order_relaxed);
}

std::array<std::uint8_t, 32> hmac_sha256(ByteView key, ByteView message) {
  ensure_init();
  crypto_auth_hmacsha256_state state;
  crypto_auth_hmacsha256_init(&state, key.data(), key.size());
  crypto_auth_hmacsha256_update(&state, message.data(), message.size());
  std::array<std::uint8_t, 32> out;
  crypto_auth_hmacsha256_final(&state, out.data());
  sodium_memzero(&state, sizeof state);
  return out;
}

std::uint64_t short_hash(ByteView message, const ShortHashKey& key) {
  ensure_init();
  static_assert(crypto_shorthash_siphash24_BYTES == 8);
  std::uint8_t out[8];
  crypto_shorthash_siphash24(out, message.data(), message.size(), key.data());
  std::uint64_t v;
  std::memcpy(&v, out, sizeof v);
  return v;
}

bool constant_time_equal(ByteView a, ByteView b) noexcept {
  if (a.size() != b.size()) return false;
  return sodium_memcmp(a.data(), b.data(), a.size()) == 0;
}

void secure_zero(std::span<std::uint8_t> buffer) noexcept {
  sodium_memzero(buffer.data(), buffer.size());
}

void secure_zero(std::string& text) noexcept {
  sodium_memzero(text.data(), text.size());
  text.clear();
  text.shrink_to_fit();
}

}  // namespace promptlock::crypto
