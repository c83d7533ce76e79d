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

#include <optional>
#include <string>
#include <string_view>

#include "promptlock/bytes.hpp"
#include "promptlock/crypto.hpp"
#include "promptlock/opaque_id.hpp"
#include "promptlock/sealer/task_prompt.hpp"

namespace promptlock::sealer {

inline constexpr int kEnvelopeVersion = 1;
inline constexpr std::size_t kArmorColumns = 64;

struct ContentKey {
  KeyId key_id;
  crypto::AeadKey key_bytes{};

  // base64url(key_id || key_bytes), the form used in key files and APIs.
  std::string to_text() const;
  static ContentKey from_text(std::string_view text);

  bool operator==(const ContentKey&) const = default;
};

// Fresh random key id and key bytes.
ContentKey generate_content_key();

struct EnvelopeHeader {
  int version = kEnvelopeVersion;
  PromptId prompt_id;
  KeyId key_id;
  // Present only on escrow-backed prompts: base URL of the key escrow API.
  std::optional<std::string> escrow_locator;

  // Key-sorted compact JSON; these exact bytes lead the armored core.
  std::string canonical_json() const;
  bool operator==(const EnvelopeHeader&) const = default;
};

struct SealedPrompt {
  std::string preamble;
  EnvelopeHeader header;
  crypto::AeadNonce nonce{};
  Bytes ciphertext_and_tag;

  // The armored, printable-ASCII form:
  //   -----BEGIN PROTECTED PROMPT v1-----
  //   <preamble lines>
  //   -----CORE-----
  //   <base64url(header || nonce || ciphertext+tag), 64 columns>
  //   -----END PROTECTED PROMPT-----
  std::string serialize() const;

  // AEAD associated data: canonical JSON of {header, preamble}.
  std::string associated_data() const;

  bool operator==(const SealedPrompt&) const = default;
};

// Overrides for deterministic sealing. Rotation reuses prompt_id; tests pin
// the nonce.
struct SealOptions {
  std::optional<PromptId> prompt_id;
  std::optional<crypto::AeadNonce> nonce;
};

// Throws Error(invalid_preamble) when the preamble is not printable ASCII
// lines, or contains a line starting with "-----".
SealedPrompt seal(const TaskPrompt& task, const ContentKey& key,
                  std::string_view preamble,
                  std::optional<std::string> escrow_locator = std::nullopt,
                  const SealOptions& options = {});

// Throws Error(parse_error) with a byte offset for malformed armor and
// Error(version_error) for a well-formed envelope of an unsupported version.
SealedPrompt parse_sealed(std::string_view armored);

// Throws Error(auth_failure) for a wrong key or any tampering.
TaskPrompt unseal(const SealedPrompt& envelope, const ContentKey& key);

bool is_printable_ascii(std::string_view text, bool allow_newline) noexcept;

}  // namespace promptlock::sealer
