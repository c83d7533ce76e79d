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

#include <filesystem>
#include <map>
#include <memory>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "promptlock/bytes.hpp"
#include "promptlock/opaque_id.hpp"

namespace promptlock::bridge {

struct IssuerRegistryEntry {
  PromptId prompt_id;
  std::string issuer_secret_ref;
  std::set<std::string> revoked_user_ids;
};

// Which issuer secret vouches for each prompt's user keys, and which users
// have been cut off. Reads run concurrently; revocation is atomic and seen
// by every later validation.
//
// Registry file: {"entries":[{"prompt_id","issuer_secret_ref","revoked_user_ids":[...]}]}
// Secrets file:  {"<ref>": "<base64url secret>", ...}
class IssuerRegistry {
 public:
  void add_secret(std::string ref, Bytes secret);
  void upsert(IssuerRegistryEntry entry);
  // Throws Error(unknown_prompt) when the prompt has no entry.
  void revoke(const PromptId& prompt_id, std::string user_id);

  std::optional<IssuerRegistryEntry> entry(const PromptId& prompt_id) const;
  // Throws Error(key_invalid) when the prompt or its secret is unknown.
  Bytes secret_for(const PromptId& prompt_id) const;
  bool is_revoked(const PromptId& prompt_id, std::string_view user_id) const;

  nlohmann::json entries_json() const;

  // Throws Error(io_error) / Error(parse_error).
  static std::shared_ptr<IssuerRegistry> load(const std::filesystem::path& registry_file,
                                              const std::filesystem::path& secrets_file);
  // Entries only; a missing file yields an empty registry.
  static std::shared_ptr<IssuerRegistry> load_entries(const std::filesystem::path& registry_file);
  static std::map<std::string, Bytes> load_secrets(const std::filesystem::path& secrets_file);
  void save_entries(const std::filesystem::path& registry_file) const;

 private:
  mutable std::shared_mutex mu_;
  std::map<PromptId, IssuerRegistryEntry> entries_;
  std::map<std::string, Bytes> secrets_;
};

}  // namespace promptlock::bridge
