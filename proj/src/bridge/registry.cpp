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

#include "promptlock/bridge/registry.hpp"

#include <fstream>
#include <mutex>
#include <sstream>

#include "promptlock/error.hpp"

namespace promptlock::bridge {
namespace {

using nlohmann::json;

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  auto j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw Error(Errc::parse_error, path.string() + " is not valid JSON");
  return j;
}

}  // namespace

void IssuerRegistry::add_secret(std::string ref, Bytes secret) {
  std::unique_lock lock(mu_);
  secrets_[std::move(ref)] = std::move(secret);
}

void IssuerRegistry::upsert(IssuerRegistryEntry entry) {
  std::unique_lock lock(mu_);
  const auto id = entry.prompt_id;
  entries_[id] = std::move(entry);
}

void IssuerRegistry::revoke(const PromptId& prompt_id, std::string user_id) {
  std::unique_lock lock(mu_);
  auto it = entries_.find(prompt_id);
  if (it == entries_.end()) throw Error(Errc::unknown_prompt, "prompt is not registered");
  it->second.revoked_user_ids.insert(std::move(user_id));
}

std::optional<IssuerRegistryEntry> IssuerRegistry::entry(const PromptId& prompt_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(prompt_id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Bytes IssuerRegistry::secret_for(const PromptId& prompt_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(prompt_id);
  if (it == entries_.end()) throw Error(Errc::key_invalid, "no issuer registered for prompt");
  auto s = secrets_.find(it->second.issuer_secret_ref);
  if (s == secrets_.end()) throw Error(Errc::key_invalid, "issuer secret is not loaded");
  return s->second;
}

bool IssuerRegistry::is_revoked(const PromptId& prompt_id, std::string_view user_id) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(prompt_id);
  return it == entries_.end() ||
         it->second.revoked_user_ids.contains(std::string(user_id));
}

json IssuerRegistry::entries_json() const {
  std::shared_lock lock(mu_);
  json entries = json::array();
  for (const auto& [id, e] : entries_) {
    entries.push_back({{"prompt_id", id.str()},
                       {"issuer_secret_ref", e.issuer_secret_ref},
                       {"revoked_user_ids", e.revoked_user_ids}});
  }
  return {{"entries", entries}};
}

std::map<std::string, Bytes> IssuerRegistry::load_secrets(const std::filesystem::path& secrets_file) {
  const json j = read_json_file(secrets_file);
  if (!j.is_object()) throw Error(Errc::parse_error, "secrets file must be a JSON object");
  std::map<std::string, Bytes> out;
  for (const auto& [ref, value] : j.items()) {
    if (!value.is_string()) throw Error(Errc::parse_error, "secret values must be strings");
    out[ref] = base64url_decode(value.get<std::string>());
  }
  return out;
}

std::shared_ptr<IssuerRegistry> IssuerRegistry::load_entries(
    const std::filesystem::path& registry_file) {
  auto reg = std::make_shared<IssuerRegistry>();
  if (!std::filesystem::exists(registry_file)) return reg;
  const json j = read_json_file(registry_file);
  try {
    for (const auto& e : j.at("entries")) {
      IssuerRegistryEntry entry;
      entry.prompt_id = PromptId::parse(e.at("prompt_id").get<std::string>());
      entry.issuer_secret_ref = e.at("issuer_secret_ref").get<std::string>();
      if (e.contains("revoked_user_ids")) {
        entry.revoked_user_ids = e["revoked_user_ids"].get<std::set<std::string>>();
      }
      reg->upsert(std::move(entry));
    }
  } catch (const json::exception& ex) {
    throw Error(Errc::parse_error, "registry file is malformed: " + std::string(ex.what()));
  }
  return reg;
}

std::shared_ptr<IssuerRegistry> IssuerRegistry::load(const std::filesystem::path& registry_file,
                                                     const std::filesystem::path& secrets_file) {
  auto reg = load_entries(registry_file);
  for (auto& [ref, secret] : load_secrets(secrets_file)) reg->add_secret(ref, std::move(secret));
  return reg;
}

void IssuerRegistry::save_entries(const std::filesystem::path& registry_file) const {
  const auto tmp = registry_file.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_error, "cannot write " + tmp);
    out << entries_json().dump(2) << '\n';
  }
  std::filesystem::rename(tmp, registry_file);
}

}  // namespace promptlock::bridge
