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

#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "promptlock/error.hpp"

namespace promptlock::cli {
namespace {

using nlohmann::json;

template <typename T>
void take(const json& j, const char* name, T& out) {
  if (!j.contains(name)) return;
  try {
    out = j.at(name).get<T>();
  } catch (const json::exception&) {
    throw Error(Errc::invalid_argument, std::string("config field ") + name + " has the wrong type");
  }
}

}  // namespace

CliConfig load_config(const std::optional<std::filesystem::path>& path) {
  CliConfig c;
  if (path) {
    std::ifstream in(*path, std::ios::binary);
    if (!in) throw Error(Errc::io_error, "cannot read config " + path->string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto j = json::parse(buf.str(), nullptr, false);
    if (!j.is_object()) throw Error(Errc::invalid_argument, "config is not a JSON object");
    static const char* kKnown[] = {"bridge_listen",       "bridge_url",
                                   "delay_owner_provider_ms", "delay_user_owner_ms",
                                   "delay_user_provider_ms",  "escrow_listen",
                                   "escrow_url",          "issuer_registry_path",
                                   "issuer_secret_path",  "output_format",
                                   "placement",           "provider",
                                   "store_dir",           "token_ttl_hours"};
    for (const auto& [key, value] : j.items()) {
      bool known = false;
      for (const char* k : kKnown) known = known || key == k;
      if (!known) throw Error(Errc::invalid_argument, "unknown config field " + key);
    }
    take(j, "escrow_url", c.escrow_url);
    take(j, "bridge_url", c.bridge_url);
    take(j, "issuer_secret_path", c.issuer_secret_path);
    take(j, "issuer_registry_path", c.issuer_registry_path);
    take(j, "store_dir", c.store_dir);
    take(j, "output_format", c.output_format);
    take(j, "provider", c.provider);
    take(j, "placement", c.placement);
    take(j, "delay_user_owner_ms", c.delay_user_owner_ms);
    take(j, "delay_owner_provider_ms", c.delay_owner_provider_ms);
    take(j, "delay_user_provider_ms", c.delay_user_provider_ms);
    take(j, "bridge_listen", c.bridge_listen);
    take(j, "escrow_listen", c.escrow_listen);
    take(j, "token_ttl_hours", c.token_ttl_hours);
  }
  if (const char* v = std::getenv("PROMPTLOCK_ISSUER_SECRET_FILE"); v && *v) {
    c.issuer_secret_path = v;
  }
  if (const char* v = std::getenv("PROMPTLOCK_STORE_DIR"); v && *v) c.store_dir = v;
  if (c.output_format != "human" && c.output_format != "json") {
    throw Error(Errc::invalid_argument, "output_format must be human or json");
  }
  return c;
}

std::filesystem::path require_setting(const std::string& value, const std::string& what) {
  if (value.empty()) throw Error(Errc::invalid_argument, what + " is not configured");
  return value;
}

}  // namespace promptlock::cli
