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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace promptlock::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitEnvironment = 4;
inline constexpr int kExitProtocol = 5;

// A failure with no library error code behind it, e.g. a port in use.
struct CliFailure : std::runtime_error {
  CliFailure(int code, std::string name, const std::string& message)
      : std::runtime_error(message), exit_code(code), reason(std::move(name)) {}
  int exit_code;
  std::string reason;
};

// Loaded from the --config JSON file, then overridden by
// PROMPTLOCK_ISSUER_SECRET_FILE and PROMPTLOCK_STORE_DIR.
struct CliConfig {
  std::string escrow_url = "http://127.0.0.1:8081";
  std::string bridge_url = "http://127.0.0.1:8080";
  std::string issuer_secret_path;
  std::string issuer_registry_path;
  std::string store_dir;
  std::string output_format = "human";  // human | json

  std::string provider = "mock";
  std::string placement = "provider_side";
  std::int64_t delay_user_owner_ms = 0;
  std::int64_t delay_owner_provider_ms = 0;
  std::int64_t delay_user_provider_ms = 0;

  std::string bridge_listen = "127.0.0.1:8080";
  std::string escrow_listen = "127.0.0.1:8081";
  std::int64_t token_ttl_hours = 24 * 30;

  bool json() const { return output_format == "json"; }
};

// Throws Error(io_error) when the file cannot be read and
// Error(invalid_argument) for malformed or unknown settings.
CliConfig load_config(const std::optional<std::filesystem::path>& path);

// Resolves a required path setting; throws Error(invalid_argument) naming
// `what` when it is empty.
std::filesystem::path require_setting(const std::string& value, const std::string& what);

}  // namespace promptlock::cli
