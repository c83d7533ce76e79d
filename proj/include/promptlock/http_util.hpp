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

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "promptlock/error.hpp"

// Shared HTTP conventions for the bridge, escrow and provider clients.
// Error bodies are {"error": <ERRC NAME>, "message": ..., "details": {...}}.
namespace promptlock::http {

struct Endpoint {
  std::string origin;     // scheme://host[:port]
  std::string base_path;  // "" or "/prefix", no trailing slash
};

// Accepts http://host[:port][/path]. Throws Error(invalid_argument).
Endpoint parse_endpoint(std::string_view url);

int status_for(Errc code) noexcept;

std::string error_body(const Error& e);

// Rebuilds the Error a service reported. Falls back to the status code when
// the body is not an error document.
[[noreturn]] void throw_remote_error(int status, std::string_view body);

struct Failure {
  int status;
  std::string body;
};

// Runs a request handler, turning Error, JSON and other exceptions into a
// status code plus error body. Returns nullopt when the handler completes.
std::optional<Failure> guard(const std::function<void()>& handler);

}  // namespace promptlock::http
