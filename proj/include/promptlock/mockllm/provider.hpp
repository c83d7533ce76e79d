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

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include "promptlock/mockllm/model.hpp"
#include "promptlock/sealer/task_prompt.hpp"

namespace httplib {
class Server;
}

namespace promptlock::mockllm {

// What the bridge and escrow need from a model backend. The in-process mock
// and remote HTTP backends are interchangeable behind this interface.
//
// query() throws Error(provider_unavailable) when the backend cannot be
// reached and Error::provider_status(code) for a non-success reply.
class LlmProvider {
 public:
  virtual ~LlmProvider() = default;

  virtual AssimilatedContext assimilate(const sealer::TaskPrompt& task) = 0;
  virtual AssimilatedContext forget(AssimilatedContext ctx) = 0;
  virtual LlmExchange query(const AssimilatedContext& ctx, std::string_view request) = 0;
};

class MockProvider final : public LlmProvider {
 public:
  AssimilatedContext assimilate(const sealer::TaskPrompt& task) override;
  AssimilatedContext forget(AssimilatedContext ctx) override;
  LlmExchange query(const AssimilatedContext& ctx, std::string_view request) override;
};

// Remote backend speaking
//   POST <endpoint>/v1/query  {"behavior":[{"name","value"}...],"request":...}
//   -> 200 {"response": ...}
// Assimilation and forgetting happen locally; only the directives and the
// request cross the wire, never the raw prompt.
class HttpProvider final : public LlmProvider {
 public:
  explicit HttpProvider(std::string endpoint,
                        std::chrono::milliseconds timeout = std::chrono::seconds(5));

  AssimilatedContext assimilate(const sealer::TaskPrompt& task) override;
  AssimilatedContext forget(AssimilatedContext ctx) override;
  LlmExchange query(const AssimilatedContext& ctx, std::string_view request) override;

  // The raw provider call: sends `request` with `ctx`'s behaviour.
  std::string complete(const AssimilatedContext& ctx, std::string_view request);

 private:
  std::string origin_;
  std::string base_path_;
  std::chrono::milliseconds timeout_;
};

// "mock" selects the in-process mock; anything else is an HTTP endpoint.
std::shared_ptr<LlmProvider> make_provider(std::string_view endpoint);

// Serves the mock model over the HttpProvider wire protocol.
void mount_mock_llm_api(httplib::Server& server);

}  // namespace promptlock::mockllm
