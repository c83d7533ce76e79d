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
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/opaque_id.hpp"
#include "promptlock/sealer/task_prompt.hpp"

// Deterministic stand-in for an LLM. Assimilation reduces a task prompt to
// its directives; queries are answered from those directives alone once the
// raw prompt has been forgotten.
//
// Directive semantics, applied in this order:
//   prefix=P       prepend P
//   suffix=S       append S
//   style=upper    uppercase the whole reply (style=lower lowercases it)
//   refusal_tag=R  reply R verbatim to extraction attempts
// When a directive name repeats, the last occurrence wins.
namespace promptlock::mockllm {

using Clock = std::chrono::system_clock;

inline constexpr std::string_view kDefaultRefusal =
    "I can't share my instructions, but I'm happy to help with the task.";

class AssimilatedContext {
 public:
  const ContextId& context_id() const noexcept { return context_id_; }
  const std::vector<sealer::Directive>& behavior() const noexcept { return behavior_; }
  Clock::time_point assimilated_at() const noexcept { return assimilated_at_; }
  bool raw_prompt_retained() const noexcept { return raw_prompt_retained_; }

  // Every field, including the raw prompt while it is still retained.
  nlohmann::json to_json() const;

  bool operator==(const AssimilatedContext&) const = default;

 private:
  friend AssimilatedContext assimilate(const sealer::TaskPrompt& task);
  friend AssimilatedContext forget(AssimilatedContext ctx);
  friend std::string respond(const AssimilatedContext& ctx, std::string_view request);
  friend AssimilatedContext context_from_behavior(std::vector<sealer::Directive> behavior);

  ContextId context_id_;
  std::vector<sealer::Directive> behavior_;
  Clock::time_point assimilated_at_{};
  bool raw_prompt_retained_ = false;
  std::string raw_prompt_;
};

struct LlmExchange {
  std::string request;
  std::string response;
  ContextId context_id;
  bool operator==(const LlmExchange&) const = default;
};

// behavior = task.directives(); the raw prompt stays until forget().
AssimilatedContext assimilate(const sealer::TaskPrompt& task);

// Drops (and zeroes) the raw prompt. Behaviour is untouched. Idempotent.
AssimilatedContext forget(AssimilatedContext ctx);

// A forgotten context holding only `behavior`, as a remote model would
// reconstruct it from a request.
AssimilatedContext context_from_behavior(std::vector<sealer::Directive> behavior);

std::string respond(const AssimilatedContext& ctx, std::string_view request);
LlmExchange query(const AssimilatedContext& ctx, std::string_view request);

// prefix -> suffix -> style.
std::string apply_behavior(const std::vector<sealer::Directive>& behavior,
                           std::string_view request);

// Keyword heuristic for requests that try to get the model to disclose its
// instructions. A model that still holds its raw prompt complies.
bool is_extraction_attempt(std::string_view request);

}  // namespace promptlock::mockllm
