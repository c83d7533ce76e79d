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

#include "promptlock/mockllm/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "promptlock/crypto.hpp"

namespace promptlock::mockllm {
namespace {

constexpr std::array<std::string_view, 30> kExtractionCues = {
    "instruction", "prompt",    "system",      "repeat",        "verbatim",
    "above",       "translat",  "encode",      "base64",        "reveal",
    "original",    "initial",   "continue",    "previous",      "pretend",
    "roleplay",    "rules",     "secret",      "hidden",        "word for word",
    "word-for-word", "configuration", "everything before", "backwards",
    "hexadecimal", "rot13",     "recite",      "quote",         "directive",
    "epilogue",
};

const std::string* find_directive(const std::vector<sealer::Directive>& behavior,
                                  std::string_view name) {
  const std::string* found = nullptr;
  for (const auto& d : behavior) {
    if (d.name == name) found = &d.value;
  }
  return found;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

nlohmann::json AssimilatedContext::to_json() const {
  nlohmann::json behavior = nlohmann::json::array();
  for (const auto& d : behavior_) behavior.push_back({{"name", d.name}, {"value", d.value}});
  nlohmann::json j = {
      {"context_id", context_id_.str()},
      {"behavior", std::move(behavior)},
      {"assimilated_at",
       std::chrono::duration_cast<std::chrono::milliseconds>(assimilated_at_.time_since_epoch())
           .count()},
      {"raw_prompt_retained", raw_prompt_retained_},
  };
  if (raw_prompt_retained_) j["raw_prompt"] = raw_prompt_;
  return j;
}

AssimilatedContext assimilate(const sealer::TaskPrompt& task) {
  AssimilatedContext ctx;
  ctx.context_id_ = ContextId::random();
  ctx.behavior_ = task.directives();
  ctx.assimilated_at_ = Clock::now();
  ctx.raw_prompt_retained_ = true;
  ctx.raw_prompt_ = task.body();
  return ctx;
}

AssimilatedContext forget(AssimilatedContext ctx) {
  crypto::secure_zero(ctx.raw_prompt_);
  ctx.raw_prompt_retained_ = false;
  return ctx;
}

AssimilatedContext context_from_behavior(std::vector<sealer::Directive> behavior) {
  AssimilatedContext ctx;
  ctx.context_id_ = ContextId::random();
  ctx.behavior_ = std::move(behavior);
  ctx.assimilated_at_ = Clock::now();
  return ctx;
}

std::string apply_behavior(const std::vector<sealer::Directive>& behavior,
                           std::string_view request) {
  std::string out(request);
  if (const auto* prefix = find_directive(behavior, "prefix")) out = *prefix + out;
  if (const auto* suffix = find_directive(behavior, "suffix")) out += *suffix;
  if (const auto* style = find_directive(behavior, "style")) {
    if (*style == "upper") {
      std::transform(out.begin(), out.end(), out.begin(),
                     [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    } else if (*style == "lower") {
      out = lower(out);
    }
  }
  return out;
}

bool is_extraction_attempt(std::string_view request) {
  const std::string text = lower(request);
  return std::any_of(kExtractionCues.begin(), kExtractionCues.end(),
                     [&](std::string_view cue) { return text.find(cue) != std::string::npos; });
}

std::string respond(const AssimilatedContext& ctx, std::string_view request) {
  if (is_extraction_attempt(request)) {
    // A model that still holds its prompt gives it away; that is what
    // forget() exists to prevent.
    if (ctx.raw_prompt_retained_) return ctx.raw_prompt_;
    if (const auto* tag = find_directive(ctx.behavior_, "refusal_tag")) return *tag;
    return std::string(kDefaultRefusal);
  }
  return apply_behavior(ctx.behavior_, request);
}

LlmExchange query(const AssimilatedContext& ctx, std::string_view request) {
  return LlmExchange{std::string(request), respond(ctx, request), ctx.context_id()};
}

}  // namespace promptlock::mockllm
