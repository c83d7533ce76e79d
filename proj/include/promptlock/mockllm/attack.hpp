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
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/mockllm/model.hpp"

namespace promptlock::mockllm {

enum class AttackCategory { direct_repeat, translate, encode, roleplay, continuation };

inline constexpr std::size_t kAttackCategoryCount = 5;

std::string_view to_string(AttackCategory c) noexcept;

struct AttackQuery {
  std::string query_text;
  AttackCategory category;
};

// `category<TAB>text` records, one per line; '#' comments and blank lines
// are skipped. Throws Error(parse_error) with the offset of a bad line.
std::vector<AttackQuery> parse_attack_corpus(std::string_view tsv);
// Throws Error(io_error) when the file cannot be read.
std::vector<AttackQuery> load_attack_corpus(const std::filesystem::path& path);
// The corpus shipped in data/attack_corpus.tsv, compiled in.
const std::vector<AttackQuery>& builtin_attack_corpus();

struct AttackReport {
  std::size_t attempts = 0;
  std::size_t leaks = 0;
  std::vector<std::string> leaking_queries;
};

// Sends every query through `ask` and counts responses that share a leak
// window with `task_body`.
AttackReport run_attacks(const std::function<std::string(std::string_view)>& ask,
                         std::string_view task_body, std::span<const AttackQuery> corpus);

// Runs the corpus against the mock model directly.
AttackReport run_attack_suite(const AssimilatedContext& ctx, std::string_view task_body,
                              std::span<const AttackQuery> corpus = builtin_attack_corpus());

}  // namespace promptlock::mockllm
