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

#include "promptlock/mockllm/attack.hpp"

#include <fstream>
#include <sstream>

#include "promptlock/error.hpp"
#include "promptlock/ngram.hpp"

namespace promptlock::mockllm {

namespace detail {
extern const std::string_view kBuiltinCorpus;
}  // namespace detail

namespace {

constexpr std::pair<AttackCategory, std::string_view> kCategoryNames[] = {
    {AttackCategory::direct_repeat, "direct_repeat"},
    {AttackCategory::translate, "translate"},
    {AttackCategory::encode, "encode"},
    {AttackCategory::roleplay, "roleplay"},
    {AttackCategory::continuation, "continuation"},
};

}  // namespace

std::string_view to_string(AttackCategory c) noexcept {
  for (const auto& [cat, name] : kCategoryNames) {
    if (cat == c) return name;
  }
  return "unknown";
}

std::vector<AttackQuery> parse_attack_corpus(std::string_view tsv) {
  std::vector<AttackQuery> out;
  std::size_t start = 0;
  while (start < tsv.size()) {
    auto end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    auto line = tsv.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') {
      const auto tab = line.find('\t');
      if (tab == std::string_view::npos || tab + 1 == line.size()) {
        throw Error(Errc::parse_error, "corpus line is not category<TAB>text", start);
      }
      const auto name = line.substr(0, tab);
      bool matched = false;
      for (const auto& [cat, cat_name] : kCategoryNames) {
        if (cat_name == name) {
          out.push_back({std::string(line.substr(tab + 1)), cat});
          matched = true;
          break;
        }
      }
      if (!matched) throw Error(Errc::parse_error, "unknown attack category", start);
    }
    start = end + 1;
  }
  return out;
}

std::vector<AttackQuery> load_attack_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read attack corpus " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_attack_corpus(buf.str());
}

const std::vector<AttackQuery>& builtin_attack_corpus() {
  static const auto corpus = parse_attack_corpus(detail::kBuiltinCorpus);
  return corpus;
}

AttackReport run_attacks(const std::function<std::string(std::string_view)>& ask,
                         std::string_view task_body, std::span<const AttackQuery> corpus) {
  AttackReport report;
  for (const auto& q : corpus) {
    ++report.attempts;
    if (ngram::shares_window(task_body, ask(q.query_text))) {
      ++report.leaks;
      report.leaking_queries.push_back(q.query_text);
    }
  }
  return report;
}

AttackReport run_attack_suite(const AssimilatedContext& ctx, std::string_view task_body,
                              std::span<const AttackQuery> corpus) {
  return run_attacks([&](std::string_view q) { return respond(ctx, q); }, task_body, corpus);
}

}  // namespace promptlock::mockllm
