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

#include "promptlock/sealer/task_prompt.hpp"

#include "promptlock/crypto.hpp"
#include "promptlock/error.hpp"
#include "promptlock/ngram.hpp"

#include <optional>

namespace promptlock::sealer {
namespace {

constexpr std::string_view kDirectivePrefix = "@directive ";

bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '-';
}

std::optional<Directive> parse_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (!line.starts_with(kDirectivePrefix)) return std::nullopt;
  line.remove_prefix(kDirectivePrefix.size());
  const auto eq = line.find('=');
  if (eq == std::string_view::npos || eq == 0) return std::nullopt;
  const auto name = line.substr(0, eq);
  for (char c : name) {
    if (!is_name_char(c)) return std::nullopt;
  }
  const auto value = line.substr(eq + 1);
  if (ngram::word_count(value) > kMaxDirectiveValueWords) return std::nullopt;
  return Directive{std::string(name), std::string(value)};
}

}  // namespace

std::vector<Directive> parse_directives(std::string_view body) {
  std::vector<Directive> out;
  std::size_t start = 0;
  while (start <= body.size()) {
    auto end = body.find('\n', start);
    if (end == std::string_view::npos) end = body.size();
    if (auto d = parse_line(body.substr(start, end - start))) out.push_back(std::move(*d));
    start = end + 1;
  }
  return out;
}

TaskPrompt::TaskPrompt(std::string body)
    : body_(std::move(body)), directives_(parse_directives(body_)) {}

std::string TaskPrompt::serialize() const {
  std::string out;
  out.reserve(body_.size() + 1 + kForgetEpilogue.size());
  out += body_;
  out += '\n';
  out += kForgetEpilogue;
  return out;
}

TaskPrompt TaskPrompt::deserialize(std::string_view text) {
  const std::size_t suffix = kForgetEpilogue.size() + 1;
  if (text.size() < suffix || text[text.size() - suffix] != '\n' ||
      !text.ends_with(kForgetEpilogue)) {
    throw Error(Errc::parse_error, "task prompt lacks the forget epilogue");
  }
  return TaskPrompt(std::string(text.substr(0, text.size() - suffix)));
}

void TaskPrompt::wipe() noexcept {
  crypto::secure_zero(body_);
  for (auto& d : directives_) {
    crypto::secure_zero(d.name);
    crypto::secure_zero(d.value);
  }
  directives_.clear();
}

}  // namespace promptlock::sealer
