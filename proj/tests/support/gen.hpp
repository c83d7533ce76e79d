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
#include <random>
#include <string>
#include <vector>

#include "promptlock/sealer/envelope.hpp"
#include "promptlock/sealer/task_prompt.hpp"

namespace promptlock::testing {

// Seeded generators for property tests. Every failure message should
// include the seed so a case can be replayed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }
  bool coin() { return uniform(0, 1) == 1; }

  std::string bytes(std::size_t n) {
    std::string s(n, '\0');
    for (auto& c : s) c = static_cast<char>(uniform(0, 255));
    return s;
  }

  std::string printable(std::size_t n) {
    std::string s(n, ' ');
    for (auto& c : s) c = static_cast<char>(uniform(0x20, 0x7e));
    return s;
  }

  std::string word() {
    static const char* kSyllables[] = {"ka", "lo", "mi", "ren", "tas", "vo", "qui", "zen",
                                       "dar", "pel", "sol", "nor", "fin", "gru", "bex", "hal"};
    std::string w;
    for (auto n = uniform(1, 3); n > 0; --n) w += kSyllables[uniform(0, 15)];
    return w;
  }

  // Sentences of distinct-looking made-up words, so two independently
  // generated texts essentially never share a five-word run.
  std::string prose(std::size_t words) {
    std::string s;
    for (std::size_t i = 0; i < words; ++i) {
      if (i) s += (uniform(0, 9) == 0) ? ". " : " ";
      s += word();
    }
    return s;
  }

  // A task body with a few directives and free text.
  std::string task_body(std::size_t words = 40) {
    std::string body;
    if (coin()) body += "@directive style=" + std::string(coin() ? "upper" : "lower") + "\n";
    if (coin()) body += "@directive prefix=" + word() + ": \n";
    if (coin()) body += "@directive suffix= " + word() + "\n";
    if (coin()) body += "@directive refusal_tag=" + word() + " " + word() + "\n";
    body += prose(words);
    return body;
  }

  // Printable ASCII lines, none starting with five dashes.
  std::string preamble() {
    std::string p;
    for (auto lines = uniform(0, 3); lines > 0; --lines) {
      if (!p.empty()) p += '\n';
      auto line = printable(uniform(0, 70));
      if (line.starts_with("-----")) line[0] = '*';
      p += line;
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace promptlock::testing
