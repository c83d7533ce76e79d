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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "promptlock/crypto.hpp"

// Word-window leak criterion. A text "discloses" another when the two share
// a run of kLeakWindow consecutive words after case folding, where a word is
// a maximal run of ASCII letters/digits or non-ASCII bytes and everything
// else is a separator.
namespace promptlock::ngram {

inline constexpr std::size_t kLeakWindow = 5;

std::vector<std::string> words(std::string_view text);

// Every window of `n` consecutive words, joined by single spaces.
std::vector<std::string> windows(std::string_view text, std::size_t n = kLeakWindow);

bool shares_window(std::string_view a, std::string_view b, std::size_t n = kLeakWindow);

std::size_t word_count(std::string_view text);

// Keyed hashes of a text's windows. Holds no plaintext; the SipHash key is
// random per fingerprint so a dumped set cannot be matched against a
// dictionary built elsewhere.
class Fingerprint {
 public:
  Fingerprint() = default;
  static Fingerprint of(std::string_view text, std::size_t n = kLeakWindow);

  bool matches(std::string_view candidate) const;
  bool empty() const noexcept { return hashes_.empty(); }
  std::size_t size() const noexcept { return hashes_.size(); }
  // Hex-encoded window hashes, sorted.
  std::vector<std::string> dump() const;
  void clear() noexcept;

 private:
  std::uint64_t hash(std::string_view window) const;

  std::size_t n_ = kLeakWindow;
  crypto::ShortHashKey key_{};
  std::unordered_set<std::uint64_t> hashes_;
};

}  // namespace promptlock::ngram
