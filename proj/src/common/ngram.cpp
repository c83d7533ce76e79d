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

#include "promptlock/ngram.hpp"

#include <algorithm>
#include <cstdio>

namespace promptlock::ngram {
namespace {

bool is_word_byte(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c >= 0x80;
}

char fold(unsigned char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : static_cast<char>(c);
}

}  // namespace

std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  for (unsigned char c : text) {
    if (is_word_byte(c)) {
      current += fold(c);
    } else if (!current.empty()) {
      out.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::size_t word_count(std::string_view text) { return words(text).size(); }

std::vector<std::string> windows(std::string_view text, std::size_t n) {
  const auto w = words(text);
  std::vector<std::string> out;
  if (n == 0 || w.size() < n) return out;
  out.reserve(w.size() - n + 1);
  for (std::size_t i = 0; i + n <= w.size(); ++i) {
    std::string joined = w[i];
    for (std::size_t k = 1; k < n; ++k) {
      joined += ' ';
      joined += w[i + k];
    }
    out.push_back(std::move(joined));
  }
  return out;
}

bool shares_window(std::string_view a, std::string_view b, std::size_t n) {
  const auto wa = windows(a, n);
  if (wa.empty()) return false;
  const std::unordered_set<std::string> set(wa.begin(), wa.end());
  for (const auto& w : windows(b, n)) {
    if (set.contains(w)) return true;
  }
  return false;
}

Fingerprint Fingerprint::of(std::string_view text, std::size_t n) {
  Fingerprint fp;
  fp.n_ = n;
  fp.key_ = crypto::random_array<16>();
  for (auto& w : windows(text, n)) {
    fp.hashes_.insert(fp.hash(w));
    crypto::secure_zero(w);
  }
  return fp;
}

std::uint64_t Fingerprint::hash(std::string_view window) const {
  return crypto::short_hash(as_bytes(window), key_);
}

bool Fingerprint::matches(std::string_view candidate) const {
  if (hashes_.empty()) return false;
  for (const auto& w : windows(candidate, n_)) {
    if (hashes_.contains(hash(w))) return true;
  }
  return false;
}

std::vector<std::string> Fingerprint::dump() const {
  std::vector<std::string> out;
  out.reserve(hashes_.size());
  for (auto h : hashes_) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    out.emplace_back(buf);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Fingerprint::clear() noexcept {
  hashes_.clear();
  crypto::secure_zero(key_);
}

}  // namespace promptlock::ngram
