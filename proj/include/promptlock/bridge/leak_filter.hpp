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

#include <string>
#include <string_view>

#include "promptlock/ngram.hpp"

namespace promptlock::bridge {

inline constexpr std::string_view kCanonicalRefusal =
    "[redacted] This response would have disclosed the protected task prompt.";

struct FilterResult {
  std::string text;
  bool redacted = false;
};

// Replaces `candidate` with kCanonicalRefusal when any of its leak windows
// hashes into `fingerprint`.
FilterResult leak_filter(std::string_view candidate, const ngram::Fingerprint& fingerprint);

}  // namespace promptlock::bridge
