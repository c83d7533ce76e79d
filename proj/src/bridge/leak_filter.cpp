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

#include "promptlock/bridge/leak_filter.hpp"

namespace promptlock::bridge {

FilterResult leak_filter(std::string_view candidate, const ngram::Fingerprint& fingerprint) {
  if (fingerprint.matches(candidate)) return {std::string(kCanonicalRefusal), true};
  return {std::string(candidate), false};
}

}  // namespace promptlock::bridge
