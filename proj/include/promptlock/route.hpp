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

#include <functional>
#include <mutex>
#include <string>
#include <vector>

namespace promptlock {

// The ten-step key-escrow sequence:
//   1 user buys listing            6 escrow returns key
//   2 user receives envelope+token 7 escrow registers state change, rotates
//   3 user submits to bridge       8 bridge unseals
//   4 bridge calls escrow          9 assimilate + forget
//   5 escrow validates token      10 artifact to user
enum class Route : int {
  purchase = 1,
  deliver = 2,
  submit = 3,
  call_escrow = 4,
  validate = 5,
  release_key = 6,
  register_and_rotate = 7,
  unseal = 8,
  assimilate_forget = 9,
  artifact = 10,
};

struct RouteEvent {
  Route step;
  std::string actor;
  std::string detail;  // ids only, never prompt text
};

using RouteObserver = std::function<void(const RouteEvent&)>;

class RouteRecorder {
 public:
  RouteObserver observer() {
    return [this](const RouteEvent& e) {
      std::lock_guard lock(mu_);
      events_.push_back(e);
    };
  }
  std::vector<RouteEvent> events() const {
    std::lock_guard lock(mu_);
    return events_;
  }

 private:
  mutable std::mutex mu_;
  std::vector<RouteEvent> events_;
};

}  // namespace promptlock
