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

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace promptlock::testing {

// One operation on a single versioned register, as observed by a client.
// Sequential register model (version starts at 0):
//   cas(e): if version == e then version = e + 1 and return it, else CONFLICT
//   read:   return version
struct RegisterOp {
  enum class Kind { cas, read };
  Kind kind = Kind::read;
  int process = 0;
  std::uint64_t invoked = 0;    // logical timestamps from one global counter
  std::uint64_t responded = 0;
  std::uint64_t expected = 0;          // cas only
  std::optional<std::uint64_t> result;  // cas: new version or nullopt; read: version seen
};

// Wing-Gong style search. Each process's operations are sequential, so the
// set of already linearized operations is a vector of per-process prefix
// lengths, which keeps memoization cheap even for long histories.
class RegisterChecker {
 public:
  explicit RegisterChecker(const std::vector<RegisterOp>& history) {
    int procs = 0;
    for (const auto& op : history) procs = std::max(procs, op.process + 1);
    by_process_.resize(procs);
    for (const auto& op : history) by_process_[op.process].push_back(op);
    for (auto& ops : by_process_) {
      std::sort(ops.begin(), ops.end(),
                [](const RegisterOp& a, const RegisterOp& b) { return a.invoked < b.invoked; });
    }
  }

  bool linearizable() {
    std::vector<std::size_t> done(by_process_.size(), 0);
    return search(done, 0);
  }

 private:
  static bool apply(const RegisterOp& op, std::uint64_t version, std::uint64_t& next) {
    if (op.kind == RegisterOp::Kind::read) {
      next = version;
      return op.result == version;
    }
    if (version == op.expected) {
      next = version + 1;
      return op.result == version + 1;
    }
    next = version;
    return !op.result.has_value();
  }

  bool search(std::vector<std::size_t>& done, std::uint64_t version) {
    std::uint64_t earliest_response = std::numeric_limits<std::uint64_t>::max();
    bool finished = true;
    for (std::size_t p = 0; p < by_process_.size(); ++p) {
      if (done[p] < by_process_[p].size()) {
        finished = false;
        earliest_response = std::min(earliest_response, by_process_[p][done[p]].responded);
      }
    }
    if (finished) return true;

    auto key = done;
    key.push_back(version);
    if (!visited_.insert(key).second) return false;

    for (std::size_t p = 0; p < by_process_.size(); ++p) {
      if (done[p] >= by_process_[p].size()) continue;
      const auto& op = by_process_[p][done[p]];
      if (op.invoked > earliest_response) continue;
      std::uint64_t next = 0;
      if (!apply(op, version, next)) continue;
      ++done[p];
      const bool ok = search(done, next);
      --done[p];
      if (ok) return true;
    }
    return false;
  }

  std::vector<std::vector<RegisterOp>> by_process_;
  std::set<std::vector<std::size_t>> visited_;
};

// Reference checker for tiny histories: tries every total order that
// respects real time.
inline bool linearizable_brute_force(std::vector<RegisterOp> ops) {
  std::vector<std::size_t> order(ops.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  do {
    bool ok = true;
    for (std::size_t i = 0; ok && i < order.size(); ++i) {
      for (std::size_t j = i + 1; ok && j < order.size(); ++j) {
        // order[j] comes later, so it must not have finished before order[i] began.
        if (ops[order[j]].responded < ops[order[i]].invoked) ok = false;
      }
    }
    std::uint64_t version = 0;
    for (std::size_t i = 0; ok && i < order.size(); ++i) {
      const auto& op = ops[order[i]];
      if (op.kind == RegisterOp::Kind::read) {
        ok = op.result == version;
      } else if (version == op.expected) {
        ok = op.result == version + 1;
        ++version;
      } else {
        ok = !op.result.has_value();
      }
    }
    if (ok) return true;
  } while (std::next_permutation(order.begin(), order.end()));
  return false;
}

}  // namespace promptlock::testing
