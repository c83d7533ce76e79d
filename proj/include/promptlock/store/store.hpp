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
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/store/log_format.hpp"

namespace promptlock::store {

// Thrown by an injected write fault. The Store that threw is dead; reopen
// the directory to recover.
class SimulatedCrash : public std::runtime_error {
 public:
  SimulatedCrash() : std::runtime_error("simulated crash during append") {}
};

struct StoreOptions {
  // fdatasync after every append. Turning this off only makes sense for
  // throwaway stores.
  bool sync_writes = true;
  // Rewrite the log once this many superseded records have accumulated.
  // Zero disables automatic compaction.
  std::size_t compact_after_obsolete = 4096;
  // Test hook: given the size of the next encoded record, returns how many
  // of its bytes reach the file. Fewer than all of them ends in
  // SimulatedCrash.
  std::function<std::size_t(std::size_t record_bytes)> write_fault;
};

// Single-node versioned key/value store plus an append-only ledger, backed
// by one log file. Every write is durable before it returns.
class Store {
 public:
  static constexpr std::string_view kLogFileName = "promptlock.log";

  // Replays the log, truncating a torn tail. Throws Error(store_corrupt) on
  // damage that is not a torn tail, Error(io_error) on I/O failures.
  static std::unique_ptr<Store> open(const std::filesystem::path& dir,
                                     StoreOptions options = {});
  ~Store();
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  std::optional<Record> get(RecordKind kind, std::string_view key) const;

  // Commits iff the key's current version equals expected_version (0 means
  // absent). Returns the new version, or nullopt on conflict.
  std::optional<std::uint64_t> compare_and_swap(RecordKind kind, std::string_view key,
                                                std::uint64_t expected_version,
                                                const nlohmann::json& payload);

  // Returns the entry's sequence number: 1, 2, 3, ...
  std::uint64_t append_ledger(const nlohmann::json& entry);

  std::vector<Record> scan(RecordKind kind) const;
  std::vector<Record> ledger() const;
  std::uint64_t ledger_size() const;

  void compact();

  std::filesystem::path log_path() const { return dir_ / kLogFileName; }

 private:
  Store(std::filesystem::path dir, StoreOptions options);

  void recover();
  void append(const Bytes& encoded);
  void check_alive() const;
  void maybe_compact();

  using IndexKey = std::pair<RecordKind, std::string>;

  std::filesystem::path dir_;
  StoreOptions options_;
  int fd_ = -1;
  bool dead_ = false;

  std::mutex write_mu_;
  mutable std::shared_mutex index_mu_;
  std::map<IndexKey, Record> index_;
  std::vector<Record> ledger_;
  std::size_t obsolete_ = 0;
};

}  // namespace promptlock::store
