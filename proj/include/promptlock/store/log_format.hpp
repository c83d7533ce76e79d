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
#include <string>
#include <string_view>
#include <vector>

#include "promptlock/bytes.hpp"

// On-disk layout (all integers little-endian):
//
//   file   := magic "PLSTORE1" record*
//   record := u32 body_len | u32 crc32c(body) | body
//   body   := u8 kind | u64 version | u32 key_len | key | payload
//
// payload is canonical (key-sorted, compact) JSON and runs to the end of the
// body. Ledger entries use kind ledger_entry, an empty key, and their
// sequence number as version.
namespace promptlock::store {

inline constexpr std::string_view kFileMagic = "PLSTORE1";
inline constexpr std::size_t kRecordHeaderBytes = 8;
inline constexpr std::size_t kBodyFixedBytes = 1 + 8 + 4;
inline constexpr std::uint32_t kMaxBodyBytes = 64u << 20;

enum class RecordKind : std::uint8_t {
  listing = 1,
  token = 2,
  ledger_entry = 3,
  issuer_entry = 4,
};

std::string_view to_string(RecordKind kind) noexcept;

struct Record {
  RecordKind kind = RecordKind::listing;
  std::string key;
  std::uint64_t version = 0;
  std::string payload;

  bool operator==(const Record&) const = default;
};

Bytes encode_record(const Record& record);

struct ScanResult {
  std::vector<Record> records;
  // Bytes of the file, magic included, covered by intact records.
  std::size_t valid_bytes = 0;
  // True when a partially written record follows the intact prefix.
  bool torn_tail = false;
};

// Reads every record after the magic. An incomplete or checksum-failing
// final record (or one followed only by zero bytes) is a torn tail; any
// other damage throws Error(store_corrupt).
ScanResult scan_log(ByteView file);

}  // namespace promptlock::store
