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

#include "promptlock/store/log_format.hpp"

#include <algorithm>
#include <cstring>

#include "promptlock/crc32c.hpp"
#include "promptlock/error.hpp"

namespace promptlock::store {
namespace {

void put_u32(Bytes& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_u64(Bytes& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

std::uint64_t get_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

bool all_zero(ByteView bytes) {
  return std::all_of(bytes.begin(), bytes.end(), [](std::uint8_t b) { return b == 0; });
}

bool valid_kind(std::uint8_t k) { return k >= 1 && k <= 4; }

}  // namespace

std::string_view to_string(RecordKind kind) noexcept {
  switch (kind) {
    case RecordKind::listing: return "listing";
    case RecordKind::token: return "token";
    case RecordKind::ledger_entry: return "ledger_entry";
    case RecordKind::issuer_entry: return "issuer_entry";
  }
  return "unknown";
}

Bytes encode_record(const Record& record) {
  Bytes body;
  body.reserve(kBodyFixedBytes + record.key.size() + record.payload.size());
  body.push_back(static_cast<std::uint8_t>(record.kind));
  put_u64(body, record.version);
  put_u32(body, static_cast<std::uint32_t>(record.key.size()));
  body.insert(body.end(), record.key.begin(), record.key.end());
  body.insert(body.end(), record.payload.begin(), record.payload.end());
  if (body.size() > kMaxBodyBytes) throw Error(Errc::invalid_argument, "record too large");

  Bytes out;
  out.reserve(kRecordHeaderBytes + body.size());
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  put_u32(out, crc32c(body));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

ScanResult scan_log(ByteView file) {
  if (file.size() < kFileMagic.size() ||
      std::memcmp(file.data(), kFileMagic.data(), kFileMagic.size()) != 0) {
    throw Error(Errc::store_corrupt, "log file magic mismatch");
  }
  ScanResult result;
  std::size_t pos = kFileMagic.size();
  result.valid_bytes = pos;

  while (pos < file.size()) {
    const auto rest = file.subspan(pos);
    if (rest.size() < kRecordHeaderBytes) {
      result.torn_tail = true;
      break;
    }
    const std::uint32_t len = get_u32(rest.data());
    const std::uint32_t crc = get_u32(rest.data() + 4);
    if (len > rest.size() - kRecordHeaderBytes) {
      // A length running past EOF can only come from an interrupted append.
      result.torn_tail = true;
      break;
    }
    const auto body = rest.subspan(kRecordHeaderBytes, len);
    const auto after = rest.subspan(kRecordHeaderBytes + len);
    if (len < kBodyFixedBytes || crc32c(body) != crc) {
      if (after.empty() || all_zero(rest)) {
        result.torn_tail = true;
        break;
      }
      throw Error(Errc::store_corrupt, "record checksum mismatch", pos);
    }
    const std::uint8_t kind = body[0];
    const std::uint64_t version = get_u64(body.data() + 1);
    const std::uint32_t key_len = get_u32(body.data() + 9);
    if (!valid_kind(kind) || key_len > len - kBodyFixedBytes) {
      throw Error(Errc::store_corrupt, "record body is malformed", pos);
    }
    Record r;
    r.kind = static_cast<RecordKind>(kind);
    r.version = version;
    r.key = promptlock::to_string(body.subspan(kBodyFixedBytes, key_len));
    r.payload = promptlock::to_string(body.subspan(kBodyFixedBytes + key_len));
    result.records.push_back(std::move(r));
    pos += kRecordHeaderBytes + len;
    result.valid_bytes = pos;
  }
  return result;
}

}  // namespace promptlock::store
