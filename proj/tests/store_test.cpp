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

#include <gtest/gtest.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "promptlock/error.hpp"
#include "promptlock/store/log_format.hpp"
#include "promptlock/store/store.hpp"
#include "support/temp_dir.hpp"

namespace promptlock::store {
namespace {

using nlohmann::json;
using testing::TempDir;

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const std::filesystem::path& p, const std::string& s) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << s;
}

// ---- record format -------------------------------------------------------

TEST(LogFormat, RecordLayoutIsLittleEndianWithCrc) {
  const Record r{RecordKind::token, "k", 0x0102030405060708ull, "{}"};
  const auto bytes = encode_record(r);
  // len | crc | kind | version | key_len | key | payload
  ASSERT_EQ(bytes.size(), 8u + 1 + 8 + 4 + 1 + 2);
  EXPECT_EQ(bytes[0], 16);  // body length
  EXPECT_EQ(bytes[1], 0);
  EXPECT_EQ(bytes[8], 2);     // kind token
  EXPECT_EQ(bytes[9], 0x08);  // version, low byte first
  EXPECT_EQ(bytes[16], 0x01);
  EXPECT_EQ(bytes[17], 1);    // key length
  EXPECT_EQ(bytes[21], 'k');
}

TEST(LogFormat, ScanRoundTripAndTornTail) {
  std::string file(kFileMagic);
  std::vector<Record> recs = {{RecordKind::listing, "a", 1, R"({"x":1})"},
                              {RecordKind::ledger_entry, "", 1, R"({"y":2})"}};
  for (const auto& r : recs) {
    const auto b = encode_record(r);
    file.append(b.begin(), b.end());
  }
  const auto full = scan_log(as_bytes(file));
  EXPECT_EQ(full.records, recs);
  EXPECT_FALSE(full.torn_tail);
  EXPECT_EQ(full.valid_bytes, file.size());

  for (std::size_t cut = 1; cut < encode_record(recs[1]).size(); ++cut) {
    const auto part = scan_log(as_bytes(std::string_view(file).substr(0, file.size() - cut)));
    EXPECT_EQ(part.records.size(), 1u);
    EXPECT_TRUE(part.torn_tail);
  }
}

TEST(LogFormat, DamageBeforeTheTailIsCorruption) {
  std::string file(kFileMagic);
  for (int i = 1; i <= 3; ++i) {
    const auto b = encode_record({RecordKind::token, "t", static_cast<std::uint64_t>(i), "{}"});
    file.append(b.begin(), b.end());
  }
  file[kFileMagic.size() + 12] ^= 0x40;  // inside the first record's body
  try {
    scan_log(as_bytes(file));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::store_corrupt);
  }
  EXPECT_THROW(scan_log(as_bytes("NOTMAGIC")), Error);
}

// ---- store ---------------------------------------------------------------

StoreOptions fast() {
  StoreOptions o;
  o.sync_writes = false;
  return o;
}

TEST(Store, GetAfterPutAndAbsent) {
  TempDir dir;
  auto s = Store::open(dir.path(), fast());
  EXPECT_FALSE(s->get(RecordKind::listing, "nope"));
  const json payload = {{"b", 2}, {"a", 1}};
  EXPECT_EQ(s->compare_and_swap(RecordKind::listing, "k", 0, payload), 1u);
  const auto r = s->get(RecordKind::listing, "k");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->version, 1u);
  EXPECT_EQ(r->payload, R"({"a":1,"b":2})");  // canonical, key-sorted
  EXPECT_FALSE(s->get(RecordKind::token, "k"));  // kinds are separate namespaces
}

TEST(Store, CasConflictsLeaveStateAlone) {
  TempDir dir;
  auto s = Store::open(dir.path(), fast());
  ASSERT_EQ(s->compare_and_swap(RecordKind::token, "t", 0, json{{"v", 1}}), 1u);
  EXPECT_FALSE(s->compare_and_swap(RecordKind::token, "t", 0, json{{"v", 9}}));
  EXPECT_FALSE(s->compare_and_swap(RecordKind::token, "t", 2, json{{"v", 9}}));
  EXPECT_EQ(s->get(RecordKind::token, "t")->payload, R"({"v":1})");
  EXPECT_EQ(s->compare_and_swap(RecordKind::token, "t", 1, json{{"v", 2}}), 2u);
}

TEST(Store, LedgerSequenceAndReadBack) {
  TempDir dir;
  auto s = Store::open(dir.path(), fast());
  EXPECT_EQ(s->append_ledger(json{{"n", 1}}), 1u);
  EXPECT_EQ(s->append_ledger(json{{"n", 2}}), 2u);
  const auto l = s->ledger();
  ASSERT_EQ(l.size(), 2u);
  EXPECT_EQ(l[1].payload, R"({"n":2})");
  EXPECT_EQ(s->ledger_size(), 2u);
}

TEST(Store, ReopenRestoresEverything) {
  TempDir dir;
  {
    auto s = Store::open(dir.path());
    s->compare_and_swap(RecordKind::listing, "a", 0, json{{"v", 1}});
    s->compare_and_swap(RecordKind::listing, "a", 1, json{{"v", 2}});
    s->compare_and_swap(RecordKind::issuer_entry, "i", 0, json{{"v", 3}});
    s->append_ledger(json{{"e", 1}});
  }
  auto s = Store::open(dir.path());
  EXPECT_EQ(s->get(RecordKind::listing, "a")->version, 2u);
  EXPECT_EQ(s->get(RecordKind::listing, "a")->payload, R"({"v":2})");
  EXPECT_EQ(s->get(RecordKind::issuer_entry, "i")->payload, R"({"v":3})");
  EXPECT_EQ(s->ledger_size(), 1u);
  EXPECT_EQ(s->scan(RecordKind::listing).size(), 1u);
}

TEST(Store, TornTailIsTruncatedAndStoreKeepsWorking) {
  TempDir dir;
  {
    auto s = Store::open(dir.path(), fast());
    s->compare_and_swap(RecordKind::token, "t", 0, json{{"v", 1}});
  }
  const auto log = dir.path() / std::string(Store::kLogFileName);
  const auto good = read_all(log);
  write_all(log, good + std::string("\x30\x00\x00\x00\x01\x02", 6));
  {
    auto s = Store::open(dir.path(), fast());
    EXPECT_EQ(s->get(RecordKind::token, "t")->version, 1u);
    EXPECT_EQ(std::filesystem::file_size(log), good.size());
    EXPECT_EQ(s->compare_and_swap(RecordKind::token, "t", 1, json{{"v", 2}}), 2u);
  }
  EXPECT_EQ(Store::open(dir.path(), fast())->get(RecordKind::token, "t")->version, 2u);
}

TEST(Store, MidFileDamageIsStoreCorrupt) {
  TempDir dir;
  {
    auto s = Store::open(dir.path(), fast());
    for (int i = 0; i < 5; ++i) s->append_ledger(json{{"i", i}});
  }
  const auto log = dir.path() / std::string(Store::kLogFileName);
  auto bytes = read_all(log);
  bytes[kFileMagic.size() + 20] ^= 0x01;
  write_all(log, bytes);
  try {
    Store::open(dir.path(), fast());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::store_corrupt);
  }
}

TEST(Store, CompactionPreservesStateAndVersions) {
  TempDir dir;
  auto opts = fast();
  opts.compact_after_obsolete = 10;
  const auto log = dir.path() / std::string(Store::kLogFileName);
  {
    auto s = Store::open(dir.path(), opts);
    for (std::uint64_t v = 0; v < 50; ++v) {
      ASSERT_EQ(s->compare_and_swap(RecordKind::token, "hot", v, json{{"v", v + 1}}), v + 1);
    }
    s->compare_and_swap(RecordKind::listing, "cold", 0, json{{"c", true}});
    s->append_ledger(json{{"kept", 1}});
    s->compact();
    EXPECT_EQ(s->get(RecordKind::token, "hot")->version, 50u);
    EXPECT_EQ(s->compare_and_swap(RecordKind::token, "hot", 50, json{{"v", 51}}), 51u);
  }
  auto s = Store::open(dir.path(), opts);
  EXPECT_EQ(s->get(RecordKind::token, "hot")->version, 51u);
  EXPECT_EQ(s->get(RecordKind::listing, "cold")->payload, R"({"c":true})");
  EXPECT_EQ(s->ledger_size(), 1u);
  EXPECT_LT(std::filesystem::file_size(log), 2000u);
}

TEST(Store, DeadAfterSimulatedCrash) {
  TempDir dir;
  auto opts = fast();
  opts.write_fault = [](std::size_t n) { return n / 2; };
  auto s = Store::open(dir.path(), opts);
  EXPECT_THROW(s->append_ledger(json{{"x", 1}}), SimulatedCrash);
  EXPECT_THROW(s->append_ledger(json{{"x", 2}}), Error);
  EXPECT_EQ(Store::open(dir.path(), fast())->ledger_size(), 0u);
}

}  // namespace
}  // namespace promptlock::store
