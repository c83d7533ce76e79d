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

#include <nlohmann/json.hpp>
#include <set>

#include "promptlock/bytes.hpp"
#include "promptlock/crc32c.hpp"
#include "promptlock/crypto.hpp"
#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"
#include "promptlock/log.hpp"
#include "promptlock/ngram.hpp"
#include "promptlock/opaque_id.hpp"
#include "support/gen.hpp"

namespace promptlock {
namespace {

using testing::Gen;

// ---- base64url -----------------------------------------------------------

TEST(Base64Url, Rfc4648Vectors) {
  EXPECT_EQ(base64url_encode(as_bytes("")), "");
  EXPECT_EQ(base64url_encode(as_bytes("f")), "Zg");
  EXPECT_EQ(base64url_encode(as_bytes("fo")), "Zm8");
  EXPECT_EQ(base64url_encode(as_bytes("foo")), "Zm9v");
  EXPECT_EQ(base64url_encode(as_bytes("foob")), "Zm9vYg");
  EXPECT_EQ(base64url_encode(as_bytes("fooba")), "Zm9vYmE");
  EXPECT_EQ(base64url_encode(as_bytes("foobar")), "Zm9vYmFy");
  const Bytes hi = {0xfb, 0xff, 0xbf};
  EXPECT_EQ(base64url_encode(hi), "-_-_");
}

TEST(Base64Url, RoundTripProperty) {
  Gen g(11);
  for (int i = 0; i < 2000; ++i) {
    const auto s = g.bytes(g.uniform(0, 80));
    EXPECT_EQ(to_string(base64url_decode(base64url_encode(as_bytes(s)))), s);
  }
}

TEST(Base64Url, RejectsNonCanonicalInput) {
  EXPECT_THROW(base64url_decode("Zg=="), Error);
  EXPECT_THROW(base64url_decode("Zh"), Error);     // nonzero unused bits
  EXPECT_THROW(base64url_decode("Z"), Error);      // impossible length
  EXPECT_THROW(base64url_decode("Zm9v+A"), Error); // standard alphabet
  EXPECT_THROW(base64url_decode("Zm 9v"), Error);
  try {
    base64url_decode("Zm9v*A");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse_error);
    ASSERT_TRUE(e.offset().has_value());
    EXPECT_EQ(*e.offset(), 4u);
  }
}

TEST(Base64Url, EveryByteStringHasOneEncoding) {
  // Flipping any character of a valid encoding either changes the decoded
  // bytes or is rejected; it never decodes to the same bytes.
  Gen g(12);
  const std::string alphabet =
      "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
  for (int i = 0; i < 200; ++i) {
    const auto raw = g.bytes(g.uniform(1, 20));
    const auto enc = base64url_encode(as_bytes(raw));
    for (std::size_t pos = 0; pos < enc.size(); ++pos) {
      for (char c : alphabet) {
        if (c == enc[pos]) continue;
        auto mutated = enc;
        mutated[pos] = c;
        try {
          EXPECT_NE(to_string(base64url_decode(mutated)), raw);
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::parse_error);
        }
      }
    }
  }
}

TEST(Hex, Encodes) { EXPECT_EQ(hex_encode(Bytes{0x00, 0xab, 0x10}), "00ab10"); }

// ---- CRC-32C -------------------------------------------------------------

// Frozen from tests/oracles/crc32c_vector.py (bitwise reflected reference).
TEST(Crc32c, MatchesBitwiseReference) {
  EXPECT_EQ(crc32c(as_bytes("")), 0x00000000u);
  EXPECT_EQ(crc32c(as_bytes("123456789")), 0xe3069283u);
  EXPECT_EQ(crc32c(Bytes(32, 0x00)), 0x8a9136aau);
  EXPECT_EQ(crc32c(Bytes(32, 0xff)), 0x62a8ab43u);
  Bytes ramp(256);
  for (int i = 0; i < 256; ++i) ramp[i] = static_cast<std::uint8_t>(i);
  EXPECT_EQ(crc32c(ramp), 0x9c44184bu);
}

TEST(Crc32c, ScalarAndHardwareKernelsAgree) {
  if (!crc32c_kernels::hardware_available()) {
    GTEST_SKIP() << "no hardware CRC32 on this CPU";
  }
  Gen g(13);
  const auto buffer = g.bytes(4096 + 16);
  const auto* base = reinterpret_cast<const std::uint8_t*>(buffer.data());
  for (int i = 0; i < 3000; ++i) {
    const auto offset = g.uniform(0, 15);  // unaligned starts
    const auto len = g.uniform(0, 4096);
    const ByteView view(base + offset, len);
    const auto seed = static_cast<std::uint32_t>(g.uniform(0, 0xffffffffu));
    ASSERT_EQ(crc32c_kernels::scalar(view, seed), crc32c_kernels::hardware(view, seed))
        << "offset " << offset << " len " << len;
  }
}

TEST(Crc32c, DispatchNamesAKernel) {
  const std::set<std::string_view> names = {"scalar", "sse4.2", "armv8-crc"};
  EXPECT_TRUE(names.contains(crc32c_kernels::selected()));
}

TEST(Crc32c, IncrementalEqualsOneShot) {
  Gen g(14);
  for (int i = 0; i < 500; ++i) {
    const auto s = g.bytes(g.uniform(0, 300));
    const auto cut = g.uniform(0, s.size());
    const auto v = as_bytes(s);
    EXPECT_EQ(crc32c(v.subspan(cut), crc32c(v.first(cut))), crc32c(v));
  }
}

// ---- crypto --------------------------------------------------------------

TEST(Crypto, HmacSha256Rfc4231Case1) {
  const Bytes key(20, 0x0b);
  const auto mac = crypto::hmac_sha256(key, as_bytes("Hi There"));
  EXPECT_EQ(hex_encode(mac), "b0344c61d8db38535ca8afceaf0bf12b881dc200c9833da726e9376c2e32cff7");
}

TEST(Crypto, HmacSha256Rfc4231Case2) {
  const auto mac = crypto::hmac_sha256(as_bytes("Jefe"), as_bytes("what do ya want for nothing?"));
  EXPECT_EQ(hex_encode(mac), "5bdcc146bf60754e6a042426089575c75a003f089d2739839dec58b964ec3843");
}

TEST(Crypto, AeadRoundTripAndTamper) {
  const auto key = crypto::random_array<crypto::kAeadKeyBytes>();
  const auto nonce = crypto::random_array<crypto::kAeadNonceBytes>();
  const auto ct = crypto::aead_seal(as_bytes("secret text"), as_bytes("ad"), nonce, key);
  ASSERT_EQ(ct.size(), 11 + crypto::kAeadTagBytes);
  auto pt = crypto::aead_open(ct, as_bytes("ad"), nonce, key);
  ASSERT_TRUE(pt);
  EXPECT_EQ(to_string(*pt), "secret text");
  EXPECT_FALSE(crypto::aead_open(ct, as_bytes("AD"), nonce, key));
  for (std::size_t i = 0; i < ct.size(); ++i) {
    auto bad = ct;
    bad[i] ^= 0x01;
    EXPECT_FALSE(crypto::aead_open(bad, as_bytes("ad"), nonce, key)) << i;
  }
}

TEST(Crypto, OpenCounterCountsEveryAttempt) {
  const auto key = crypto::random_array<crypto::kAeadKeyBytes>();
  const auto nonce = crypto::random_array<crypto::kAeadNonceBytes>();
  const auto before = crypto::aead_open_count();
  crypto::aead_open(Bytes(16, 0), {}, nonce, key);
  crypto::aead_open(Bytes(3, 0), {}, nonce, key);
  EXPECT_EQ(crypto::aead_open_count(), before + 2);
}

TEST(Crypto, ConstantTimeEqual) {
  EXPECT_TRUE(crypto::constant_time_equal(as_bytes("abc"), as_bytes("abc")));
  EXPECT_FALSE(crypto::constant_time_equal(as_bytes("abc"), as_bytes("abd")));
  EXPECT_FALSE(crypto::constant_time_equal(as_bytes("abc"), as_bytes("ab")));
}

TEST(Crypto, SecureZeroClearsString) {
  std::string s = "sensitive";
  crypto::secure_zero(s);
  EXPECT_EQ(s.find_first_not_of('\0'), std::string::npos);
}

TEST(Crypto, ShortHashIsKeyed) {
  crypto::ShortHashKey a{}, b{};
  b[0] = 1;
  EXPECT_NE(crypto::short_hash(as_bytes("x"), a), crypto::short_hash(as_bytes("x"), b));
  EXPECT_EQ(crypto::short_hash(as_bytes("x"), a), crypto::short_hash(as_bytes("x"), a));
}

// ---- n-grams -------------------------------------------------------------

TEST(Ngram, WordsFoldCaseAndSplitOnPunctuation) {
  EXPECT_EQ(ngram::words("Hello, WORLD! it's 42"),
            (std::vector<std::string>{"hello", "world", "it", "s", "42"}));
  EXPECT_EQ(ngram::words("caf\xc3\xa9 au-lait"),
            (std::vector<std::string>{"caf\xc3\xa9", "au", "lait"}));
  EXPECT_TRUE(ngram::words(" \n\t--").empty());
}

TEST(Ngram, Windows) {
  EXPECT_EQ(ngram::windows("a b c d e f"),
            (std::vector<std::string>{"a b c d e", "b c d e f"}));
  EXPECT_TRUE(ngram::windows("a b c d").empty());
}

// Brute-force oracle: compare every pair of windows word by word.
bool brute_shares(std::string_view a, std::string_view b, std::size_t n) {
  const auto wa = ngram::words(a), wb = ngram::words(b);
  if (wa.size() < n || wb.size() < n) return false;
  for (std::size_t i = 0; i + n <= wa.size(); ++i) {
    for (std::size_t j = 0; j + n <= wb.size(); ++j) {
      bool eq = true;
      for (std::size_t k = 0; eq && k < n; ++k) eq = wa[i + k] == wb[j + k];
      if (eq) return true;
    }
  }
  return false;
}

TEST(Ngram, SharesWindowMatchesBruteForce) {
  Gen g(21);
  const char* vocab[] = {"alpha", "Beta", "gamma", "delta", "eps"};
  for (int i = 0; i < 3000; ++i) {
    auto text = [&] {
      std::string s;
      for (auto n = g.uniform(0, 12); n > 0; --n) {
        s += vocab[g.uniform(0, 4)];
        s += g.coin() ? " " : ", ";
      }
      return s;
    };
    const auto a = text(), b = text();
    const auto n = g.uniform(1, 5);
    ASSERT_EQ(ngram::shares_window(a, b, n), brute_shares(a, b, n)) << a << " | " << b;
  }
}

TEST(Ngram, ExactlyOneSharedWindowIsFound) {
  const std::string body = "the quick brown fox jumps over the lazy dog today";
  const std::string reply = "unrelated words then brown fox jumps over the and more";
  ASSERT_TRUE(brute_shares(body, reply, 5));
  EXPECT_TRUE(ngram::shares_window(body, reply));
  EXPECT_FALSE(ngram::shares_window(body, "brown fox jumps over"));
}

TEST(Ngram, FingerprintAgreesWithSharesWindow) {
  Gen g(22);
  for (int i = 0; i < 300; ++i) {
    const auto body = g.prose(30);
    const auto fp = ngram::Fingerprint::of(body);
    const auto words = ngram::words(body);
    // A slice of the body, embedded in fresh text, of 3..8 words.
    const auto len = g.uniform(3, 8);
    const auto start = g.uniform(0, words.size() - len);
    std::string slice;
    for (std::size_t k = 0; k < len; ++k) slice += words[start + k] + " ";
    const auto candidate = g.prose(5) + " " + slice + g.prose(5);
    EXPECT_EQ(fp.matches(candidate), ngram::shares_window(body, candidate)) << candidate;
  }
}

TEST(Ngram, FingerprintDumpHoldsNoPlaintext) {
  const std::string body = "seven distinct words appear in this body text here";
  const auto fp = ngram::Fingerprint::of(body);
  EXPECT_EQ(fp.size(), ngram::windows(body).size());
  std::string dumped;
  for (const auto& h : fp.dump()) dumped += h + " ";
  for (const auto& w : ngram::words(body)) {
    if (w.size() > 3) {
      EXPECT_EQ(dumped.find(w), std::string::npos) << w;
    }
  }
  auto copy = fp;
  copy.clear();
  EXPECT_TRUE(copy.empty());
  EXPECT_FALSE(copy.matches(body));
}

// ---- ids, errors, http helpers ------------------------------------------

TEST(OpaqueId, RoundTripsAndRejectsWrongLength) {
  const auto id = PromptId::random();
  EXPECT_EQ(id.str().size(), 22u);
  EXPECT_EQ(PromptId::parse(id.str()), id);
  EXPECT_THROW(PromptId::parse("AAAA"), Error);
  EXPECT_NE(PromptId::random(), PromptId::random());
}

TEST(Errc, NamesRoundTrip) {
  for (int i = 0; i <= static_cast<int>(Errc::entropy_failure); ++i) {
    const auto code = static_cast<Errc>(i);
    const auto name = to_string(code);
    EXPECT_EQ(errc_from_string(name), code) << name;
  }
  EXPECT_EQ(to_string(Errc::token_already_redeemed), "TOKEN_ALREADY_REDEEMED");
  EXPECT_FALSE(errc_from_string("NOPE"));
}

TEST(Http, StatusMapping) {
  EXPECT_EQ(http::status_for(Errc::parse_error), 400);
  EXPECT_EQ(http::status_for(Errc::key_invalid), 401);
  EXPECT_EQ(http::status_for(Errc::session_not_ready), 409);
  EXPECT_EQ(http::status_for(Errc::provider_unavailable), 502);
  EXPECT_EQ(http::status_for(Errc::unknown_prompt), 404);
  EXPECT_EQ(http::status_for(Errc::token_unknown), 404);
  EXPECT_EQ(http::status_for(Errc::token_already_redeemed), 409);
  EXPECT_EQ(http::status_for(Errc::key_version_stale), 409);
  EXPECT_EQ(http::status_for(Errc::token_expired), 410);
  EXPECT_EQ(http::status_for(Errc::token_revoked), 403);
}

TEST(Http, RemoteErrorRoundTrip) {
  const auto original =
      Error(Errc::key_version_stale, "token is stale").with_details(R"({"token":"x"})");
  try {
    http::throw_remote_error(409, http::error_body(original));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::key_version_stale);
    EXPECT_EQ(std::string(e.what()), "KEY_VERSION_STALE: token is stale");
    EXPECT_EQ(nlohmann::json::parse(e.details())["token"], "x");
  }
  try {
    http::throw_remote_error(503, "<html>busy</html>");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::provider_error);
    EXPECT_EQ(e.upstream_status(), 503);
  }
}

TEST(Http, ParseEndpoint) {
  auto ep = http::parse_endpoint("http://127.0.0.1:9000/api/");
  EXPECT_EQ(ep.origin, "http://127.0.0.1:9000");
  EXPECT_EQ(ep.base_path, "/api");
  EXPECT_EQ(http::parse_endpoint("http://host").base_path, "");
  EXPECT_THROW(http::parse_endpoint("ftp://host"), Error);
}

TEST(Http, GuardMapsExceptions) {
  EXPECT_FALSE(http::guard([] {}));
  auto f = http::guard([] { throw Error(Errc::unknown_session, "gone"); });
  ASSERT_TRUE(f);
  EXPECT_EQ(f->status, 404);
  EXPECT_EQ(nlohmann::json::parse(f->body)["error"], "UNKNOWN_SESSION");
  f = http::guard([] { (void)nlohmann::json::parse("{").at("x"); });
  ASSERT_TRUE(f);
  EXPECT_EQ(f->status, 400);
}

TEST(Logger, CapturingSinkCollectsLines) {
  CapturingSink sink;
  Logger log(sink.sink(), Logger::Level::info);
  log.debug("t", "hidden");
  log.info("t", "shown");
  EXPECT_EQ(sink.contents().find("hidden"), std::string::npos);
  EXPECT_NE(sink.contents().find("shown"), std::string::npos);
}

}  // namespace
}  // namespace promptlock
