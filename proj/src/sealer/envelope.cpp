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

#include "promptlock/sealer/envelope.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <vector>

#include "promptlock/error.hpp"

namespace promptlock::sealer {
namespace {

using nlohmann::json;

constexpr std::string_view kBeginPrefix = "-----BEGIN PROTECTED PROMPT v";
constexpr std::string_view kDashes = "-----";
constexpr std::string_view kCoreLine = "-----CORE-----";
constexpr std::string_view kEndLine = "-----END PROTECTED PROMPT-----";
constexpr std::size_t kMaxLocatorLength = 2048;

json header_object(const EnvelopeHeader& h) {
  json j = json::object();
  j["version"] = h.version;
  j["prompt_id"] = h.prompt_id.str();
  j["key_id"] = h.key_id.str();
  if (h.escrow_locator) j["escrow_locator"] = *h.escrow_locator;
  return j;
}

void check_preamble(std::string_view preamble) {
  if (!is_printable_ascii(preamble, /*allow_newline=*/true)) {
    throw Error(Errc::invalid_preamble, "preamble must be printable ASCII");
  }
  std::size_t start = 0;
  while (start <= preamble.size()) {
    auto end = preamble.find('\n', start);
    if (end == std::string_view::npos) end = preamble.size();
    if (preamble.substr(start, end - start).starts_with(kDashes)) {
      throw Error(Errc::invalid_preamble, "preamble line may not start with '-----'");
    }
    start = end + 1;
  }
}

void check_locator(std::string_view locator) {
  if (locator.empty() || locator.size() > kMaxLocatorLength ||
      !is_printable_ascii(locator, false) ||
      locator.find(' ') != std::string_view::npos) {
    throw Error(Errc::invalid_argument, "escrow locator must be URL-shaped ASCII");
  }
}

// Cursor over newline-terminated lines, tracking byte offsets for errors.
class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool at_end() const { return pos_ == text_.size(); }
  std::size_t offset() const { return pos_; }

  std::string_view next() {
    if (at_end()) throw Error(Errc::parse_error, "unexpected end of envelope", pos_);
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) {
      throw Error(Errc::parse_error, "line is not newline-terminated", text_.size());
    }
    auto line = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return line;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

int parse_armor_version(std::string_view line, std::size_t offset) {
  if (!line.starts_with(kBeginPrefix) || !line.ends_with(kDashes) ||
      line.size() <= kBeginPrefix.size() + kDashes.size()) {
    throw Error(Errc::parse_error, "missing BEGIN line", offset);
  }
  auto digits = line.substr(kBeginPrefix.size(),
                            line.size() - kBeginPrefix.size() - kDashes.size());
  if (digits.size() > 6 || digits.front() == '0') {
    throw Error(Errc::parse_error, "malformed armor version", offset + kBeginPrefix.size());
  }
  int v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') {
      throw Error(Errc::parse_error, "malformed armor version", offset + kBeginPrefix.size());
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

// Length of the JSON object at the front of `core`, honouring strings.
std::size_t header_extent(ByteView core, std::size_t core_offset) {
  if (core.empty() || core[0] != '{') {
    throw Error(Errc::parse_error, "core does not start with a header", core_offset);
  }
  int depth = 0;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = 0; i < core.size(); ++i) {
    const char c = static_cast<char>(core[i]);
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}') {
      if (--depth == 0) return i + 1;
    }
  }
  throw Error(Errc::parse_error, "unterminated header", core_offset);
}

EnvelopeHeader parse_header(std::string_view text, std::size_t core_offset) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    throw Error(Errc::parse_error, "header is not valid JSON", core_offset);
  }
  if (!j.is_object()) throw Error(Errc::parse_error, "header is not an object", core_offset);
  EnvelopeHeader h;
  std::size_t seen = 0;
  try {
    const auto& version = j.at("version");
    if (!version.is_number_integer()) throw Error(Errc::parse_error, "bad version", core_offset);
    h.version = version.get<int>();
    h.prompt_id = PromptId::parse(j.at("prompt_id").get<std::string>());
    h.key_id = KeyId::parse(j.at("key_id").get<std::string>());
    seen = 3;
    if (auto it = j.find("escrow_locator"); it != j.end()) {
      h.escrow_locator = it->get<std::string>();
      check_locator(*h.escrow_locator);
      ++seen;
    }
  } catch (const json::exception&) {
    throw Error(Errc::parse_error, "header fields are malformed", core_offset);
  } catch (const Error&) {
    throw Error(Errc::parse_error, "header fields are malformed", core_offset);
  }
  if (j.size() != seen) throw Error(Errc::parse_error, "unknown header field", core_offset);
  if (h.canonical_json() != text) {
    throw Error(Errc::parse_error, "header is not in canonical form", core_offset);
  }
  return h;
}

}  // namespace

bool is_printable_ascii(std::string_view text, bool allow_newline) noexcept {
  return std::all_of(text.begin(), text.end(), [&](char ch) {
    const auto c = static_cast<unsigned char>(ch);
    return (c >= 0x20 && c <= 0x7E) || (allow_newline && c == '\n');
  });
}

std::string ContentKey::to_text() const {
  Bytes raw(key_id.bytes().begin(), key_id.bytes().end());
  raw.insert(raw.end(), key_bytes.begin(), key_bytes.end());
  auto text = base64url_encode(raw);
  crypto::secure_zero(raw);
  return text;
}

ContentKey ContentKey::from_text(std::string_view text) {
  Bytes raw = base64url_decode(text);
  if (raw.size() != KeyId::kBytes + crypto::kAeadKeyBytes) {
    crypto::secure_zero(raw);
    throw Error(Errc::parse_error, "content key must encode 48 bytes");
  }
  KeyId::Storage id;
  std::copy_n(raw.begin(), id.size(), id.begin());
  ContentKey k{KeyId(id), {}};
  std::copy_n(raw.begin() + id.size(), k.key_bytes.size(), k.key_bytes.begin());
  crypto::secure_zero(raw);
  return k;
}

ContentKey generate_content_key() {
  return ContentKey{KeyId::random(), crypto::random_array<crypto::kAeadKeyBytes>()};
}

std::string EnvelopeHeader::canonical_json() const { return header_object(*this).dump(); }

std::string SealedPrompt::associated_data() const {
  json j = json::object();
  j["header"] = header_object(header);
  j["preamble"] = preamble;
  return j.dump();
}

std::string SealedPrompt::serialize() const {
  const std::string header_json = header.canonical_json();
  Bytes core(header_json.begin(), header_json.end());
  core.insert(core.end(), nonce.begin(), nonce.end());
  core.insert(core.end(), ciphertext_and_tag.begin(), ciphertext_and_tag.end());
  const std::string b64 = base64url_encode(core);

  std::string out;
  out.reserve(b64.size() + b64.size() / kArmorColumns + preamble.size() + 128);
  out += kBeginPrefix;
  out += std::to_string(header.version);
  out += kDashes;
  out += '\n';
  if (!preamble.empty()) {
    out += preamble;
    out += '\n';
  }
  out += kCoreLine;
  out += '\n';
  for (std::size_t i = 0; i < b64.size(); i += kArmorColumns) {
    out += std::string_view(b64).substr(i, kArmorColumns);
    out += '\n';
  }
  out += kEndLine;
  out += '\n';
  return out;
}

SealedPrompt seal(const TaskPrompt& task, const ContentKey& key,
                  std::string_view preamble, std::optional<std::string> escrow_locator,
                  const SealOptions& options) {
  check_preamble(preamble);
  if (escrow_locator) check_locator(*escrow_locator);

  SealedPrompt env;
  env.preamble = std::string(preamble);
  env.header.version = kEnvelopeVersion;
  env.header.prompt_id = options.prompt_id.value_or(PromptId::random());
  env.header.key_id = key.key_id;
  env.header.escrow_locator = std::move(escrow_locator);
  env.nonce = options.nonce.value_or(crypto::random_array<crypto::kAeadNonceBytes>());

  std::string plaintext = task.serialize();
  env.ciphertext_and_tag =
      crypto::aead_seal(as_bytes(plaintext), as_bytes(env.associated_data()), env.nonce,
                        key.key_bytes);
  crypto::secure_zero(plaintext);
  return env;
}

SealedPrompt parse_sealed(std::string_view armored) {
  for (std::size_t i = 0; i < armored.size(); ++i) {
    const auto c = static_cast<unsigned char>(armored[i]);
    if (!((c >= 0x20 && c <= 0x7E) || c == '\n')) {
      throw Error(Errc::parse_error, "envelope contains a non-printable byte", i);
    }
  }

  LineReader reader(armored);
  const int armor_version = parse_armor_version(reader.next(), 0);

  std::vector<std::string_view> preamble_lines;
  for (;;) {
    const auto at = reader.offset();
    const auto line = reader.next();
    if (line == kCoreLine) break;
    if (line.starts_with(kDashes)) throw Error(Errc::parse_error, "expected CORE line", at);
    preamble_lines.push_back(line);
  }

  const std::size_t core_offset = reader.offset();
  std::string b64;
  std::size_t last_len = kArmorColumns;
  for (;;) {
    const auto at = reader.offset();
    const auto line = reader.next();
    if (line == kEndLine) break;
    if (last_len != kArmorColumns) {
      throw Error(Errc::parse_error, "short core line before the last", at);
    }
    if (line.empty() || line.size() > kArmorColumns) {
      throw Error(Errc::parse_error, "core line has wrong width", at);
    }
    b64 += line;
    last_len = line.size();
  }
  if (b64.empty()) throw Error(Errc::parse_error, "empty core", core_offset);
  if (!reader.at_end()) {
    throw Error(Errc::parse_error, "trailing data after END line", reader.offset());
  }

  SealedPrompt env;
  for (std::size_t i = 0; i < preamble_lines.size(); ++i) {
    if (i) env.preamble += '\n';
    env.preamble += preamble_lines[i];
  }

  try {
    Bytes core;
    try {
      core = base64url_decode(b64);
    } catch (const Error&) {
      throw Error(Errc::parse_error, "core is not canonical base64url", core_offset);
    }
    const std::size_t header_len = header_extent(core, core_offset);
    env.header = parse_header(
        std::string_view(reinterpret_cast<const char*>(core.data()), header_len), core_offset);
    if (core.size() < header_len + crypto::kAeadNonceBytes + crypto::kAeadTagBytes) {
      throw Error(Errc::parse_error, "core too short for nonce and tag", core_offset);
    }
    std::copy_n(core.begin() + header_len, env.nonce.size(), env.nonce.begin());
    env.ciphertext_and_tag.assign(core.begin() + header_len + env.nonce.size(), core.end());
  } catch (const Error&) {
    if (armor_version != kEnvelopeVersion) {
      throw Error(Errc::version_error,
                  "unsupported envelope version " + std::to_string(armor_version));
    }
    throw;
  }

  if (env.header.version != armor_version) {
    throw Error(Errc::parse_error, "armor and header versions disagree", core_offset);
  }
  if (armor_version != kEnvelopeVersion) {
    throw Error(Errc::version_error,
                "unsupported envelope version " + std::to_string(armor_version));
  }
  return env;
}

TaskPrompt unseal(const SealedPrompt& envelope, const ContentKey& key) {
  auto plaintext = crypto::aead_open(envelope.ciphertext_and_tag,
                                     as_bytes(envelope.associated_data()), envelope.nonce,
                                     key.key_bytes);
  if (!plaintext) throw Error(Errc::auth_failure, "envelope failed authentication");
  std::string text = to_string(*plaintext);
  crypto::secure_zero(*plaintext);
  try {
    auto task = TaskPrompt::deserialize(text);
    crypto::secure_zero(text);
    return task;
  } catch (...) {
    crypto::secure_zero(text);
    throw;
  }
}

}  // namespace promptlock::sealer
