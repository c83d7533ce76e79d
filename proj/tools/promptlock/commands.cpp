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

#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "promptlock/bridge/http_api.hpp"
#include "promptlock/bridge/placement.hpp"
#include "promptlock/bridge/registry.hpp"
#include "promptlock/error.hpp"
#include "promptlock/escrow/http_client.hpp"
#include "promptlock/mockllm/attack.hpp"
#include "promptlock/ngram.hpp"
#include "promptlock/sealer/envelope.hpp"
#include "promptlock/sealer/user_key.hpp"

namespace promptlock::cli {
namespace {

using nlohmann::json;

std::string trim(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && s[i] == ' ') ++i;
  return s.substr(i);
}

std::string strip_trailing_newlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

sealer::ContentKey read_key_file(const std::string& path) {
  return sealer::ContentKey::from_text(trim(read_file(path)));
}

Bytes issuer_secret(const CliConfig& cfg, const std::string& ref) {
  const auto path = require_setting(cfg.issuer_secret_path, "issuer secret file");
  auto secrets = bridge::IssuerRegistry::load_secrets(path);
  auto it = secrets.find(ref);
  if (it == secrets.end()) {
    throw Error(Errc::invalid_argument, "issuer secret '" + ref + "' not in " + path.string());
  }
  return it->second;
}

}  // namespace

std::string read_file(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  if (path == "-") {
    std::cout.write(content.data(), static_cast<std::streamsize>(content.size()));
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::io_error, "short write to " + path);
}

Outcome cmd_seal(const CliConfig& cfg, const SealArgs& args) {
  sealer::TaskPrompt task(read_file(args.task_file));
  const auto preamble = strip_trailing_newlines(read_file(args.preamble_file));
  std::filesystem::path registry_path;
  if (args.register_prompt) {
    registry_path = require_setting(cfg.issuer_registry_path, "issuer registry file");
  }
  const auto key = sealer::generate_content_key();
  const auto env = sealer::seal(task, key, preamble);
  task.wipe();
  write_file(args.key_out, key.to_text() + "\n");
  write_file(args.envelope_out, env.serialize());
  if (args.register_prompt) {
    auto reg = bridge::IssuerRegistry::load_entries(registry_path);
    reg->upsert({env.header.prompt_id, args.issuer_ref, {}});
    reg->save_entries(registry_path);
  }
  Outcome o;
  o.data = {{"prompt_id", env.header.prompt_id.str()},
            {"key_id", key.key_id.str()},
            {"registered", args.register_prompt}};
  o.human = env.header.prompt_id.str();
  return o;
}

Outcome cmd_unseal(const CliConfig&, const UnsealArgs& args) {
  const auto env = sealer::parse_sealed(read_file(args.envelope_file));
  const auto key = read_key_file(args.key_file);
  auto task = sealer::unseal(env, key);
  write_file(args.out_file, task.body());
  Outcome o;
  o.data = {{"prompt_id", env.header.prompt_id.str()}, {"bytes", task.body().size()}};
  task.wipe();
  return o;
}

Outcome cmd_issue_key(const CliConfig& cfg, const IssueKeyArgs& args) {
  if (!sealer::is_valid_user_id(args.user_id)) {
    throw Error(Errc::invalid_user_id, "user id must be 1-64 printable ASCII characters");
  }
  const auto key = read_key_file(args.key_file);
  const auto secret = issuer_secret(cfg, args.issuer_ref);
  const auto token = sealer::encode_user_key(args.user_id, key, secret);
  Outcome o;
  o.data = {{"user_id", args.user_id}, {"user_key", token}};
  o.human = token;
  return o;
}

Outcome cmd_listings_add(const CliConfig& cfg, const ListingAddArgs& args) {
  const auto body = read_file(args.task_file);
  const auto preamble =
      args.preamble_file.empty() ? std::string() : strip_trailing_newlines(read_file(args.preamble_file));
  escrow::EscrowClient client(cfg.escrow_url);
  Outcome o;
  o.data = client.add_listing(body, args.description, preamble);
  o.human = o.data.at("prompt_id").get<std::string>();
  return o;
}

Outcome cmd_listings_ls(const CliConfig& cfg) {
  escrow::EscrowClient client(cfg.escrow_url);
  Outcome o;
  o.data = {{"listings", client.listings()}};
  for (const auto& l : o.data["listings"]) {
    o.human += l.at("prompt_id").get<std::string>() + "  v" +
               std::to_string(l.at("key_version").get<std::uint64_t>()) + "  " +
               l.at("description").get<std::string>() + "\n";
  }
  if (!o.human.empty()) o.human.pop_back();
  return o;
}

Outcome cmd_buy(const CliConfig& cfg, const BuyArgs& args) {
  escrow::EscrowClient client(cfg.escrow_url);
  const auto p = client.purchase(args.prompt_id);
  if (!args.token_out.empty()) write_file(args.token_out, p.token_id + "\n");
  if (!args.envelope_out.empty()) write_file(args.envelope_out, p.envelope);
  Outcome o;
  if (args.no_redeem) {
    o.data = {{"prompt_id", args.prompt_id}, {"token_state", "issued"}};
    o.human = "token state: issued";
    return o;
  }
  const auto artifact = client.redeem_full(p.token_id, args.request);
  const auto state = client.token_status(p.token_id).at("state").get<std::string>();
  o.data = {{"artifact", artifact}, {"token_state", state}};
  o.human = artifact + "\ntoken state: " + state;
  return o;
}

Outcome cmd_redeem(const CliConfig& cfg, const RedeemArgs& args) {
  const auto token = trim(read_file(args.token_file));
  Outcome o;
  if (args.via_bridge) {
    if (args.envelope_file.empty()) {
      throw Error(Errc::invalid_argument, "--via-bridge needs --envelope");
    }
    bridge::BridgeClient client(cfg.bridge_url);
    auto [session, reply] =
        client.open_escrow_session(read_file(args.envelope_file), token, args.request);
    o.data = {{"artifact", reply.response}, {"redacted", reply.redacted}, {"session_id", session}};
    o.human = reply.response + "\nsession: " + session;
    return o;
  }
  escrow::EscrowClient client(cfg.escrow_url);
  const auto artifact = client.redeem_full(token, args.request);
  const auto state = client.token_status(token).at("state").get<std::string>();
  o.data = {{"artifact", artifact}, {"token_state", state}};
  o.human = artifact + "\ntoken state: " + state;
  return o;
}

Outcome cmd_attack(const CliConfig& cfg, const AttackArgs& args) {
  const auto corpus = args.corpus_file.empty() ? mockllm::builtin_attack_corpus()
                                               : mockllm::load_attack_corpus(args.corpus_file);
  const auto truth = args.task_file.empty() ? std::string() : read_file(args.task_file);
  bridge::BridgeClient client(cfg.bridge_url);
  std::size_t redacted = 0, disclosed = 0;
  json leaking = json::array();
  for (const auto& q : corpus) {
    const auto reply = client.chat(args.session_id, q.query_text);
    const bool leak = !truth.empty() && ngram::shares_window(reply.response, truth);
    if (reply.redacted) ++redacted;
    if (leak) ++disclosed;
    if (reply.redacted || leak) leaking.push_back(q.query_text);
  }
  Outcome o;
  o.data = {{"attempts", corpus.size()},
            {"leaks", redacted + disclosed},
            {"redacted", redacted},
            {"leaking_queries", leaking}};
  o.human = "attempts: " + std::to_string(corpus.size()) +
            "\nleaks: " + std::to_string(redacted + disclosed) +
            "\nredacted: " + std::to_string(redacted);
  return o;
}

Outcome cmd_simulate_placement(const CliConfig& cfg, const PlacementArgs& args) {
  using std::chrono::milliseconds;
  bridge::PlacementConfig pc;
  pc.delay_user_owner = milliseconds(args.delay_user_owner.value_or(cfg.delay_user_owner_ms));
  pc.delay_owner_provider =
      milliseconds(args.delay_owner_provider.value_or(cfg.delay_owner_provider_ms));
  pc.delay_user_provider =
      milliseconds(args.delay_user_provider.value_or(cfg.delay_user_provider_ms));
  const std::string which = args.placement.empty() ? cfg.placement : args.placement;
  std::vector<bridge::Placement> targets;
  if (which == "all") {
    targets = {bridge::Placement::user_side, bridge::Placement::owner_side,
               bridge::Placement::provider_side};
  } else if (auto p = bridge::placement_from_string(which)) {
    targets = {*p};
  } else {
    throw Error(Errc::invalid_argument, "unknown placement " + which);
  }
  Outcome o;
  json rows = json::array();
  for (auto p : targets) {
    pc.placement = p;
    const auto r = bridge::simulate_placement(pc, args.messages);
    rows.push_back({{"placement", bridge::to_string(p)},
                    {"per_message_ms", r.per_message.count()},
                    {"total_ms", r.total.count()}});
    o.human += std::string(bridge::to_string(p)) + ": " + std::to_string(r.per_message.count()) +
               " ms/message, " + std::to_string(r.total.count()) + " ms total\n";
  }
  o.human.pop_back();
  o.data = {{"messages", args.messages}, {"placements", rows}};
  return o;
}

}  // namespace promptlock::cli
