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

#include <cstddef>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "config.hpp"

namespace promptlock::cli {

// What a command reports: `data` in json mode, `human` otherwise.
struct Outcome {
  nlohmann::json data = nlohmann::json::object();
  std::string human;
};

struct SealArgs {
  std::string task_file;
  std::string preamble_file;
  std::string key_out;
  std::string envelope_out;
  bool register_prompt = false;
  std::string issuer_ref = "default";
};
Outcome cmd_seal(const CliConfig& cfg, const SealArgs& args);

struct UnsealArgs {
  std::string envelope_file;
  std::string key_file;
  std::string out_file;  // "-" writes the body to stdout
};
Outcome cmd_unseal(const CliConfig& cfg, const UnsealArgs& args);

struct IssueKeyArgs {
  std::string user_id;
  std::string key_file;
  std::string issuer_ref = "default";
};
Outcome cmd_issue_key(const CliConfig& cfg, const IssueKeyArgs& args);

struct ListingAddArgs {
  std::string task_file;
  std::string description;
  std::string preamble_file;
};
Outcome cmd_listings_add(const CliConfig& cfg, const ListingAddArgs& args);
Outcome cmd_listings_ls(const CliConfig& cfg);

struct BuyArgs {
  std::string prompt_id;
  std::string request;
  std::string token_out;
  std::string envelope_out;
  bool no_redeem = false;
};
Outcome cmd_buy(const CliConfig& cfg, const BuyArgs& args);

struct RedeemArgs {
  std::string token_file;
  std::string request;
  std::string envelope_file;  // with via_bridge
  bool via_bridge = false;
};
Outcome cmd_redeem(const CliConfig& cfg, const RedeemArgs& args);

struct AttackArgs {
  std::string session_id;
  std::string corpus_file;  // empty: built-in corpus
  std::string task_file;    // optional ground truth
};
Outcome cmd_attack(const CliConfig& cfg, const AttackArgs& args);

struct PlacementArgs {
  std::string placement;  // "all" or one placement
  std::optional<std::int64_t> delay_user_owner;
  std::optional<std::int64_t> delay_owner_provider;
  std::optional<std::int64_t> delay_user_provider;
  std::size_t messages = 1;
};
Outcome cmd_simulate_placement(const CliConfig& cfg, const PlacementArgs& args);

// Blocks until SIGINT/SIGTERM. Returns the process exit code.
int cmd_serve(const CliConfig& cfg, const std::string& component, const std::string& listen);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace promptlock::cli
