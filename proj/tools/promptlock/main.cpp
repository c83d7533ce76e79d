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

#include <CLI11.hpp>

#include <cstring>
#include <iostream>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "promptlock/error.hpp"

namespace {

using promptlock::Errc;
using namespace promptlock::cli;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::io_error:
      return kExitIo;
    case Errc::parse_error:
    case Errc::version_error:
    case Errc::invalid_preamble:
    case Errc::invalid_user_id:
    case Errc::key_invalid:
    case Errc::key_mismatch:
    case Errc::auth_failure:
    case Errc::negative_delay:
    case Errc::invalid_argument:
    case Errc::description_leaks:
      return kExitValidation;
    case Errc::provider_unavailable:
    case Errc::entropy_failure:
    case Errc::store_corrupt:
      return kExitEnvironment;
    default:
      return kExitProtocol;
  }
}

int report_error(bool json, int code, std::string_view reason, std::string_view message) {
  if (json) {
    const nlohmann::json line = {{"error", reason}, {"exit_code", code}, {"message", message}};
    std::cerr << line.dump() << std::endl;
  } else {
    std::cerr << "promptlock: " << reason << ": " << message << std::endl;
  }
  return code;
}

std::string_view strip_code_prefix(std::string_view what) {
  const auto colon = what.find(": ");
  return colon == std::string_view::npos ? what : what.substr(colon + 2);
}

}  // namespace

int main(int argc, char** argv) {
  bool json_flag = false;
  for (int i = 1; i < argc; ++i) json_flag = json_flag || std::strcmp(argv[i], "--json") == 0;

  CLI::App app{"Sealed task prompts: decryption bridge and key escrow"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_flag("--json", json_flag, "Machine-readable output");

  SealArgs seal;
  auto* c_seal = app.add_subcommand("seal", "Encrypt a task prompt into an armored envelope");
  c_seal->add_option("--task", seal.task_file, "Task prompt file")->required();
  c_seal->add_option("--preamble", seal.preamble_file, "Preamble text file")->required();
  c_seal->add_option("--key-out", seal.key_out, "Where to write the content key")->required();
  c_seal->add_option("--envelope-out", seal.envelope_out, "Where to write the envelope")
      ->required();
  c_seal->add_flag("--register", seal.register_prompt,
                   "Add the prompt to the configured issuer registry");
  c_seal->add_option("--issuer-ref", seal.issuer_ref, "Issuer secret reference");

  UnsealArgs unseal;
  unseal.out_file = "-";
  auto* c_unseal = app.add_subcommand("unseal", "Decrypt an envelope with its content key");
  c_unseal->add_option("--envelope", unseal.envelope_file, "Envelope file")->required();
  c_unseal->add_option("--key", unseal.key_file, "Content key file")->required();
  c_unseal->add_option("--out", unseal.out_file, "Output file (default stdout)");

  IssueKeyArgs issue;
  auto* c_issue = app.add_subcommand("issue-key", "Issue a user key for a content key");
  c_issue->add_option("--user-id", issue.user_id, "Buyer identifier")->required();
  c_issue->add_option("--key", issue.key_file, "Content key file")->required();
  c_issue->add_option("--issuer-ref", issue.issuer_ref, "Issuer secret reference");

  std::string component, listen;
  auto* c_serve = app.add_subcommand("serve", "Run the bridge or escrow service");
  c_serve->add_option("component", component, "bridge or escrow")
      ->required()
      ->check(CLI::IsMember({"bridge", "escrow"}));
  c_serve->add_option("--listen", listen, "host:port (port 0 picks a free port)");

  auto* c_listings = app.add_subcommand("listings", "Manage escrow listings");
  c_listings->require_subcommand(1);
  ListingAddArgs add;
  auto* c_add = c_listings->add_subcommand("add", "Register a task prompt for sale");
  c_add->add_option("--task", add.task_file, "Task prompt file")->required();
  c_add->add_option("--description", add.description, "Artifact description")->required();
  c_add->add_option("--preamble", add.preamble_file, "Preamble text file");
  auto* c_ls = c_listings->add_subcommand("ls", "List prompts for sale");

  BuyArgs buy;
  auto* c_buy = app.add_subcommand("buy", "Purchase a listing and redeem it through the escrow");
  c_buy->add_option("--prompt-id", buy.prompt_id, "Listing to buy")->required();
  c_buy->add_option("--request", buy.request, "Request answered by the prompt");
  c_buy->add_option("--token-out", buy.token_out, "Save the bearer token to this file");
  c_buy->add_option("--envelope-out", buy.envelope_out, "Save the envelope to this file");
  c_buy->add_flag("--no-redeem", buy.no_redeem, "Purchase only");

  RedeemArgs redeem;
  auto* c_redeem = app.add_subcommand("redeem", "Redeem a previously bought token");
  c_redeem->add_option("--token", redeem.token_file, "File holding the bearer token")
      ->required();
  c_redeem->add_option("--request", redeem.request, "Request answered by the prompt");
  c_redeem->add_option("--envelope", redeem.envelope_file, "Envelope file (with --via-bridge)");
  c_redeem->add_flag("--via-bridge", redeem.via_bridge,
                     "Let the bridge fetch the key from the escrow");

  AttackArgs attack;
  auto* c_attack = app.add_subcommand("attack", "Run extraction attacks against a bridge session");
  c_attack->add_option("--session", attack.session_id, "Bridge session id")->required();
  c_attack->add_option("--corpus", attack.corpus_file, "Attack corpus TSV (default built in)");
  c_attack->add_option("--task", attack.task_file, "Task body to check replies against");

  PlacementArgs place;
  auto* c_place = app.add_subcommand("simulate-placement", "Per-message bridge overhead");
  c_place->add_option("--placement", place.placement,
                      "user_side, owner_side, provider_side or all");
  c_place->add_option("--delay-user-owner", place.delay_user_owner, "ms");
  c_place->add_option("--delay-owner-provider", place.delay_owner_provider, "ms");
  c_place->add_option("--delay-user-provider", place.delay_user_provider, "ms");
  c_place->add_option("--messages", place.messages, "Message count")
      ->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(json_flag, kExitValidation, "USAGE", e.what());
  }

  bool json_errors = json_flag;
  try {
    auto cfg = load_config(config_path.empty() ? std::nullopt
                                               : std::optional<std::filesystem::path>(config_path));
    if (json_flag) cfg.output_format = "json";
    json_errors = cfg.json();

    if (c_serve->parsed()) return cmd_serve(cfg, component, listen);

    Outcome out;
    if (c_seal->parsed()) {
      out = cmd_seal(cfg, seal);
    } else if (c_unseal->parsed()) {
      out = cmd_unseal(cfg, unseal);
      if (unseal.out_file == "-") return kExitOk;
    } else if (c_issue->parsed()) {
      out = cmd_issue_key(cfg, issue);
    } else if (c_add->parsed()) {
      out = cmd_listings_add(cfg, add);
    } else if (c_ls->parsed()) {
      out = cmd_listings_ls(cfg);
    } else if (c_buy->parsed()) {
      out = cmd_buy(cfg, buy);
    } else if (c_redeem->parsed()) {
      out = cmd_redeem(cfg, redeem);
    } else if (c_attack->parsed()) {
      out = cmd_attack(cfg, attack);
    } else if (c_place->parsed()) {
      out = cmd_simulate_placement(cfg, place);
    }
    if (cfg.json()) {
      std::cout << out.data.dump() << std::endl;
    } else if (!out.human.empty()) {
      std::cout << out.human << std::endl;
    }
    return kExitOk;
  } catch (const promptlock::Error& e) {
    return report_error(json_errors, exit_code_for(e.code()), promptlock::to_string(e.code()),
                        strip_code_prefix(e.what()));
  } catch (const CliFailure& e) {
    return report_error(json_errors, e.exit_code, e.reason, e.what());
  } catch (const std::exception& e) {
    return report_error(json_errors, kExitEnvironment, "INTERNAL", e.what());
  }
}
