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

#include <httplib.h>

#include "promptlock/bridge/http_api.hpp"
#include "promptlock/bridge/service.hpp"
#include "promptlock/escrow/http_api.hpp"
#include "promptlock/escrow/http_client.hpp"
#include "promptlock/escrow/service.hpp"
#include "promptlock/mockllm/provider.hpp"
#include "support/errors.hpp"
#include "support/temp_dir.hpp"
#include "support/test_server.hpp"

namespace promptlock::escrow {
namespace {

using nlohmann::json;
using testing::code_of;

constexpr std::string_view kBody =
    "@directive style=upper\nPlan a three course dinner menu for a rainy autumn evening "
    "with friends who grow their own vegetables";

class Down final : public mockllm::LlmProvider {
 public:
  mockllm::AssimilatedContext assimilate(const sealer::TaskPrompt&) override {
    throw Error(Errc::provider_unavailable, "backend offline");
  }
  mockllm::AssimilatedContext forget(mockllm::AssimilatedContext ctx) override { return ctx; }
  mockllm::LlmExchange query(const mockllm::AssimilatedContext&, std::string_view) override {
    throw Error(Errc::provider_unavailable, "backend offline");
  }
};

class EscrowHttp : public ::testing::Test {
 protected:
  void start(std::shared_ptr<mockllm::LlmProvider> provider =
                 std::make_shared<mockllm::MockProvider>(),
             EscrowOptions options = {}) {
    store::StoreOptions so;
    so.sync_writes = false;
    store_ = store::Store::open(dir_.path(), so);
    server_.bind();
    options.public_url = server_.url();
    service_ = std::make_unique<EscrowService>(store_, std::move(provider), options);
    mount_escrow_api(server_.server(), *service_);
    server_.run();
  }

  std::string add_listing(EscrowClient& client) {
    return client.add_listing(kBody, "A cosy seasonal menu plan.", "menu")["prompt_id"];
  }

  testing::TempDir dir_;
  std::shared_ptr<store::Store> store_;
  std::unique_ptr<EscrowService> service_;
  testing::TestServer server_;
};

TEST_F(EscrowHttp, ClientFlowVariantA) {
  start();
  EscrowClient client(server_.url());
  const auto prompt_id = add_listing(client);
  const auto listings = client.listings();
  ASSERT_EQ(listings.size(), 1u);
  EXPECT_EQ(listings[0]["key_version"], 1);
  EXPECT_FALSE(listings[0].contains("current_key"));

  const auto p = client.purchase(prompt_id);
  EXPECT_EQ(p.token["state"], "issued");
  EXPECT_EQ(client.token_status(p.token_id)["state"], "issued");
  const auto key = client.redeem_key(p.token_id);
  EXPECT_EQ(sealer::unseal(sealer::parse_sealed(p.envelope), key).body(), kBody);
  EXPECT_EQ(client.token_status(p.token_id)["state"], "redeemed");
  EXPECT_EQ(code_of([&] { client.redeem_key(p.token_id); }), Errc::token_already_redeemed);
}

TEST_F(EscrowHttp, ClientFlowVariantB) {
  start();
  EscrowClient client(server_.url());
  const auto prompt_id = add_listing(client);
  const auto p = client.purchase(prompt_id);
  EXPECT_EQ(client.redeem_full(p.token_id, "bon appetit"), "BON APPETIT");
  EXPECT_EQ(code_of([&] { client.redeem_full(p.token_id, "x"); }), Errc::token_already_redeemed);
  EXPECT_EQ(client.listings()[0]["key_version"], 2);
}

TEST_F(EscrowHttp, StaleTokenCarriesReplacement) {
  start();
  EscrowClient client(server_.url());
  const auto prompt_id = add_listing(client);
  const auto a = client.purchase(prompt_id);
  const auto b = client.purchase(prompt_id);
  client.redeem_key(a.token_id);
  try {
    client.redeem_key(b.token_id);
    FAIL() << "expected a stale token";
  } catch (const Error& e) {
    ASSERT_EQ(e.code(), Errc::key_version_stale);
    const auto d = json::parse(e.details());
    const std::string fresh = d["token"]["token_id"];
    const auto key = client.redeem_key(fresh);
    EXPECT_EQ(sealer::unseal(sealer::parse_sealed(d["envelope"].get<std::string>()), key).body(),
              kBody);
  }
}

TEST_F(EscrowHttp, StatusCodes) {
  start(std::make_shared<Down>());
  EscrowClient client(server_.url());
  const auto prompt_id = add_listing(client);
  httplib::Client c("127.0.0.1", server_.port());
  auto post = [&](const std::string& path, const json& body) {
    return c.Post(path, body.dump(), "application/json");
  };

  EXPECT_EQ(post("/v1/listings/" + PromptId::random().str() + "/purchase", {})->status, 404);
  EXPECT_EQ(post("/v1/listings/bogus/purchase", {})->status, 404);
  EXPECT_EQ(c.Get("/v1/tokens/" + TokenId::random().str())->status, 404);
  EXPECT_EQ(post("/v1/redeem/key", {{"token", "bogus"}})->status, 404);
  EXPECT_EQ(post("/v1/redeem/key", {{"nothing", 1}})->status, 400);
  EXPECT_EQ(post("/v1/listings", {{"task", kBody}, {"description", kBody}})->status, 422);

  const auto p = client.purchase(prompt_id);
  auto down = post("/v1/redeem/full", {{"token", p.token_id}, {"request", "x"}});
  EXPECT_EQ(down->status, 502);
  EXPECT_EQ(json::parse(down->body)["error"], "PROVIDER_UNAVAILABLE");
  EXPECT_EQ(client.token_status(p.token_id)["state"], "issued");

  EXPECT_EQ(post("/v1/redeem/key", {{"token", p.token_id}})->status, 200);
  EXPECT_EQ(post("/v1/redeem/key", {{"token", p.token_id}})->status, 409);

  const auto stale = client.purchase(prompt_id);
  service_->rotate_key(PromptId::parse(prompt_id));
  EXPECT_EQ(post("/v1/redeem/key", {{"token", stale.token_id}})->status, 409);

  const auto revoked = client.purchase(prompt_id);
  client.revoke(revoked.token_id);
  EXPECT_EQ(post("/v1/redeem/key", {{"token", revoked.token_id}})->status, 403);
  EXPECT_EQ(client.token_status(revoked.token_id)["state"], "revoked");
}

TEST_F(EscrowHttp, ExpiredIs410) {
  auto clock = std::make_shared<Clock::time_point>(Clock::now());
  EscrowOptions options;
  options.now = [clock] { return *clock; };
  start(std::make_shared<mockllm::MockProvider>(), options);
  EscrowClient client(server_.url());
  const auto p = client.purchase(add_listing(client));
  *clock += std::chrono::hours(24 * 31);
  EXPECT_EQ(client.token_status(p.token_id)["state"], "expired");
  httplib::Client c("127.0.0.1", server_.port());
  EXPECT_EQ(c.Post("/v1/redeem/key", json{{"token", p.token_id}}.dump(), "application/json")->status,
            410);
}

// The bridge fetches the key from the escrow named in the envelope, over HTTP.
TEST_F(EscrowHttp, BridgeRedeemsThroughEscrowLocator) {
  RouteRecorder recorder;
  EscrowOptions options;
  options.routes = recorder.observer();
  start(std::make_shared<mockllm::MockProvider>(), options);
  EscrowClient escrow(server_.url());
  const auto p = escrow.purchase(add_listing(escrow));

  bridge::BridgeOptions bo;
  bo.routes = recorder.observer();
  bridge::BridgeService bridge_service(std::make_shared<bridge::IssuerRegistry>(),
                                       std::make_shared<mockllm::MockProvider>(), bo);
  testing::TestServer bridge_server;
  bridge::mount_bridge_api(bridge_server.server(), bridge_service);
  bridge_server.start();

  bridge::BridgeClient client(bridge_server.url());
  const auto [session, reply] = client.open_escrow_session(p.envelope, p.token_id, "serve it");
  EXPECT_EQ(reply.response, "SERVE IT");
  EXPECT_EQ(client.chat(session, "dessert").response, "DESSERT");
  EXPECT_EQ(escrow.token_status(p.token_id)["state"], "redeemed");
  EXPECT_EQ(code_of([&] { client.open_escrow_session(p.envelope, p.token_id, "again"); }),
            Errc::token_already_redeemed);

  std::vector<int> steps;
  for (const auto& e : recorder.events()) steps.push_back(static_cast<int>(e.step));
  // The failed second attempt adds 3 and 4 before the escrow refuses.
  EXPECT_EQ(steps, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 3, 4}));
}

}  // namespace
}  // namespace promptlock::escrow
