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

#include <httplib.h>

#include <nlohmann/json.hpp>

#include "promptlock/error.hpp"
#include "promptlock/http_util.hpp"
#include "promptlock/mockllm/provider.hpp"

namespace promptlock::mockllm {
namespace {

using nlohmann::json;

json behavior_json(const std::vector<sealer::Directive>& behavior) {
  json out = json::array();
  for (const auto& d : behavior) out.push_back({{"name", d.name}, {"value", d.value}});
  return out;
}

std::vector<sealer::Directive> behavior_from_json(const json& j) {
  std::vector<sealer::Directive> out;
  for (const auto& d : j) out.push_back({d.at("name").get<std::string>(), d.at("value").get<std::string>()});
  return out;
}

}  // namespace

AssimilatedContext MockProvider::assimilate(const sealer::TaskPrompt& task) {
  return mockllm::assimilate(task);
}

AssimilatedContext MockProvider::forget(AssimilatedContext ctx) {
  return mockllm::forget(std::move(ctx));
}

LlmExchange MockProvider::query(const AssimilatedContext& ctx, std::string_view request) {
  return mockllm::query(ctx, request);
}

HttpProvider::HttpProvider(std::string endpoint, std::chrono::milliseconds timeout)
    : timeout_(timeout) {
  auto ep = http::parse_endpoint(endpoint);
  origin_ = std::move(ep.origin);
  base_path_ = std::move(ep.base_path);
}

AssimilatedContext HttpProvider::assimilate(const sealer::TaskPrompt& task) {
  return mockllm::assimilate(task);
}

AssimilatedContext HttpProvider::forget(AssimilatedContext ctx) {
  return mockllm::forget(std::move(ctx));
}

std::string HttpProvider::complete(const AssimilatedContext& ctx, std::string_view request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  const json body = {{"behavior", behavior_json(ctx.behavior())}, {"request", request}};
  auto res = client.Post(base_path_ + "/v1/query", body.dump(), "application/json");
  if (!res) {
    throw Error(Errc::provider_unavailable,
                "provider " + origin_ + " unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) throw Error::provider_status(res->status);
  const auto reply = json::parse(res->body, nullptr, false);
  if (!reply.is_object() || !reply.contains("response") || !reply["response"].is_string()) {
    throw Error::provider_status(res->status);
  }
  return reply["response"].get<std::string>();
}

LlmExchange HttpProvider::query(const AssimilatedContext& ctx, std::string_view request) {
  return LlmExchange{std::string(request), complete(ctx, request), ctx.context_id()};
}

std::shared_ptr<LlmProvider> make_provider(std::string_view endpoint) {
  if (endpoint.empty() || endpoint == "mock") return std::make_shared<MockProvider>();
  return std::make_shared<HttpProvider>(std::string(endpoint));
}

void mount_mock_llm_api(httplib::Server& server) {
  server.Post("/v1/query", [](const httplib::Request& req, httplib::Response& res) {
    const auto j = json::parse(req.body, nullptr, false);
    try {
      if (!j.is_object()) throw Error(Errc::parse_error, "body is not a JSON object");
      const auto ctx = context_from_behavior(behavior_from_json(j.at("behavior")));
      const json reply = {{"response", respond(ctx, j.at("request").get<std::string>())}};
      res.set_content(reply.dump(), "application/json");
    } catch (const json::exception& e) {
      const Error err(Errc::parse_error, e.what());
      res.status = 400;
      res.set_content(http::error_body(err), "application/json");
    } catch (const Error& e) {
      res.status = http::status_for(e.code());
      res.set_content(http::error_body(e), "application/json");
    }
  });
}

}  // namespace promptlock::mockllm
