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

#include "promptlock/http_util.hpp"

#include <nlohmann/json.hpp>

namespace promptlock::http {

Endpoint parse_endpoint(std::string_view url) {
  constexpr std::string_view kScheme = "http://";
  if (!url.starts_with(kScheme) || url.size() == kScheme.size()) {
    throw Error(Errc::invalid_argument, "endpoint must be an http:// URL: " + std::string(url));
  }
  const auto slash = url.find('/', kScheme.size());
  Endpoint ep;
  ep.origin = std::string(url.substr(0, slash));
  if (slash != std::string_view::npos) {
    auto path = url.substr(slash);
    while (!path.empty() && path.back() == '/') path.remove_suffix(1);
    ep.base_path = std::string(path);
  }
  return ep;
}

int status_for(Errc code) noexcept {
  switch (code) {
    case Errc::parse_error:
    case Errc::version_error:
    case Errc::invalid_preamble:
    case Errc::invalid_user_id:
    case Errc::invalid_argument:
    case Errc::negative_delay:
      return 400;
    case Errc::key_invalid:
      return 401;
    case Errc::key_mismatch:
    case Errc::auth_failure:
    case Errc::token_revoked:
      return 403;
    case Errc::unknown_session:
    case Errc::unknown_prompt:
    case Errc::token_unknown:
      return 404;
    case Errc::session_not_ready:
    case Errc::token_already_redeemed:
    case Errc::key_version_stale:
    case Errc::conflict:
      return 409;
    case Errc::token_expired:
      return 410;
    case Errc::description_leaks:
      return 422;
    case Errc::provider_unavailable:
    case Errc::provider_error:
      return 502;
    case Errc::store_corrupt:
    case Errc::io_error:
    case Errc::entropy_failure:
      return 500;
  }
  return 500;
}

std::string error_body(const Error& e) {
  nlohmann::json j = {{"error", to_string(e.code())}, {"message", e.what()}};
  if (e.code() == Errc::provider_error) j["upstream_status"] = e.upstream_status();
  if (!e.details().empty()) {
    j["details"] = nlohmann::json::parse(e.details(), nullptr, false);
  }
  return j.dump();
}

void throw_remote_error(int status, std::string_view body) {
  const auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_object() && j.contains("error") && j["error"].is_string()) {
    if (auto code = errc_from_string(j["error"].get<std::string>())) {
      std::string message = j.value("message", std::string("remote error"));
      const std::string prefix = std::string(to_string(*code)) + ": ";
      if (message.starts_with(prefix)) message.erase(0, prefix.size());
      if (*code == Errc::provider_error) {
        throw Error::provider_status(j.value("upstream_status", status));
      }
      Error e(*code, message);
      if (j.contains("details")) e.with_details(j["details"].dump());
      throw e;
    }
  }
  throw Error::provider_status(status);
}

std::optional<Failure> guard(const std::function<void()>& handler) {
  try {
    handler();
    return std::nullopt;
  } catch (const Error& e) {
    return Failure{status_for(e.code()), error_body(e)};
  } catch (const nlohmann::json::exception& e) {
    return Failure{400, error_body(Error(Errc::parse_error, e.what()))};
  } catch (const std::exception& e) {
    return Failure{500, error_body(Error(Errc::io_error, e.what()))};
  }
}

}  // namespace promptlock::http
