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

#include <chrono>
#include <string>
#include <string_view>

#include "promptlock/bridge/service.hpp"

namespace httplib {
class Server;
}

namespace promptlock::bridge {

// POST   /v1/session            {"envelope","user_key"}
//                               or {"envelope","bearer_token","request"}
//                               -> 201 {"session_id", "state"[, "response", "redacted"]}
// POST   /v1/session/{id}/chat  text body -> 200 {"response","redacted"}
// DELETE /v1/session/{id}       -> 200 {"closed": true}
// GET    /v1/health             -> 200 {"status":"ok"}
void mount_bridge_api(httplib::Server& server, BridgeService& service);

struct ChatReply {
  std::string response;
  bool redacted = false;
};

// Client for the routes above. Remote errors come back as promptlock::Error
// with the service's code; an unreachable bridge is provider_unavailable.
class BridgeClient {
 public:
  explicit BridgeClient(std::string base_url,
                        std::chrono::milliseconds timeout = std::chrono::seconds(10));

  std::string open_session(std::string_view envelope, std::string_view user_key);
  std::pair<std::string, ChatReply> open_escrow_session(std::string_view envelope,
                                                        std::string_view bearer_token,
                                                        std::string_view request);
  ChatReply chat(std::string_view session_id, std::string_view request);
  void close(std::string_view session_id);

 private:
  std::string origin_;
  std::string base_path_;
  std::chrono::milliseconds timeout_;
};

}  // namespace promptlock::bridge
