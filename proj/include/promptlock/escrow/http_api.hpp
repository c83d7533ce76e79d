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

#include "promptlock/escrow/service.hpp"

namespace httplib {
class Server;
}

namespace promptlock::escrow {

// GET  /v1/listings                  -> 200 {"listings":[{prompt_id, description, key_version, created_at}]}
// POST /v1/listings                  {"task","description","preamble"} -> 201 listing
// POST /v1/listings/{id}/purchase    -> 200 {"envelope", "token": {...}}
// POST /v1/redeem/key                {"token"} -> 200 {"key": <base64url>}
// POST /v1/redeem/full               {"token","request"} -> 200 {"artifact"}
// GET  /v1/tokens/{id}               -> 200 {"token_id","state","prompt_id","bound_key_version"}
// POST /v1/tokens/{id}/revoke        -> 200 {"state":"revoked"}
// GET  /v1/health                    -> 200 {"status":"ok"}
void mount_escrow_api(httplib::Server& server, EscrowService& service);

}  // namespace promptlock::escrow
