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
#include <pthread.h>
#include <signal.h>
#include <unistd.h>

#include <atomic>
#include <iostream>
#include <thread>

#include "commands.hpp"
#include "promptlock/bridge/http_api.hpp"
#include "promptlock/bridge/service.hpp"
#include "promptlock/error.hpp"
#include "promptlock/escrow/http_api.hpp"
#include "promptlock/escrow/service.hpp"
#include "promptlock/store/store.hpp"

namespace promptlock::cli {
namespace {

std::pair<std::string, int> split_listen(const std::string& listen) {
  const auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) {
    throw Error(Errc::invalid_argument, "listen address must be host:port");
  }
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(listen.substr(colon + 1), &used);
    if (used != listen.size() - colon - 1) port = -1;
  } catch (const std::exception&) {
  }
  if (port < 0 || port > 65535) throw Error(Errc::invalid_argument, "bad port in " + listen);
  return {listen.substr(0, colon), port};
}

sigset_t shutdown_signals() {
  sigset_t set;
  sigemptyset(&set);
  sigaddset(&set, SIGINT);
  sigaddset(&set, SIGTERM);
  return set;
}

// Returns the base URL actually bound. A port already in use is an error,
// so SO_REUSEPORT is left off.
std::string bind(httplib::Server& server, const std::string& listen) {
  auto [host, port] = split_listen(listen);
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  if (port == 0) {
    port = server.bind_to_any_port(host);
    if (port < 0) port = -1;
  } else if (!server.bind_to_port(host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw CliFailure(kExitEnvironment, "BIND_FAILED", "cannot bind " + listen);
  }
  return "http://" + host + ":" + std::to_string(port);
}

// Serves until SIGINT or SIGTERM. The signals are blocked in every thread
// and collected by a dedicated waiter that stops the server.
int run(httplib::Server& server, const std::string& url) {
  std::cout << "listening on " << url << std::endl;

  const sigset_t set = shutdown_signals();
  std::atomic<bool> done{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&set, &sig);
    if (!done) server.stop();
  });
  server.listen_after_bind();
  done = true;
  kill(getpid(), SIGTERM);  // release the waiter if the server stopped on its own
  waiter.join();
  return kExitOk;
}

}  // namespace

int cmd_serve(const CliConfig& cfg, const std::string& component, const std::string& listen) {
  const sigset_t signals = shutdown_signals();
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  auto logger = std::make_shared<Logger>();
  auto provider = mockllm::make_provider(cfg.provider);
  httplib::Server server;

  if (component == "bridge") {
    auto registry = bridge::IssuerRegistry::load(
        require_setting(cfg.issuer_registry_path, "issuer registry file"),
        require_setting(cfg.issuer_secret_path, "issuer secret file"));
    bridge::BridgeOptions opts;
    auto placement = bridge::placement_from_string(cfg.placement);
    if (!placement) throw Error(Errc::invalid_argument, "unknown placement " + cfg.placement);
    opts.placement.placement = *placement;
    opts.placement.delay_user_owner = std::chrono::milliseconds(cfg.delay_user_owner_ms);
    opts.placement.delay_owner_provider = std::chrono::milliseconds(cfg.delay_owner_provider_ms);
    opts.placement.delay_user_provider = std::chrono::milliseconds(cfg.delay_user_provider_ms);
    opts.logger = logger;
    bridge::BridgeService service(registry, provider, opts);
    const auto url = bind(server, listen.empty() ? cfg.bridge_listen : listen);
    bridge::mount_bridge_api(server, service);
    return run(server, url);
  }

  if (component == "escrow") {
    auto store = std::shared_ptr<store::Store>(
        store::Store::open(require_setting(cfg.store_dir, "store directory")));
    const auto url = bind(server, listen.empty() ? cfg.escrow_listen : listen);
    escrow::EscrowOptions opts;
    // Envelopes name this service; default to the address actually bound.
    opts.public_url = cfg.escrow_url.empty() ? url : cfg.escrow_url;
    opts.token_ttl = std::chrono::hours(cfg.token_ttl_hours);
    opts.logger = logger;
    escrow::EscrowService service(store, provider, opts);
    escrow::mount_escrow_api(server, service);
    return run(server, url);
  }

  throw Error(Errc::invalid_argument, "serve takes bridge or escrow");
}

}  // namespace promptlock::cli
