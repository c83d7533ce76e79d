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

#include "promptlock/log.hpp"

#include <chrono>
#include <cstdio>

namespace promptlock {
namespace {

std::string_view level_name(Logger::Level level) {
  switch (level) {
    case Logger::Level::debug: return "DEBUG";
    case Logger::Level::info: return "INFO";
    case Logger::Level::warn: return "WARN";
    case Logger::Level::error: return "ERROR";
  }
  return "?";
}

}  // namespace

Logger::Logger()
    : Logger([](std::string_view line) {
        std::fwrite(line.data(), 1, line.size(), stderr);
        std::fputc('\n', stderr);
      },
      Level::info) {}

Logger::Logger(Sink sink, Level min_level)
    : sink_(std::move(sink)), min_level_(min_level), mu_(std::make_shared<std::mutex>()) {}

void Logger::log(Level level, std::string_view component, std::string_view message) const {
  if (!sink_ || level < min_level_) return;
  const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  std::string line;
  line.reserve(message.size() + component.size() + 32);
  line += std::to_string(now);
  line += ' ';
  line += level_name(level);
  line += " [";
  line += component;
  line += "] ";
  line += message;
  std::lock_guard lock(*mu_);
  sink_(line);
}

std::shared_ptr<Logger> Logger::null() {
  static auto instance = std::make_shared<Logger>(Sink{}, Level::error);
  return instance;
}

Logger::Sink CapturingSink::sink() {
  return [this](std::string_view line) {
    std::lock_guard lock(mu_);
    buffer_.append(line);
    buffer_ += '\n';
  };
}

std::string CapturingSink::contents() const {
  std::lock_guard lock(mu_);
  return buffer_;
}

}  // namespace promptlock
