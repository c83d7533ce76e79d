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

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>

namespace promptlock {

// Line-oriented logger with a pluggable sink. Services never log prompt
// plaintext; tests install a capturing sink and scan it.
class Logger {
 public:
  enum class Level { debug, info, warn, error };
  using Sink = std::function<void(std::string_view line)>;

  Logger();  // stderr, Level::info
  Logger(Sink sink, Level min_level);

  void log(Level level, std::string_view component, std::string_view message) const;
  void debug(std::string_view component, std::string_view message) const {
    log(Level::debug, component, message);
  }
  void info(std::string_view component, std::string_view message) const {
    log(Level::info, component, message);
  }
  void warn(std::string_view component, std::string_view message) const {
    log(Level::warn, component, message);
  }
  void error(std::string_view component, std::string_view message) const {
    log(Level::error, component, message);
  }

  static std::shared_ptr<Logger> null();

 private:
  Sink sink_;
  Level min_level_;
  std::shared_ptr<std::mutex> mu_;
};

// Accumulates every line in memory; used by leak scans in tests.
class CapturingSink {
 public:
  Logger::Sink sink();
  std::string contents() const;

 private:
  mutable std::mutex mu_;
  std::string buffer_;
};

}  // namespace promptlock
