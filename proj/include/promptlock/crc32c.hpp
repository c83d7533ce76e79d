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

#include <cstdint>
#include <string_view>

#include "promptlock/bytes.hpp"

namespace promptlock {

// CRC-32C (Castagnoli). `crc` is the running value returned by a previous
// call, so a buffer may be checksummed in pieces.
std::uint32_t crc32c(ByteView data, std::uint32_t crc = 0) noexcept;

namespace crc32c_kernels {

// Table-driven slicing-by-8 reference. Always available.
std::uint32_t scalar(ByteView data, std::uint32_t crc) noexcept;

// Hardware CRC32 instructions (SSE4.2 on x86-64, CRC extension on
// AArch64). Only call when hardware_available() is true.
std::uint32_t hardware(ByteView data, std::uint32_t crc) noexcept;
bool hardware_available() noexcept;

// Name of the kernel crc32c() dispatches to: "scalar", "sse4.2", "armv8-crc".
std::string_view selected() noexcept;

}  // namespace crc32c_kernels
}  // namespace promptlock
