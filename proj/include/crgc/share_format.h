// Copyright 2026 The CRGC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "crgc/mscr.h"

namespace crgc {

// Self-describing share file, all integers big-endian:
//
//   "CRGC" | version u8 = 1 | p u64 | m u8 | modulus coefficients (m bytes,
//   x^{m-1} first; absent when m = 1) | n u16 | k u16 | r u16 |
//   node_index u16 | stripe_count u64 | original_length u64 |
//   evaluation points (n symbols) | payload (stripe-major, each stripe's
//   r symbols in row order) | CRC-32 of everything before it (u32)
//
// Symbols use the field serialization of Field::write_symbol.
inline constexpr std::uint8_t kShareFormatVersion = 1;

std::uint32_t crc32(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize_share(const NodeShare& share,
                                          const CodeParams& params);

struct ParsedShare {
  CodeParams params;
  NodeShare share;
};

// Throws IntegrityError on a bad magic, version, CRC, or inconsistent header.
ParsedShare parse_share(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace crgc
