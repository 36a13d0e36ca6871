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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "crgc/galois.h"
#include "crgc/matrix.h"

namespace crgc {

// Storage node identifier, 1-based as in [1, n].
using NodeIndex = unsigned;

enum class FieldMode {
  kAuto,     // smallest prime power >= n
  kGf256,    // GF(2^8): one byte per symbol
  kGf65536,  // GF(2^16): two bytes per symbol
};

FieldMode parse_field_mode(std::string_view text);
std::string_view to_string(FieldMode mode);

// How payload bytes become symbols when a byte group is not a valid element.
enum class ByteMapping {
  kStrict,  // reject the payload
  kLossy,   // reduce the group's integer value mod q (simulation payloads only)
};

// Parameters of the cooperative minimum-storage code: n nodes, any k
// reconstruct, each of r newcomers downloads from d = k helpers. Every node
// stores r symbols per stripe.
class CodeParams {
 public:
  // Field chosen by `mode`; evaluation points are the first n elements.
  static CodeParams create(unsigned n, unsigned k, unsigned r,
                           FieldMode mode = FieldMode::kAuto);
  // Explicit field; empty `points` selects the first n field elements.
  static CodeParams create(unsigned n, unsigned k, unsigned r, FieldPtr field,
                           std::vector<Symbol> points = {});
  // Same, with d given explicitly; rejected unless d == k.
  static CodeParams create(unsigned n, unsigned k, unsigned d, unsigned r,
                           FieldPtr field, std::vector<Symbol> points = {});

  unsigned n() const { return n_; }
  unsigned k() const { return k_; }
  unsigned d() const { return k_; }
  unsigned r() const { return r_; }
  const FieldPtr& field() const { return field_; }
  std::span<const Symbol> points() const { return points_; }

  // Symbols per stripe (k * r).
  std::size_t stripe_symbols() const { return std::size_t{k_} * r_; }

  // k x n Vandermonde generator; column j-1 belongs to node j.
  const Matrix& generator() const { return *generator_; }
  std::vector<Symbol> generator_column(NodeIndex node) const;

  // Same n, k, r, field and evaluation points.
  bool same_code(const CodeParams& other) const;

 private:
  CodeParams() = default;

  unsigned n_ = 0;
  unsigned k_ = 0;
  unsigned r_ = 0;
  FieldPtr field_;
  std::vector<Symbol> points_;
  std::shared_ptr<const Matrix> generator_;
};

// A payload cut into r x k message matrices, zero-padded to whole stripes.
struct StripedFile {
  std::vector<Matrix> stripes;
  std::uint64_t original_length = 0;  // bytes
  std::uint64_t padding = 0;          // zero symbols appended to the last stripe
};

// Per-node stored data. symbols[s * rows + i] is m_i^T g_j of stripe s.
struct NodeShare {
  NodeIndex node_index = 0;
  unsigned rows = 0;
  std::uint64_t stripe_count = 0;
  std::uint64_t original_length = 0;
  std::vector<Symbol> symbols;

  Symbol at(std::uint64_t stripe, unsigned row) const {
    return symbols[stripe * rows + row];
  }
  friend bool operator==(const NodeShare&, const NodeShare&) = default;
};

// Number of symbols a payload of `bytes` bytes occupies before padding.
std::uint64_t payload_symbol_count(std::uint64_t bytes, const Field& field);

StripedFile stripe(std::span<const std::uint8_t> payload, const CodeParams& params,
                   ByteMapping mapping = ByteMapping::kStrict);

// Inverse of stripe() for strictly mapped payloads.
std::vector<std::uint8_t> unstripe(const StripedFile& file, const CodeParams& params);

// Node j receives column j of M G for every stripe M.
std::vector<NodeShare> encode(const StripedFile& file, const CodeParams& params);

// Recovers every stripe from exactly k shares with distinct node indices.
StripedFile reconstruct(std::span<const NodeShare> shares, const CodeParams& params);

// reconstruct() followed by unstripe().
std::vector<std::uint8_t> decode_payload(std::span<const NodeShare> shares,
                                         const CodeParams& params);

}  // namespace crgc
