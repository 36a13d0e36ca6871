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

#include "crgc/mscr.h"

#include <algorithm>
#include <set>
#include <string>

#include "crgc/error.h"

namespace crgc {

FieldMode parse_field_mode(std::string_view text) {
  if (text == "auto") return FieldMode::kAuto;
  if (text == "gf256") return FieldMode::kGf256;
  if (text == "gf65536") return FieldMode::kGf65536;
  throw InvalidArgument("unknown field mode '" + std::string(text) + "'");
}

std::string_view to_string(FieldMode mode) {
  switch (mode) {
    case FieldMode::kAuto:
      return "auto";
    case FieldMode::kGf256:
      return "gf256";
    case FieldMode::kGf65536:
      return "gf65536";
  }
  return "?";
}

CodeParams CodeParams::create(unsigned n, unsigned k, unsigned r, FieldMode mode) {
  if (n < 2) throw ParameterError("need at least two nodes");
  FieldSpec spec;
  switch (mode) {
    case FieldMode::kAuto:
      spec = smallest_prime_power_geq(n);
      break;
    case FieldMode::kGf256:
      spec = make_field_spec(2, 8);
      break;
    case FieldMode::kGf65536:
      spec = make_field_spec(2, 16);
      break;
  }
  return create(n, k, k, r, Field::create(std::move(spec)));
}

CodeParams CodeParams::create(unsigned n, unsigned k, unsigned r, FieldPtr field,
                              std::vector<Symbol> points) {
  return create(n, k, k, r, std::move(field), std::move(points));
}

CodeParams CodeParams::create(unsigned n, unsigned k, unsigned d, unsigned r,
                              FieldPtr field, std::vector<Symbol> points) {
  if (!field) throw InvalidArgument("code parameters need a field");
  if (k < 1) throw ParameterError("k must be at least 1");
  if (r < 1) throw ParameterError("r must be at least 1");
  if (d != k) throw ParameterError("the construction requires d == k");
  if (n > 0xFFFF) throw ParameterError("n must fit in 16 bits");
  if (k + r > n) {
    throw ParameterError("need k <= n - r (n=" + std::to_string(n) +
                         ", k=" + std::to_string(k) + ", r=" + std::to_string(r) + ")");
  }
  if (field->order() < n) {
    throw ParameterError("field " + field->spec().to_string() + " has fewer than n elements");
  }
  if (points.empty()) {
    for (Symbol x = 0; x < n; ++x) points.push_back(x);
  }
  if (points.size() != n) throw ParameterError("need exactly n evaluation points");
  std::set<Symbol> seen;
  for (auto x : points) {
    if (!field->contains(x)) throw ParameterError("evaluation point outside the field");
    if (!seen.insert(x).second) throw ParameterError("evaluation points must be distinct");
  }
  CodeParams params;
  params.n_ = n;
  params.k_ = k;
  params.r_ = r;
  params.field_ = std::move(field);
  params.points_ = std::move(points);
  params.generator_ = std::make_shared<const Matrix>(
      vandermonde(params.field_, k, params.points_));
  return params;
}

std::vector<Symbol> CodeParams::generator_column(NodeIndex node) const {
  if (node < 1 || node > n_) throw InvalidArgument("node index out of range");
  return generator_->column(node - 1);
}

bool CodeParams::same_code(const CodeParams& other) const {
  return n_ == other.n_ && k_ == other.k_ && r_ == other.r_ &&
         field_->spec() == other.field_->spec() && points_ == other.points_;
}

std::uint64_t payload_symbol_count(std::uint64_t bytes, const Field& field) {
  const std::uint64_t w = field.symbol_width();
  return (bytes + w - 1) / w;
}

StripedFile stripe(std::span<const std::uint8_t> payload, const CodeParams& params,
                   ByteMapping mapping) {
  const Field& field = *params.field();
  const std::size_t width = field.symbol_width();
  const std::uint64_t count = payload_symbol_count(payload.size(), field);
  const std::uint64_t per_stripe = params.stripe_symbols();
  const std::uint64_t stripes = (count + per_stripe - 1) / per_stripe;

  StripedFile out;
  out.original_length = payload.size();
  out.padding = stripes * per_stripe - count;
  out.stripes.reserve(stripes);

  std::vector<std::uint8_t> group(width);
  std::uint64_t index = 0;
  for (std::uint64_t s = 0; s < stripes; ++s) {
    Matrix m(params.field(), params.r(), params.k());
    for (unsigned i = 0; i < params.r(); ++i) {
      for (unsigned j = 0; j < params.k(); ++j, ++index) {
        if (index >= count) continue;  // zero padding
        const std::size_t offset = index * width;
        std::fill(group.begin(), group.end(), 0);
        const std::size_t avail = std::min(width, payload.size() - offset);
        std::copy_n(payload.begin() + offset, avail, group.begin());
        Symbol value;
        if (auto sym = field.read_symbol(group)) {
          value = *sym;
        } else if (mapping == ByteMapping::kLossy) {
          unsigned __int128 raw = 0;
          for (auto b : group) raw = (raw << 8) | b;
          value = static_cast<Symbol>(raw % field.order());
        } else {
          throw InvalidArgument("bytes at offset " + std::to_string(offset) +
                                " are not an element of " + field.spec().to_string() +
                                "; use a byte-aligned field mode");
        }
        m.set(i, j, value);
      }
    }
    out.stripes.push_back(std::move(m));
  }
  return out;
}

std::vector<std::uint8_t> unstripe(const StripedFile& file, const CodeParams& params) {
  const Field& field = *params.field();
  const std::size_t width = field.symbol_width();
  std::vector<std::uint8_t> bytes(file.stripes.size() * params.stripe_symbols() * width);
  std::size_t offset = 0;
  for (const auto& m : file.stripes) {
    for (auto sym : m.data()) {
      field.write_symbol(sym, std::span(bytes).subspan(offset, width));
      offset += width;
    }
  }
  if (file.original_length > bytes.size()) {
    throw IntegrityError("recorded length exceeds the decoded data");
  }
  bytes.resize(file.original_length);
  return bytes;
}

std::vector<NodeShare> encode(const StripedFile& file, const CodeParams& params) {
  std::vector<NodeShare> shares(params.n());
  for (NodeIndex j = 1; j <= params.n(); ++j) {
    auto& share = shares[j - 1];
    share.node_index = j;
    share.rows = params.r();
    share.stripe_count = file.stripes.size();
    share.original_length = file.original_length;
    share.symbols.reserve(file.stripes.size() * params.r());
  }
  for (const auto& m : file.stripes) {
    if (m.rows() != params.r() || m.cols() != params.k()) {
      throw DimensionMismatch("message matrix must be r x k");
    }
    const Matrix coded = mat_mul(m, params.generator());
    for (NodeIndex j = 1; j <= params.n(); ++j) {
      for (unsigned i = 0; i < params.r(); ++i) {
        shares[j - 1].symbols.push_back(coded(i, j - 1));
      }
    }
  }
  return shares;
}

StripedFile reconstruct(std::span<const NodeShare> shares, const CodeParams& params) {
  if (shares.size() < params.k()) {
    throw InsufficientNodes("reconstruction needs " + std::to_string(params.k()) +
                            " shares, got " + std::to_string(shares.size()));
  }
  if (shares.size() > params.k()) {
    throw InvalidArgument("reconstruction takes exactly k shares");
  }
  std::set<NodeIndex> seen;
  std::vector<std::size_t> columns;
  for (const auto& share : shares) {
    if (share.node_index < 1 || share.node_index > params.n()) {
      throw IntegrityError("share node index out of range");
    }
    if (!seen.insert(share.node_index).second) {
      throw InvalidArgument("duplicate share for node " + std::to_string(share.node_index));
    }
    if (share.rows != params.r() ||
        share.stripe_count != shares.front().stripe_count ||
        share.original_length != shares.front().original_length ||
        share.symbols.size() != share.stripe_count * share.rows) {
      throw IntegrityError("share headers are inconsistent");
    }
    columns.push_back(share.node_index - 1);
  }
  const auto& first = shares.front();
  const std::uint64_t symbols = payload_symbol_count(first.original_length, *params.field());
  const std::uint64_t per_stripe = params.stripe_symbols();
  if ((symbols + per_stripe - 1) / per_stripe != first.stripe_count) {
    throw IntegrityError("stripe count does not match the recorded length");
  }

  const Matrix decoder = invert(params.generator().select_columns(columns));
  StripedFile out;
  out.original_length = first.original_length;
  out.padding = first.stripe_count * per_stripe - symbols;
  out.stripes.reserve(first.stripe_count);
  for (std::uint64_t s = 0; s < first.stripe_count; ++s) {
    Matrix received(params.field(), params.r(), params.k());
    for (unsigned i = 0; i < params.r(); ++i) {
      for (unsigned c = 0; c < params.k(); ++c) received.set(i, c, shares[c].at(s, i));
    }
    out.stripes.push_back(mat_mul(received, decoder));
  }
  return out;
}

std::vector<std::uint8_t> decode_payload(std::span<const NodeShare> shares,
                                         const CodeParams& params) {
  return unstripe(reconstruct(shares, params), params);
}

}  // namespace crgc
