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

#include "crgc/share_format.h"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <string>

#include <boost/crc.hpp>

#include "crgc/error.h"

namespace crgc {
namespace {

constexpr std::uint8_t kMagic[4] = {'C', 'R', 'G', 'C'};

class Writer {
 public:
  void put(std::uint64_t value, int bytes) {
    for (int i = bytes - 1; i >= 0; --i) out_.push_back(std::uint8_t(value >> (8 * i)));
  }
  void symbol(const Field& field, Symbol value) {
    const std::size_t at = out_.size();
    out_.resize(at + field.symbol_width());
    field.write_symbol(value, std::span(out_).subspan(at));
  }
  std::vector<std::uint8_t>& bytes() { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t get(int bytes) {
    need(bytes);
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i) value = (value << 8) | in_[pos_++];
    return value;
  }
  Symbol symbol(const Field& field) {
    need(field.symbol_width());
    auto sym = field.read_symbol(in_.subspan(pos_, field.symbol_width()));
    if (!sym) throw IntegrityError("share contains an invalid field symbol");
    pos_ += field.symbol_width();
    return *sym;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t bytes) const {
    if (remaining() < bytes) throw IntegrityError("share file is truncated");
  }

  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
  boost::crc_32_type crc;
  crc.process_bytes(bytes.data(), bytes.size());
  return crc.checksum();
}

std::vector<std::uint8_t> serialize_share(const NodeShare& share,
                                          const CodeParams& params) {
  const Field& field = *params.field();
  const FieldSpec& spec = field.spec();
  if (share.rows != params.r() ||
      share.symbols.size() != share.stripe_count * share.rows) {
    throw InvalidArgument("share does not match the code parameters");
  }
  Writer w;
  for (auto c : kMagic) w.put(c, 1);
  w.put(kShareFormatVersion, 1);
  w.put(spec.p, 8);
  if (spec.m > 0xFF) throw ParameterError("extension degree does not fit the share header");
  w.put(spec.m, 1);
  if (spec.m > 1) {
    for (unsigned i = spec.m; i-- > 0;) {
      if (spec.irreducible[i] > 0xFF) {
        throw ParameterError("modulus coefficient does not fit the share header");
      }
      w.put(spec.irreducible[i], 1);
    }
  }
  w.put(params.n(), 2);
  w.put(params.k(), 2);
  w.put(params.r(), 2);
  w.put(share.node_index, 2);
  w.put(share.stripe_count, 8);
  w.put(share.original_length, 8);
  for (auto x : params.points()) w.symbol(field, x);
  for (auto sym : share.symbols) w.symbol(field, sym);
  const std::uint32_t checksum = crc32(w.bytes());
  w.put(checksum, 4);
  return std::move(w.bytes());
}

ParsedShare parse_share(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof(kMagic) + 4 ||
      !std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) {
    throw IntegrityError("not a share file (bad magic)");
  }
  const auto body = bytes.first(bytes.size() - 4);
  Reader tail(bytes.last(4));
  if (crc32(body) != tail.get(4)) throw IntegrityError("share CRC mismatch");

  Reader in(body);
  in.get(4);
  if (const auto version = in.get(1); version != kShareFormatVersion) {
    throw IntegrityError("unsupported share format version " + std::to_string(version));
  }
  FieldSpec spec;
  spec.p = in.get(8);
  spec.m = static_cast<unsigned>(in.get(1));
  if (spec.m > 1) {
    spec.irreducible.assign(spec.m, 0);
    for (unsigned i = spec.m; i-- > 0;) spec.irreducible[i] = in.get(1);
  }
  const auto n = static_cast<unsigned>(in.get(2));
  const auto k = static_cast<unsigned>(in.get(2));
  const auto r = static_cast<unsigned>(in.get(2));
  NodeShare share;
  share.node_index = static_cast<NodeIndex>(in.get(2));
  share.rows = r;
  share.stripe_count = in.get(8);
  share.original_length = in.get(8);

  FieldPtr field;
  try {
    field = Field::create(spec);
  } catch (const Error& e) {
    throw IntegrityError(std::string("share header has an invalid field: ") + e.what());
  }
  std::vector<Symbol> points(n);
  for (auto& x : points) x = in.symbol(*field);

  std::optional<CodeParams> params;
  try {
    params = CodeParams::create(n, k, r, field, points);
  } catch (const Error& e) {
    throw IntegrityError(std::string("share header has invalid code parameters: ") + e.what());
  }
  if (share.node_index < 1 || share.node_index > n) {
    throw IntegrityError("share node index out of range");
  }
  const std::size_t width = field->symbol_width();
  if (share.stripe_count > in.remaining() / width / r ||
      share.stripe_count * r * width != in.remaining()) {
    throw IntegrityError("share payload length does not match its header");
  }
  share.symbols.resize(share.stripe_count * r);
  for (auto& sym : share.symbols) sym = in.symbol(*field);
  const std::uint64_t expected =
      (payload_symbol_count(share.original_length, *field) + params->stripe_symbols() - 1) /
      params->stripe_symbols();
  if (expected != share.stripe_count) {
    throw IntegrityError("stripe count does not match the recorded length");
  }
  return {std::move(*params), std::move(share)};
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace crgc
