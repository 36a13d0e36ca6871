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
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace crgc {

// An element of GF(q) in canonical index form: the coefficient vector
// (c_0, ..., c_{m-1}) of its polynomial representative read as the base-p
// integer sum c_i p^i. For prime fields this is the residue itself.
using Symbol = std::uint64_t;

// Describes GF(p^m). `irreducible` holds the m non-leading coefficients
// (c_0, ..., c_{m-1}) of the monic modulus x^m + c_{m-1}x^{m-1} + ... + c_0;
// it is empty for prime fields.
struct FieldSpec {
  std::uint64_t p = 2;
  unsigned m = 1;
  std::vector<std::uint64_t> irreducible;

  std::uint64_t order() const;
  std::string to_string() const;

  friend auto operator<=>(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t x);

// Returns (p, m) with p^m == q, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decomposition(
    std::uint64_t q);

// True when the monic polynomial with the given non-leading coefficients has
// no monic factor of degree 1..m/2 over GF(p). Trial division.
bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> coeffs);

// GF(p^m) with the lexicographically smallest monic irreducible modulus
// (coefficients compared from x^{m-1} down to x^0).
FieldSpec make_field_spec(std::uint64_t p, unsigned m);

// Field of the smallest prime power q >= n. Throws ParameterError when no
// such q fits in 64 bits and InvalidArgument when n < 2.
FieldSpec smallest_prime_power_geq(std::uint64_t n);

// Arithmetic context for one field. Immutable after construction; share it
// through std::shared_ptr<const Field>.
class Field {
 public:
  // Validates the spec (p prime, modulus irreducible, q < 2^64). When
  // `use_tables` is set and q <= 2^16, multiplication and inversion run
  // through log/antilog tables; results are identical to the reference path.
  static std::shared_ptr<const Field> create(FieldSpec spec,
                                             bool use_tables = true);

  const FieldSpec& spec() const { return spec_; }
  std::uint64_t p() const { return spec_.p; }
  unsigned m() const { return spec_.m; }
  std::uint64_t order() const { return q_; }
  bool has_tables() const { return !exp_.empty(); }

  bool contains(Symbol a) const { return a < q_; }

  Symbol add(Symbol a, Symbol b) const;
  Symbol sub(Symbol a, Symbol b) const;
  Symbol neg(Symbol a) const;
  Symbol mul(Symbol a, Symbol b) const;
  Symbol inv(Symbol a) const;  // throws InvalidArgument for 0
  Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
  Symbol pow(Symbol a, std::uint64_t e) const;

  // Schoolbook multiplication, never table-driven.
  Symbol mul_reference(Symbol a, Symbol b) const;

  std::vector<std::uint64_t> coefficients(Symbol a) const;
  Symbol from_coefficients(std::span<const std::uint64_t> coeffs) const;

  // Serialized width: ceil(m * ceil(log2 p) / 8) bytes, coefficients packed
  // big-endian from x^{m-1} down to x^0, ceil(log2 p) bits each.
  std::size_t symbol_width() const { return width_; }
  void write_symbol(Symbol a, std::span<std::uint8_t> out) const;
  // nullopt when the bytes do not encode a field element.
  std::optional<Symbol> read_symbol(std::span<const std::uint8_t> in) const;

 private:
  explicit Field(FieldSpec spec);
  void build_tables();
  Symbol pow_reference(Symbol a, std::uint64_t e) const;

  FieldSpec spec_;
  std::uint64_t q_ = 0;
  unsigned coeff_bits_ = 0;
  std::size_t width_ = 0;
  std::vector<std::uint32_t> exp_;  // length 2(q-1)
  std::vector<std::uint32_t> log_;  // length q
};

using FieldPtr = std::shared_ptr<const Field>;

// Value wrapper pairing a symbol with its field; arithmetic checks that both
// operands come from the same field.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Symbol value);

  const FieldPtr& field() const { return field_; }
  Symbol value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  FieldElement inv() const;
  FieldElement pow(std::uint64_t e) const;

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
  FieldElement operator-() const;
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  FieldPtr field_;
  Symbol value_;
};

// Throws FieldMismatch unless both pointers describe the same field.
void require_same_field(const Field& a, const Field& b);

}  // namespace crgc
