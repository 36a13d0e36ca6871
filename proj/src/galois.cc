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

#include "crgc/galois.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "crgc/error.h"

namespace crgc {
namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t mod) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % mod);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t mod) {
  std::uint64_t result = 1 % mod;
  a %= mod;
  while (e != 0) {
    if (e & 1) result = mulmod(result, a, mod);
    a = mulmod(a, a, mod);
    e >>= 1;
  }
  return result;
}

// base^exp, or nullopt past 2^64 - 1.
std::optional<std::uint64_t> checked_pow(std::uint64_t base, unsigned exp) {
  u128 acc = 1;
  for (unsigned i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t integer_root(std::uint64_t x, unsigned m) {
  if (m == 1) return x;
  auto guess = static_cast<std::uint64_t>(
      std::pow(static_cast<long double>(x), 1.0L / m));
  // Float estimate may be off by one in either direction.
  while (guess > 0) {
    auto pw = checked_pow(guess, m);
    if (pw && *pw <= x) break;
    --guess;
  }
  while (true) {
    auto pw = checked_pow(guess + 1, m);
    if (!pw || *pw > x) break;
    ++guess;
  }
  return guess;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= x; ++f) {
    if (x % f == 0) {
      out.push_back(f);
      while (x % f == 0) x /= f;
    }
  }
  if (x > 1) out.push_back(x);
  return out;
}

// Remainder of `num` modulo monic `den`, both low-to-high coefficient lists
// over GF(p). `den` includes its leading 1.
std::vector<std::uint64_t> poly_mod(std::vector<std::uint64_t> num,
                                    const std::vector<std::uint64_t>& den,
                                    std::uint64_t p) {
  const std::size_t dd = den.size() - 1;
  for (std::size_t deg = num.size(); deg-- > dd;) {
    const std::uint64_t lead = num[deg];
    if (lead == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t t = mulmod(lead, den[i], p);
      std::uint64_t& slot = num[deg - dd + i];
      slot = (slot + p - t) % p;
    }
  }
  num.resize(std::min(num.size(), dd));
  return num;
}

}  // namespace

std::uint64_t FieldSpec::order() const {
  auto q = checked_pow(p, m);
  if (!q) throw ParameterError("field order exceeds 64 bits");
  return *q;
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "GF(" << p;
  if (m > 1) {
    os << "^" << m << ", x^" << m;
    for (unsigned i = m; i-- > 0;) {
      if (irreducible[i] == 0) continue;
      os << " + ";
      if (irreducible[i] != 1 || i == 0) os << irreducible[i];
      if (i >= 1) os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  os << ")";
  return os.str();
}

bool is_prime(std::uint64_t x) {
  if (x < 2) return false;
  for (std::uint64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (x % small == 0) return x == small;
  }
  std::uint64_t d = x - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases make Miller-Rabin deterministic below 2^64.
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t y = powmod(a, d, x);
    if (y == 1 || y == x - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < s; ++i) {
      y = mulmod(y, y, x);
      if (y == x - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decomposition(
    std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (unsigned m = 63; m >= 1; --m) {
    const std::uint64_t root = integer_root(q, m);
    if (root < 2) continue;
    auto pw = checked_pow(root, m);
    if (pw && *pw == q && is_prime(root)) return std::make_pair(root, m);
  }
  return std::nullopt;
}

bool is_irreducible(std::uint64_t p, std::span<const std::uint64_t> coeffs) {
  const std::size_t m = coeffs.size();
  if (m == 0) return false;
  if (m == 1) return true;
  if (coeffs[0] == 0) return false;  // x divides it
  std::vector<std::uint64_t> poly(coeffs.begin(), coeffs.end());
  poly.push_back(1);
  for (std::size_t deg = 1; deg <= m / 2; ++deg) {
    // Every monic divisor candidate of this degree, low coefficients as a
    // base-p counter.
    std::vector<std::uint64_t> divisor(deg + 1, 0);
    divisor[deg] = 1;
    while (true) {
      auto rem = poly_mod(poly, divisor, p);
      if (std::all_of(rem.begin(), rem.end(),
                      [](std::uint64_t c) { return c == 0; })) {
        return false;
      }
      std::size_t i = 0;
      while (i < deg && ++divisor[i] == p) divisor[i++] = 0;
      if (i == deg) break;
    }
  }
  return true;
}

FieldSpec make_field_spec(std::uint64_t p, unsigned m) {
  if (!is_prime(p)) throw InvalidArgument("field characteristic is not prime");
  if (m == 0) throw InvalidArgument("extension degree must be positive");
  FieldSpec spec{p, m, {}};
  spec.order();  // overflow check
  if (m == 1) return spec;
  // Counter over (c_{m-1}, ..., c_0) with c_0 as the least significant digit,
  // so the first irreducible hit is the lexicographically smallest.
  std::vector<std::uint64_t> coeffs(m, 0);
  while (true) {
    if (is_irreducible(p, coeffs)) {
      spec.irreducible = coeffs;
      return spec;
    }
    std::size_t i = 0;
    while (i < m && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == m) break;
  }
  throw Error("no irreducible polynomial found");  // unreachable for prime p
}

FieldSpec smallest_prime_power_geq(std::uint64_t n) {
  if (n < 2) throw InvalidArgument("field selection needs n >= 2");
  for (std::uint64_t q = n;; ++q) {
    if (auto pm = prime_power_decomposition(q)) {
      return make_field_spec(pm->first, pm->second);
    }
    if (q == std::numeric_limits<std::uint64_t>::max()) break;
  }
  throw ParameterError("no prime power >= n fits in 64 bits");
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw InvalidArgument("field characteristic is not prime");
  if (spec_.m == 0) throw InvalidArgument("extension degree must be positive");
  q_ = spec_.order();
  if (spec_.m == 1) {
    if (!spec_.irreducible.empty()) {
      throw InvalidArgument("prime field takes no modulus polynomial");
    }
  } else {
    if (spec_.irreducible.size() != spec_.m) {
      throw InvalidArgument("modulus must have m non-leading coefficients");
    }
    for (auto c : spec_.irreducible) {
      if (c >= spec_.p) throw InvalidArgument("modulus coefficient out of range");
    }
    if (!is_irreducible(spec_.p, spec_.irreducible)) {
      throw InvalidArgument("modulus polynomial is reducible");
    }
  }
  coeff_bits_ = static_cast<unsigned>(std::bit_width(spec_.p - 1));
  width_ = (static_cast<std::size_t>(spec_.m) * coeff_bits_ + 7) / 8;
}

FieldPtr Field::create(FieldSpec spec, bool use_tables) {
  // Fields are immutable, so instances are shared per (spec, tables) pair;
  // building the GF(2^16) tables is the expensive part.
  static std::mutex mu;
  static std::map<std::pair<FieldSpec, bool>, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(spec, use_tables);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  std::shared_ptr<Field> field(new Field(std::move(spec)));
  if (use_tables && field->q_ <= (1u << 16) && field->q_ > 2) {
    field->build_tables();
  }
  cache.emplace(std::move(key), field);
  return field;
}

void Field::build_tables() {
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);
  Symbol generator = 0;
  for (Symbol g = 2; g < q_; ++g) {
    bool primitive = true;
    for (auto f : factors) {
      if (pow_reference(g, order / f) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      generator = g;
      break;
    }
  }
  if (generator == 0) throw Error("no primitive element found");
  exp_.assign(2 * order, 0);
  log_.assign(q_, 0);
  Symbol x = 1;
  for (std::uint64_t i = 0; i < order; ++i) {
    exp_[i] = static_cast<std::uint32_t>(x);
    exp_[i + order] = static_cast<std::uint32_t>(x);
    log_[x] = static_cast<std::uint32_t>(i);
    x = mul_reference(x, generator);
  }
}

std::vector<std::uint64_t> Field::coefficients(Symbol a) const {
  std::vector<std::uint64_t> out(spec_.m, 0);
  if (spec_.m == 1) {
    out[0] = a;
    return out;
  }
  for (unsigned i = 0; i < spec_.m; ++i) {
    out[i] = a % spec_.p;
    a /= spec_.p;
  }
  return out;
}

Symbol Field::from_coefficients(std::span<const std::uint64_t> coeffs) const {
  if (coeffs.size() != spec_.m) {
    throw InvalidArgument("coefficient vector has wrong length");
  }
  Symbol acc = 0;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] >= spec_.p) throw InvalidArgument("coefficient out of range");
    acc = acc * spec_.p + coeffs[i];
  }
  return acc;
}

Symbol Field::add(Symbol a, Symbol b) const {
  if (spec_.m == 1) {
    return static_cast<Symbol>((static_cast<u128>(a) + b) % spec_.p);
  }
  if (spec_.p == 2) return a ^ b;
  Symbol acc = 0, scale = 1;
  for (unsigned i = 0; i < spec_.m; ++i) {
    acc += ((a % spec_.p + b % spec_.p) % spec_.p) * scale;
    a /= spec_.p;
    b /= spec_.p;
    scale *= spec_.p;
  }
  return acc;
}

Symbol Field::neg(Symbol a) const {
  if (spec_.m == 1) return a == 0 ? 0 : spec_.p - a;
  if (spec_.p == 2) return a;
  Symbol acc = 0, scale = 1;
  for (unsigned i = 0; i < spec_.m; ++i) {
    const Symbol c = a % spec_.p;
    acc += (c == 0 ? 0 : spec_.p - c) * scale;
    a /= spec_.p;
    scale *= spec_.p;
  }
  return acc;
}

Symbol Field::sub(Symbol a, Symbol b) const { return add(a, neg(b)); }

Symbol Field::mul_reference(Symbol a, Symbol b) const {
  const std::uint64_t p = spec_.p;
  if (spec_.m == 1) return mulmod(a, b, p);
  const unsigned m = spec_.m;
  const auto ca = coefficients(a);
  const auto cb = coefficients(b);
  std::vector<std::uint64_t> prod(2 * m - 1, 0);
  for (unsigned i = 0; i < m; ++i) {
    if (ca[i] == 0) continue;
    for (unsigned j = 0; j < m; ++j) {
      prod[i + j] = (prod[i + j] + mulmod(ca[i], cb[j], p)) % p;
    }
  }
  // x^m = -(c_{m-1}x^{m-1} + ... + c_0)
  for (std::size_t deg = prod.size(); deg-- > m;) {
    const std::uint64_t lead = prod[deg];
    if (lead == 0) continue;
    prod[deg] = 0;
    for (unsigned i = 0; i < m; ++i) {
      const std::uint64_t t = mulmod(lead, spec_.irreducible[i], p);
      std::uint64_t& slot = prod[deg - m + i];
      slot = (slot + p - t) % p;
    }
  }
  prod.resize(m);
  return from_coefficients(prod);
}

Symbol Field::mul(Symbol a, Symbol b) const {
  if (!has_tables()) return mul_reference(a, b);
  if (a == 0 || b == 0) return 0;
  return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
}

Symbol Field::pow_reference(Symbol a, std::uint64_t e) const {
  Symbol result = 1;
  while (e != 0) {
    if (e & 1) result = mul_reference(result, a);
    a = mul_reference(a, a);
    e >>= 1;
  }
  return result;
}

Symbol Field::pow(Symbol a, std::uint64_t e) const {
  if (!has_tables()) return pow_reference(a, e);
  if (e == 0) return 1;
  if (a == 0) return 0;
  const std::uint64_t order = q_ - 1;
  const auto l = static_cast<u128>(log_[a]) * (e % order) % order;
  return exp_[static_cast<std::size_t>(l)];
}

Symbol Field::inv(Symbol a) const {
  if (a == 0) throw InvalidArgument("inverse of zero");
  if (has_tables()) {
    const std::uint64_t order = q_ - 1;
    return exp_[(order - log_[a]) % order];
  }
  return pow_reference(a, q_ - 2);
}

void Field::write_symbol(Symbol a, std::span<std::uint8_t> out) const {
  if (out.size() != width_) throw InvalidArgument("symbol buffer has wrong width");
  std::fill(out.begin(), out.end(), 0);
  const auto coeffs = coefficients(a);
  // Bit position counted from the least significant end of the buffer.
  std::size_t bit = 0;
  for (unsigned i = 0; i < spec_.m; ++i) {
    const std::uint64_t c = coeffs[i];
    for (unsigned b = 0; b < coeff_bits_; ++b, ++bit) {
      if ((c >> b) & 1) out[width_ - 1 - bit / 8] |= std::uint8_t(1u << (bit % 8));
    }
  }
}

std::optional<Symbol> Field::read_symbol(std::span<const std::uint8_t> in) const {
  if (in.size() != width_) return std::nullopt;
  std::vector<std::uint64_t> coeffs(spec_.m, 0);
  std::size_t bit = 0;
  for (unsigned i = 0; i < spec_.m; ++i) {
    for (unsigned b = 0; b < coeff_bits_; ++b, ++bit) {
      if ((in[width_ - 1 - bit / 8] >> (bit % 8)) & 1) coeffs[i] |= std::uint64_t{1} << b;
    }
    if (coeffs[i] >= spec_.p) return std::nullopt;
  }
  for (; bit < width_ * 8; ++bit) {
    if ((in[width_ - 1 - bit / 8] >> (bit % 8)) & 1) return std::nullopt;
  }
  return from_coefficients(coeffs);
}

void require_same_field(const Field& a, const Field& b) {
  if (&a != &b && a.spec() != b.spec()) {
    throw FieldMismatch("operands belong to different fields: " +
                        a.spec().to_string() + " vs " + b.spec().to_string());
  }
}

FieldElement::FieldElement(FieldPtr field, Symbol value)
    : field_(std::move(field)), value_(value) {
  if (!field_) throw InvalidArgument("field element without a field");
  if (!field_->contains(value_)) throw InvalidArgument("value outside the field");
}

FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }

FieldElement FieldElement::pow(std::uint64_t e) const {
  return {field_, field_->pow(value_, e)};
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->add(a.value_, b.value_)};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->sub(a.value_, b.value_)};
}

FieldElement operator*(const FieldElement& a, const FieldElement& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->mul(a.value_, b.value_)};
}

FieldElement operator/(const FieldElement& a, const FieldElement& b) {
  require_same_field(*a.field_, *b.field_);
  return {a.field_, a.field_->div(a.value_, b.value_)};
}

FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }

bool operator==(const FieldElement& a, const FieldElement& b) {
  require_same_field(*a.field_, *b.field_);
  return a.value_ == b.value_;
}

}  // namespace crgc
