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

#include "crgc/rational.h"

#include <cctype>

#include "crgc/error.h"

namespace crgc {
namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidArgument("malformed number: '" + std::string(whole) + "'");
  BigInt out = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidArgument("malformed number: '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

}  // namespace

std::string to_exact_string(const Rational& x) {
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal_string(const Rational& x, int places) {
  const bool negative = x < 0;
  const Rational mag = negative ? Rational(-x) : x;
  BigInt scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const BigInt num = boost::multiprecision::numerator(mag) * scale;
  const BigInt den = boost::multiprecision::denominator(mag);
  BigInt scaled = num / den;
  if ((num % den) * 2 >= den) ++scaled;
  std::string digits = scaled.str();
  if (places > 0) {
    if (digits.size() <= static_cast<std::size_t>(places)) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational value;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    const BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    value = Rational(parse_integer(body.substr(0, slash), text), den);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = body.substr(dot + 1);
    BigInt scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt whole = dot == 0 ? BigInt(0) : parse_integer(body.substr(0, dot), text);
    const BigInt part = frac.empty() ? BigInt(0) : parse_integer(frac, text);
    value = Rational(whole * scale + part, scale);
  } else {
    value = Rational(parse_integer(body, text));
  }
  return negative ? Rational(-value) : value;
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace crgc
