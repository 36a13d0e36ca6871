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

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace crgc {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p/q" in lowest terms, or just "p" for integers.
std::string to_exact_string(const Rational& x);

// Decimal rendering rounded half away from zero, e.g. 154/3 -> "51.333333".
std::string to_decimal_string(const Rational& x, int places = 6);

// Accepts "7", "-7/2", "3.25". Throws InvalidArgument otherwise.
Rational parse_rational(std::string_view text);

double to_double(const Rational& x);

}  // namespace crgc
