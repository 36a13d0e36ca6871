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

#include <span>
#include <string>
#include <vector>

#include "crgc/rational.h"

namespace crgc {

// Storage/bandwidth parameters of the information flow graph. beta1 is the
// per-helper download, beta2 the per-peer exchange among newcomers. The
// bandwidth fields are ignored by gamma_star(), which solves for them.
struct BoundParams {
  unsigned n = 0;
  unsigned k = 1;
  unsigned d = 1;
  unsigned r = 1;
  Rational alpha;
  Rational file_size;  // B
  Rational beta1;
  Rational beta2;

  // Throws ParameterError unless d >= k >= 1, r >= 1 and all quantities are
  // nonnegative.
  void validate() const;
  Rational repair_bandwidth() const;  // d*beta1 + (r-1)*beta2
};

// (l_1, ..., l_k): l_i of the data collector's nodes were last regenerated
// together in the i-th of its repair stages.
struct CutType {
  std::vector<unsigned> parts;

  std::string to_string() const;
  friend auto operator<=>(const CutType&, const CutType&) = default;
};

// All tuples with sum k and parts in [0, r], lexicographically ascending.
// With `canonical`, tuples whose zeros are not all trailing are dropped:
// a zero part adds nothing and leaves later prefix sums unchanged, so each
// such tuple has the same value as its zero-compacted form, which is kept.
std::vector<CutType> enumerate_cut_types(unsigned k, unsigned r, bool canonical = false);

// sum_i l_i * min{alpha, (d - sum_{j<i} l_j) beta1 + (r - l_i) beta2}
Rational cut_value(const CutType& type, const BoundParams& p);

// a*beta1 + b*beta2 >= rhs
struct LinearConstraint {
  Rational a;
  Rational b;
  Rational rhs;

  bool satisfied_by(const Rational& beta1, const Rational& beta2) const {
    return a * beta1 + b * beta2 >= rhs;
  }
  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

// The 2^k constraints obtained by choosing, for every part, either the
// repair-link term (parts in `subset`) or the storage term alpha.
std::vector<LinearConstraint> expand_cut(const CutType& type, const BoundParams& p);

// min over all 2^k subsets S of
//   sum_{i in S} l_i c_i(beta) + sum_{i not in S} l_i alpha,
// evaluated literally at p.beta1/p.beta2.
Rational subset_expansion_minimum(const CutType& type, const BoundParams& p);

struct TradeoffPoint {
  Rational alpha;
  Rational gamma_star;
  Rational beta1;
  Rational beta2;
};

// Minimum of d*beta1 + (r-1)*beta2 over beta1, beta2 >= 0 such that every
// cut type carries the file. Exact vertex enumeration over the constraint
// lines; ties go to the lexicographically smallest (beta1, beta2). Throws
// Infeasible when alpha < B/k.
TradeoffPoint gamma_star(const BoundParams& p);

// Same LP restricted to the given cut types.
TradeoffPoint gamma_star_over(const BoundParams& p, std::span<const CutType> types);

// B(d+r-1) / (k(d+r-k)): cooperative bandwidth at alpha = B/k.
Rational msr_closed_form(const BoundParams& p);
// Bd / (k(d-k+1)): one-by-one repair bandwidth at alpha = B/k.
Rational non_coop_msr(const BoundParams& p);

// gamma_star at every alpha of the grid. Throws Infeasible naming the first
// grid entry below B/k.
std::vector<TradeoffPoint> tradeoff_curve(const BoundParams& p,
                                          std::span<const Rational> alphas);

// Header "alpha,gamma_star,beta1,beta2,gamma_star_decimal"; exact p/q values
// followed by a six-place decimal of gamma_star.
std::string tradeoff_csv(std::span<const TradeoffPoint> points);

}  // namespace crgc
