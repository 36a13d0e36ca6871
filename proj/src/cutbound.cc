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

#include "crgc/cutbound.h"

#include <algorithm>
#include <map>
#include <sstream>

#include "crgc/error.h"

namespace crgc {
namespace {

void enumerate_into(unsigned k, unsigned r, unsigned remaining, std::vector<unsigned>& prefix,
                    std::vector<CutType>& out) {
  const auto slots_left = static_cast<unsigned>(k - prefix.size());
  if (slots_left == 0) {
    if (remaining == 0) out.push_back({prefix});
    return;
  }
  for (unsigned part = 0; part <= std::min(r, remaining); ++part) {
    // Later slots must be able to absorb what is left.
    if (remaining - part > (slots_left - 1) * r) continue;
    prefix.push_back(part);
    enumerate_into(k, r, remaining - part, prefix, out);
    prefix.pop_back();
  }
}

bool zeros_trailing(const CutType& t) {
  bool seen_zero = false;
  for (auto part : t.parts) {
    if (part == 0) {
      seen_zero = true;
    } else if (seen_zero) {
      return false;
    }
  }
  return true;
}

void check_type(const CutType& t, const BoundParams& p) {
  if (t.parts.size() != p.k) throw InvalidArgument("cut type must have k parts");
  unsigned sum = 0;
  for (auto part : t.parts) {
    if (part > p.r) throw InvalidArgument("cut type part exceeds r");
    sum += part;
  }
  if (sum != p.k) throw InvalidArgument("cut type parts must sum to k");
}

// Coefficient of beta1 and beta2 in part i's repair-link term, scaled by l_i.
struct PartTerm {
  Rational a;
  Rational b;
  Rational weight;  // l_i
};

std::vector<PartTerm> part_terms(const CutType& t, const BoundParams& p) {
  std::vector<PartTerm> out;
  unsigned before = 0;
  for (auto part : t.parts) {
    out.push_back({Rational(part) * (p.d - before), Rational(part) * (p.r - part), part});
    before += part;
  }
  return out;
}

Rational objective(const BoundParams& p, const Rational& beta1, const Rational& beta2) {
  return Rational(p.d) * beta1 + Rational(p.r - 1) * beta2;
}

}  // namespace

void BoundParams::validate() const {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (r < 1) throw ParameterError("r must be at least 1");
  if (d < k) throw ParameterError("the cut bound assumes d >= k");
  if (alpha < 0 || file_size < 0 || beta1 < 0 || beta2 < 0) {
    throw ParameterError("storage and bandwidth quantities must be nonnegative");
  }
}

Rational BoundParams::repair_bandwidth() const { return objective(*this, beta1, beta2); }

std::string CutType::to_string() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

std::vector<CutType> enumerate_cut_types(unsigned k, unsigned r, bool canonical) {
  if (k < 1 || r < 1) throw InvalidArgument("cut types need k >= 1 and r >= 1");
  std::vector<CutType> out;
  std::vector<unsigned> prefix;
  enumerate_into(k, r, k, prefix, out);
  if (canonical) std::erase_if(out, [](const CutType& t) { return !zeros_trailing(t); });
  return out;
}

Rational cut_value(const CutType& type, const BoundParams& p) {
  p.validate();
  check_type(type, p);
  Rational total = 0;
  unsigned before = 0;
  for (auto part : type.parts) {
    const Rational link = Rational(p.d - before) * p.beta1 + Rational(p.r - part) * p.beta2;
    total += Rational(part) * std::min(p.alpha, link);
    before += part;
  }
  return total;
}

std::vector<LinearConstraint> expand_cut(const CutType& type, const BoundParams& p) {
  p.validate();
  check_type(type, p);
  const auto terms = part_terms(type, p);
  std::vector<LinearConstraint> out;
  out.reserve(std::size_t{1} << p.k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.k); ++mask) {
    LinearConstraint c{0, 0, p.file_size};
    for (unsigned i = 0; i < p.k; ++i) {
      if (mask >> i & 1) {
        c.a += terms[i].a;
        c.b += terms[i].b;
      } else {
        c.rhs -= terms[i].weight * p.alpha;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

Rational subset_expansion_minimum(const CutType& type, const BoundParams& p) {
  p.validate();
  check_type(type, p);
  const auto terms = part_terms(type, p);
  Rational best;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << p.k); ++mask) {
    Rational value = 0;
    for (unsigned i = 0; i < p.k; ++i) {
      value += (mask >> i & 1) ? Rational(terms[i].a * p.beta1 + terms[i].b * p.beta2)
                               : Rational(terms[i].weight * p.alpha);
    }
    if (mask == 0 || value < best) best = value;
  }
  return best;
}

TradeoffPoint gamma_star_over(const BoundParams& p, std::span<const CutType> types) {
  p.validate();
  if (Rational(p.k) * p.alpha < p.file_size) {
    throw Infeasible("alpha = " + to_exact_string(p.alpha) + " is below B/k = " +
                     to_exact_string(p.file_size / p.k));
  }

  // Strongest right-hand side per coefficient pair; constraints with rhs <= 0
  // hold for every nonnegative (beta1, beta2).
  std::map<std::pair<Rational, Rational>, Rational> strongest;
  for (const auto& t : types) {
    for (auto& c : expand_cut(t, p)) {
      if (c.rhs <= 0) continue;
      if (c.a == 0 && c.b == 0) {
        throw Infeasible("cut " + t.to_string() + " cannot carry the file at any bandwidth");
      }
      auto [it, inserted] = strongest.try_emplace({c.a, c.b}, c.rhs);
      if (!inserted && it->second < c.rhs) it->second = c.rhs;
    }
  }
  std::vector<LinearConstraint> constraints;
  for (const auto& [ab, rhs] : strongest) constraints.push_back({ab.first, ab.second, rhs});
  // Drop c when some other constraint has coefficients no larger and a right
  // side no smaller: it then implies c on the nonnegative quadrant.
  std::vector<LinearConstraint> kept;
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < constraints.size() && !dominated; ++j) {
      if (i == j) continue;
      const auto& ci = constraints[i];
      const auto& cj = constraints[j];
      dominated = cj.a <= ci.a && cj.b <= ci.b && cj.rhs >= ci.rhs &&
                  (cj.a != ci.a || cj.b != ci.b || cj.rhs != ci.rhs || j < i);
    }
    if (!dominated) kept.push_back(constraints[i]);
  }

  std::vector<LinearConstraint> lines = kept;
  lines.push_back({1, 0, 0});  // beta1 = 0
  lines.push_back({0, 1, 0});  // beta2 = 0

  struct Vertex {
    Rational objective, beta1, beta2;
  };
  std::vector<Vertex> vertices;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const auto& u = lines[i];
      const auto& v = lines[j];
      const Rational det = u.a * v.b - v.a * u.b;
      if (det == 0) continue;
      Rational beta1 = (u.rhs * v.b - v.rhs * u.b) / det;
      Rational beta2 = (u.a * v.rhs - v.a * u.rhs) / det;
      if (beta1 < 0 || beta2 < 0) continue;
      vertices.push_back({objective(p, beta1, beta2), std::move(beta1), std::move(beta2)});
    }
  }
  std::sort(vertices.begin(), vertices.end(), [](const Vertex& x, const Vertex& y) {
    if (x.objective != y.objective) return x.objective < y.objective;
    if (x.beta1 != y.beta1) return x.beta1 < y.beta1;
    return x.beta2 < y.beta2;
  });
  for (const auto& v : vertices) {
    const bool feasible = std::all_of(kept.begin(), kept.end(), [&](const LinearConstraint& c) {
      return c.satisfied_by(v.beta1, v.beta2);
    });
    if (feasible) return {p.alpha, v.objective, v.beta1, v.beta2};
  }
  throw Error("no feasible vertex found");  // unreachable when kα >= B
}

TradeoffPoint gamma_star(const BoundParams& p) {
  p.validate();
  const auto types = enumerate_cut_types(p.k, p.r);
  return gamma_star_over(p, types);
}

Rational msr_closed_form(const BoundParams& p) {
  p.validate();
  return p.file_size * (p.d + p.r - 1) / (Rational(p.k) * (p.d + p.r - p.k));
}

Rational non_coop_msr(const BoundParams& p) {
  p.validate();
  return p.file_size * p.d / (Rational(p.k) * (p.d - p.k + 1));
}

std::vector<TradeoffPoint> tradeoff_curve(const BoundParams& p,
                                          std::span<const Rational> alphas) {
  p.validate();
  for (const auto& a : alphas) {
    if (Rational(p.k) * a < p.file_size) {
      throw Infeasible("grid value alpha = " + to_exact_string(a) + " is below B/k = " +
                       to_exact_string(p.file_size / p.k));
    }
  }
  const auto types = enumerate_cut_types(p.k, p.r);
  std::vector<TradeoffPoint> out;
  for (const auto& a : alphas) {
    BoundParams q = p;
    q.alpha = a;
    out.push_back(gamma_star_over(q, types));
  }
  return out;
}

std::string tradeoff_csv(std::span<const TradeoffPoint> points) {
  std::ostringstream os;
  os << "alpha,gamma_star,beta1,beta2,gamma_star_decimal\n";
  for (const auto& pt : points) {
    os << to_exact_string(pt.alpha) << ',' << to_exact_string(pt.gamma_star) << ','
       << to_exact_string(pt.beta1) << ',' << to_exact_string(pt.beta2) << ','
       << to_decimal_string(pt.gamma_star) << '\n';
  }
  return os.str();
}

}  // namespace crgc
