// Copyright 2026 The msalg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSALG_CORPUS_HPP_
#define MSALG_CORPUS_HPP_

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "msalg/algebra.hpp"
#include "msalg/closure.hpp"
#include "msalg/core.hpp"

namespace msalg {

// splitmix64.  Small, explicit, and identical across platforms, so corpora
// are reproducible from (seed, params) alone.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // An independently seeded child stream for a sub-draw.
  SplitMix64 split() { return SplitMix64(next()); }
};

struct GenParams {
  std::uint64_t seed = 0;
  int num_sorts = 2;
  int min_size = 1;
  int max_size = 3;
  int min_ops = 1;
  int max_ops = 4;
  int max_arity = 2;
  double nullary_prob = 0.2;
  double coverage = 0.1;  // closure-system density: fraction of Sub(A) drawn
  int cap = kDefaultCap;

  void validate() const {
    if (num_sorts < 1) throw error("GenParams: num_sorts < 1");
    if (min_size < 1 || max_size < min_size)
      throw error("GenParams: bad size range");
    if (min_ops < 0 || max_ops < min_ops)
      throw error("GenParams: bad op count range");
    if (max_arity < 0) throw error("GenParams: negative max_arity");
    if (nullary_prob < 0 || nullary_prob > 1)
      throw error("GenParams: nullary_prob outside [0,1]");
    if (coverage < 0 || coverage > 1)
      throw error("GenParams: coverage outside [0,1]");
  }
};

namespace detail {

inline CarrierPtr random_carrier(const GenParams& p, SplitMix64& rng) {
  std::vector<std::string> names;
  std::vector<int> sizes;
  int total = 0;
  for (int s = 0; s < p.num_sorts; ++s) {
    names.push_back("s" + std::to_string(s));
    int span = p.max_size - p.min_size + 1;
    int sz = p.min_size + static_cast<int>(rng.below(span));
    sizes.push_back(sz);
    total += sz;
  }
  if (total > p.cap)
    throw error("GenParams: drawn carrier size " + std::to_string(total) +
                " exceeds cap " + std::to_string(p.cap) +
                "; tighten the size range");
  return make_carrier(std::move(names), std::move(sizes));
}

}  // namespace detail

/// A seeded random algebra: random carrier within the size range, random
/// signature with word lengths ≤ max_arity, tables filled uniformly from the
/// coarity carrier.  Deterministic in (seed, params).
inline Algebra random_algebra(const GenParams& p) {
  p.validate();
  SplitMix64 rng(p.seed);
  CarrierPtr c = detail::random_carrier(p, rng);

  int num_ops =
      p.min_ops + static_cast<int>(rng.below(p.max_ops - p.min_ops + 1));
  std::vector<OpDecl> decls;
  std::vector<std::vector<int>> tables;
  for (int i = 0; i < num_ops; ++i) {
    int len = 0;
    if (p.max_arity > 0 && rng.unit() >= p.nullary_prob)
      len = 1 + static_cast<int>(rng.below(p.max_arity));
    Word w;
    for (int k = 0; k < len; ++k)
      w.sorts.push_back(static_cast<int>(rng.below(c->num_sorts())));
    int coarity = static_cast<int>(rng.below(c->num_sorts()));
    std::size_t rows = 1;
    for (int s : w.sorts) rows *= static_cast<std::size_t>(c->size(s));
    std::vector<int> table(rows);
    for (auto& v : table)
      v = static_cast<int>(rng.below(c->size(coarity)));
    decls.push_back({"f" + std::to_string(i), std::move(w), coarity});
    tables.push_back(std::move(table));
  }
  return Algebra(c, Signature(c->sorts(), std::move(decls)),
                 std::move(tables));
}

/// J(X) = intersection of the members of a closure system containing X.
inline ClosureTable table_from_closure_system(const CarrierPtr& c,
                                              std::vector<Mask> family) {
  family.push_back(c->full_mask());
  // Complete under pairwise intersection to a fixed point.
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t n = family.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i + 1; k < n; ++k) {
        Mask meet = family[i] & family[k];
        if (std::find(family.begin(), family.end(), meet) == family.end()) {
          family.push_back(meet);
          grew = true;
        }
      }
  }
  std::vector<Mask> map(std::size_t{1} << c->total_size());
  for (Mask m = 0; m <= c->full_mask(); ++m) {
    Mask acc = c->full_mask();
    for (Mask member : family)
      if ((m & ~member) == 0) acc &= member;
    map[m] = acc;
  }
  return ClosureTable(c, std::move(map));
}

/// A seeded random closure table, realized through a random closure system
/// so the closure axioms hold by construction.  Not necessarily uniform or
/// n-ary for small n.
inline ClosureTable random_closure_table(const GenParams& p) {
  p.validate();
  SplitMix64 rng(p.seed);
  CarrierPtr c = detail::random_carrier(p, rng);
  std::size_t universe = std::size_t{1} << c->total_size();
  std::size_t k = std::max<std::size_t>(
      1, static_cast<std::size_t>(p.coverage * static_cast<double>(universe)));
  std::vector<Mask> family;
  for (std::size_t i = 0; i < k; ++i)
    family.push_back(rng.below(universe));
  return table_from_closure_system(c, std::move(family));
}

/// The fixed closure operator that satisfies the closure axioms but is not
/// uniform, hence not Sg of any algebra: on sorts {s,t} with sizes (2,1),
/// built from the closure system {A, (s:{0})}.  Then J((s:{0})) = (s:{0})
/// has support {s} while J((s:{1})) = A has support {s,t}.
inline ClosureTable nonuniform_example() {
  CarrierPtr c = make_carrier({"s", "t"}, {2, 1});
  Mask b = parse_subset_spec(c, "s:0").bits();
  return table_from_closure_system(c, {b});
}

}  // namespace msalg

#endif  // MSALG_CORPUS_HPP_
