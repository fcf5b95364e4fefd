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

#ifndef MSALG_TESTS_FIXTURES_HPP_
#define MSALG_TESTS_FIXTURES_HPP_

#include "msalg/msalg.hpp"

namespace msalg::fixtures {

// Two sorts s, t with sizes (2, 1) and one unary op f: s -> t mapping both
// elements to 0.
inline Algebra unary_f() {
  CarrierPtr c = make_carrier({"s", "t"}, {2, 1});
  Signature sig(c->sorts(), {{"f", Word{{0}}, 1}});
  return Algebra(c, sig, {{0, 0}});
}

// One sort of size 2 with only the constant c: λ -> s equal to 1.
inline Algebra constant_only() {
  CarrierPtr c = make_carrier({"s", "t"}, {2, 1});
  Signature sig(c->sorts(), {{"c", Word{}, 0}});
  return Algebra(c, sig, {{1}});
}

// Single sort {0,1,2} with one binary op: f(0,1) = 2, every other pair maps
// to its first argument.  Sg is 2-ary but not 1-ary.
inline Algebra binary_witness() {
  CarrierPtr c = make_carrier({"s"}, {3});
  Signature sig(c->sorts(), {{"f", Word{{0, 0}}, 0}});
  std::vector<int> table(9);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) table[a * 3 + b] = (a == 0 && b == 1) ? 2 : a;
  return Algebra(c, sig, {std::move(table)});
}

inline ClosureOperator two_ary_not_one_ary() {
  return as_closure_operator(binary_witness());
}

// A small corpus of seeded operators: Sg of random algebras plus random
// closure tables, all on carriers of total size <= 6.
inline std::vector<ClosureOperator> small_corpus(int num_algebras = 6,
                                                 int num_tables = 6) {
  std::vector<ClosureOperator> out;
  GenParams ap;
  ap.num_sorts = 2;
  ap.min_size = 1;
  ap.max_size = 2;
  ap.min_ops = 1;
  ap.max_ops = 3;
  ap.max_arity = 2;
  for (int i = 0; i < num_algebras; ++i) {
    ap.seed = 100 + static_cast<std::uint64_t>(i);
    out.push_back(as_closure_operator(random_algebra(ap)));
  }
  GenParams tp;
  tp.num_sorts = 2;
  tp.min_size = 1;
  tp.max_size = 2;
  tp.coverage = 0.3;
  for (int i = 0; i < num_tables; ++i) {
    tp.seed = 200 + static_cast<std::uint64_t>(i);
    out.push_back(from_table(random_closure_table(tp)));
  }
  return out;
}

}  // namespace msalg::fixtures

#endif  // MSALG_TESTS_FIXTURES_HPP_
