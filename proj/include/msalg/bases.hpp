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

#ifndef MSALG_BASES_HPP_
#define MSALG_BASES_HPP_

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "msalg/closure.hpp"
#include "msalg/core.hpp"

namespace msalg {

/// X is a basis iff J(X) = A.
inline bool is_basis(const ClosureOperator& j, const MSSubset& x) {
  return j.closure_bits(x.bits()) == j.carrier()->full_mask();
}

struct IrredundantResult {
  bool irredundant = true;
  int sort = -1;  // valid when !irredundant: x ∈ J(X − δ^{s,x})_s
  int elem = -1;
};

/// X is irredundant iff no element of X lies in the closure of X minus
/// that element.
inline IrredundantResult is_irredundant(const ClosureOperator& j,
                                        const MSSubset& x) {
  const Carrier& c = *j.carrier();
  for (int s = 0; s < c.num_sorts(); ++s) {
    Mask bits = x.sort_bits(s);
    while (bits) {
      int e = std::countr_zero(bits);
      bits &= bits - 1;
      Mask rest = x.bits() & ~(Mask{1} << (c.offset(s) + e));
      if ((j.closure_bits(rest) >> (c.offset(s) + e)) & 1)
        return {false, s, e};
    }
  }
  return {};
}

/// X generates and no proper subset of X generates.  Enumerates the proper
/// subsets of X directly, so it is an independent oracle for
/// is_basis ∧ is_irredundant (the two notions coincide on finite carriers).
inline bool is_minimal_basis(const ClosureOperator& j, const MSSubset& x,
                             int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "is_minimal_basis");
  if (!is_basis(j, x)) return false;
  const Mask full = j.carrier()->full_mask();
  Mask sub = x.bits();
  while (sub != 0) {
    sub = (sub - 1) & x.bits();
    if (j.closure_bits(sub) == full) return false;
    if (sub == 0) break;
  }
  return true;
}

struct IrBReport {
  std::vector<int> irb;                         // sorted basis sizes
  std::map<int, std::vector<Mask>> bases_by_size;  // witnesses, capped
  std::map<int, long long> counts_by_size;         // exact counts
  std::vector<std::pair<int, int>> gaps;  // consecutive IrB pairs, j − i ≥ 2
  int n_used = 0;                         // arity bound checked (0 = none)
  bool pass = true;
  std::optional<std::pair<int, int>> violation;  // gap with j − i > n − 1
};

/// Scans Sub(A) in canonical order and collects every irredundant basis,
/// its size, and the gaps between consecutive IrB members.
inline IrBReport irredundant_bases(const ClosureOperator& j,
                                   int cap = kDefaultCap,
                                   int witness_cap = 16) {
  require_cap(j.carrier(), cap, "irredundant_bases");
  IrBReport r;
  for (Mask m : all_subset_masks(j.carrier())) {
    MSSubset x(j.carrier(), m);
    if (!is_basis(j, x)) continue;
    if (!is_irredundant(j, x).irredundant) continue;
    int size = cardinal(x);
    if (r.irb.empty() || r.irb.back() != size) r.irb.push_back(size);
    auto& witnesses = r.bases_by_size[size];
    if (static_cast<int>(witnesses.size()) < witness_cap)
      witnesses.push_back(m);
    ++r.counts_by_size[size];
  }
  for (std::size_t k = 1; k < r.irb.size(); ++k)
    if (r.irb[k] - r.irb[k - 1] >= 2) r.gaps.push_back({r.irb[k - 1], r.irb[k]});
  return r;
}

/// Tarski-style gap bound for n-ary operators: verifies the n-arity
/// hypothesis, then requires every gap between consecutive IrB members to
/// satisfy j − i ≤ n − 1.  For n = 2 this is exactly convexity of IrB.
inline IrBReport check_tarski_gaps(const ClosureOperator& j, int n,
                                   int cap = kDefaultCap,
                                   int witness_cap = 16) {
  if (n < 2) throw error("check_tarski_gaps: the theorem requires n >= 2");
  require_cap(j.carrier(), cap, "check_tarski_gaps");
  if (auto w = n_ary_witness(j, n, cap))
    throw error("check_tarski_gaps: operator is not " + std::to_string(n) +
                "-ary; witness X=" +
                subset_spec(MSSubset(j.carrier(), *w)));
  IrBReport r = irredundant_bases(j, cap, witness_cap);
  r.n_used = n;
  for (auto [i, jj] : r.gaps)
    if (jj - i > n - 1) {
      r.pass = false;
      r.violation = {i, jj};
      break;
    }
  return r;
}

}  // namespace msalg

#endif  // MSALG_BASES_HPP_
