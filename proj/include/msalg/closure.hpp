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

#ifndef MSALG_CLOSURE_HPP_
#define MSALG_CLOSURE_HPP_

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "msalg/core.hpp"

namespace msalg {

inline constexpr Mask kNoMemo = ~Mask{0};

inline void require_cap(const CarrierPtr& c, int cap, const char* what) {
  if (c->total_size() > cap)
    throw error(std::string(what) + ": carrier size " +
                std::to_string(c->total_size()) + " exceeds tabulation cap " +
                std::to_string(cap));
}

/// A fully tabulated closure operator: every mask of Sub(A) maps to a mask.
/// Totality is structural; the closure axioms are checked on demand.
class ClosureTable {
 public:
  ClosureTable(CarrierPtr carrier, std::vector<Mask> map)
      : carrier_(std::move(carrier)), map_(std::move(map)) {
    const std::size_t expect = std::size_t{1} << carrier_->total_size();
    if (map_.size() != expect)
      throw error("ClosureTable: table not total over Sub(A)");
    for (Mask out : map_)
      if (out & ~carrier_->full_mask())
        throw error("ClosureTable: entry outside the carrier");
  }

  const CarrierPtr& carrier() const { return carrier_; }
  Mask at(Mask m) const { return map_[m]; }
  const std::vector<Mask>& raw() const { return map_; }

 private:
  CarrierPtr carrier_;
  std::vector<Mask> map_;  // indexed by subset mask
};

/// A closure operator with a single evaluation entry point.  Backed by a
/// table, an algebra (lazy Sg), or a derived n-ary minorant; results are
/// memoized per subset, invisibly to callers.
class ClosureOperator {
 public:
  ClosureOperator(CarrierPtr carrier, std::string kind,
                  std::function<Mask(Mask)> eval)
      : carrier_(std::move(carrier)),
        kind_(std::move(kind)),
        eval_(std::move(eval)),
        memo_(std::size_t{1} << carrier_->total_size(), kNoMemo) {}

  const CarrierPtr& carrier() const { return carrier_; }
  const std::string& kind() const { return kind_; }

  Mask closure_bits(Mask m) const {
    Mask& slot = memo_[m];
    if (slot == kNoMemo) slot = eval_(m);
    return slot;
  }

  MSSubset closure(const MSSubset& x) const {
    if (!same_carrier(x.carrier(), carrier_))
      throw error("ClosureOperator: carrier mismatch");
    return MSSubset(carrier_, closure_bits(x.bits()));
  }

 private:
  CarrierPtr carrier_;
  std::string kind_;
  std::function<Mask(Mask)> eval_;
  mutable std::vector<Mask> memo_;
};

inline ClosureOperator from_table(ClosureTable t) {
  auto table = std::make_shared<const ClosureTable>(std::move(t));
  return ClosureOperator(table->carrier(), "table",
                         [table](Mask m) { return table->at(m); });
}

inline ClosureOperator make_identity(CarrierPtr c) {
  return ClosureOperator(std::move(c), "table", [](Mask m) { return m; });
}

inline ClosureOperator make_constant_full(CarrierPtr c) {
  Mask full = c->full_mask();
  return ClosureOperator(std::move(c), "table",
                         [full](Mask) { return full; });
}

inline ClosureTable tabulate(const ClosureOperator& j,
                             int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "tabulate");
  std::vector<Mask> map(std::size_t{1} << j.carrier()->total_size());
  for (Mask m = 0; m < map.size(); ++m) map[m] = j.closure_bits(m);
  return ClosureTable(j.carrier(), std::move(map));
}

struct AxiomReport {
  bool extensive = true;
  bool isotone = true;
  bool idempotent = true;
  std::optional<Mask> extensive_witness;          // X with X ⊄ J(X)
  std::optional<std::pair<Mask, Mask>> isotone_witness;  // X ⊆ Y, J(X) ⊄ J(Y)
  std::optional<Mask> idempotent_witness;         // X with J(J(X)) ≠ J(X)

  bool all() const { return extensive && isotone && idempotent; }
};

/// Checks extensivity, isotonicity, and idempotence over all of Sub(A).  Isotonicity is
/// checked along covering pairs X ⊆ X ∪ {x}, which is equivalent on the
/// subset lattice.
inline AxiomReport check_closure_axioms(const ClosureTable& t) {
  AxiomReport r;
  const Carrier& c = *t.carrier();
  const Mask full = c.full_mask();
  for (Mask m = 0; m <= full; ++m) {
    Mask jm = t.at(m);
    if (r.extensive && (m & ~jm)) {
      r.extensive = false;
      r.extensive_witness = m;
    }
    if (r.idempotent && t.at(jm) != jm) {
      r.idempotent = false;
      r.idempotent_witness = m;
    }
    if (r.isotone) {
      for (int b = 0; b < c.total_size() && r.isotone; ++b) {
        if ((m >> b) & 1) continue;
        Mask bigger = m | (Mask{1} << b);
        if (jm & ~t.at(bigger)) {
          r.isotone = false;
          r.isotone_witness = {m, bigger};
        }
      }
    }
  }
  return r;
}

/// J ≤ K: pointwise containment of closures over all of Sub(A).
inline bool leq(const ClosureOperator& j, const ClosureOperator& k,
                int cap = kDefaultCap) {
  if (!same_carrier(j.carrier(), k.carrier()))
    throw error("leq: carrier mismatch");
  require_cap(j.carrier(), cap, "leq");
  const Mask full = j.carrier()->full_mask();
  for (Mask m = 0; m <= full; ++m)
    if (j.closure_bits(m) & ~k.closure_bits(m)) return false;
  return true;
}

inline Mask closure_le_n_bits(const ClosureOperator& j, int n, Mask x) {
  Mask acc = 0;
  Mask sub = x;
  for (;;) {
    if (std::popcount(sub) <= n) acc |= j.closure_bits(sub);
    if (sub == 0) break;
    sub = (sub - 1) & x;
  }
  return acc;
}

/// J_{≤n}(X): union of J(Y) over all Y ⊆ X with cardinal ≤ n.
inline MSSubset closure_le_n(const ClosureOperator& j, int n,
                             const MSSubset& x) {
  return MSSubset(j.carrier(), closure_le_n_bits(j, n, x.bits()));
}

inline Mask closure_le_n_omega_bits(const ClosureOperator& j, int n, Mask x) {
  // Union over the tower stages; the accumulated chain ascends, so it
  // stabilizes within total_size + 1 rounds.
  Mask acc = x;
  for (int round = 0; round <= j.carrier()->total_size() + 1; ++round) {
    Mask next = acc | closure_le_n_bits(j, n, acc);
    if (next == acc) return acc;
    acc = next;
  }
  return acc;
}

/// J_{≤n}^ω(X): least fixed point of the tower above X.
inline MSSubset closure_le_n_omega(const ClosureOperator& j, int n,
                                   const MSSubset& x) {
  return MSSubset(j.carrier(), closure_le_n_omega_bits(j, n, x.bits()));
}

/// The derived operator J_{≤n}^ω as a ClosureOperator (the greatest n-ary
/// minorant of J for n ≥ 1).
inline ClosureOperator make_nary_minorant(const ClosureOperator& j, int n) {
  auto base = std::make_shared<const ClosureOperator>(j);
  return ClosureOperator(
      j.carrier(), "derived",
      [base, n](Mask m) { return closure_le_n_omega_bits(*base, n, m); });
}

// J_{≤n} of every mask at once, by lattice DP: every ≤n-submask of m is
// either m itself or a submask of some m minus one bit.
inline std::vector<Mask> tabulate_le_n(const ClosureOperator& j, int n) {
  const Carrier& c = *j.carrier();
  std::vector<Mask> jn(std::size_t{1} << c.total_size(), 0);
  for (Mask m = 0; m <= c.full_mask(); ++m) {
    Mask acc = std::popcount(m) <= n ? j.closure_bits(m) : 0;
    Mask rest = m;
    while (rest) {
      Mask bit = rest & (Mask{0} - rest);
      rest ^= bit;
      acc |= jn[m ^ bit];
    }
    jn[m] = acc;
  }
  return jn;
}

/// Returns a witness X with J_{≤n}^ω(X) ≠ J(X), or nullopt if J is n-ary.
inline std::optional<Mask> n_ary_witness(const ClosureOperator& j, int n,
                                         int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "is_n_ary");
  const int total = j.carrier()->total_size();
  std::vector<Mask> jn = tabulate_le_n(j, n);
  for (Mask m = 0; m <= j.carrier()->full_mask(); ++m) {
    Mask acc = m;
    for (int round = 0; round <= total + 1; ++round) {
      Mask next = acc | jn[acc];
      if (next == acc) break;
      acc = next;
    }
    if (acc != j.closure_bits(m)) return m;
  }
  return std::nullopt;
}

/// J is n-ary iff J = J_{≤n}^ω.
inline bool is_n_ary(const ClosureOperator& j, int n, int cap = kDefaultCap) {
  return !n_ary_witness(j, n, cap).has_value();
}

/// Fixed-point route: J is n-ary iff every X containing the
/// closures of all its ≤n-subsets is a fixed point of J.  Decided by a
/// direct submask scan, independently of the tower route.
inline bool is_n_ary_via_fixed_points(const ClosureOperator& j, int n,
                                      int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "is_n_ary_via_fixed_points");
  for (Mask x = 0; x <= j.carrier()->full_mask(); ++x) {
    bool hypothesis = true;
    Mask sub = x;
    for (;;) {
      if (std::popcount(sub) <= n && (j.closure_bits(sub) & ~x)) {
        hypothesis = false;
        break;
      }
      if (sub == 0) break;
      sub = (sub - 1) & x;
    }
    if (hypothesis && j.closure_bits(x) != x) return false;
  }
  return true;
}

struct UniformResult {
  bool uniform = true;
  Mask witness_x = 0;  // valid when !uniform: supp(X) = supp(Y) but
  Mask witness_y = 0;  // supp(J(X)) ≠ supp(J(Y))
};

/// Uniformity: support-equal subsets have support-equal closures.  Buckets the
/// scan by the 2^|S| support masks; the first closure support seen in a
/// bucket is the reference.
inline UniformResult is_uniform(const ClosureOperator& j,
                                int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "is_uniform");
  const CarrierPtr& c = j.carrier();
  const std::size_t buckets = std::size_t{1} << c->num_sorts();
  std::vector<Mask> first(buckets, kNoMemo);
  std::vector<unsigned> ref(buckets, 0);
  for (Mask m = 0; m <= c->full_mask(); ++m) {
    unsigned supp = support_mask(c, m);
    unsigned closure_supp = support_mask(c, j.closure_bits(m));
    if (first[supp] == kNoMemo) {
      first[supp] = m;
      ref[supp] = closure_supp;
    } else if (ref[supp] != closure_supp) {
      return {false, first[supp], m};
    }
  }
  return {};
}

/// Algebraicity: J(X) is the union of J over the finite subsets of X.  On a finite carrier X is a finite subset
/// of itself, so this always holds for a closure operator; it is computed
/// anyway as a sanity check.
inline bool is_algebraic(const ClosureOperator& j, int cap = kDefaultCap) {
  require_cap(j.carrier(), cap, "is_algebraic");
  for (Mask x = 0; x <= j.carrier()->full_mask(); ++x) {
    Mask acc = 0;
    Mask sub = x;
    for (;;) {
      acc |= j.closure_bits(sub);
      if (sub == 0) break;
      sub = (sub - 1) & x;
    }
    if (acc != j.closure_bits(x)) return false;
  }
  return true;
}

}  // namespace msalg

#endif  // MSALG_CLOSURE_HPP_
