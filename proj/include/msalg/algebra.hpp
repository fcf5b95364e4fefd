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

#ifndef MSALG_ALGEBRA_HPP_
#define MSALG_ALGEBRA_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "msalg/closure.hpp"
#include "msalg/core.hpp"

namespace msalg {

/// A formal operation declaration: name, arity word, coarity sort.
struct OpDecl {
  std::string name;
  Word arity;
  int coarity = 0;
};

class Signature {
 public:
  Signature(Sorts sorts, std::vector<OpDecl> ops)
      : sorts_(std::move(sorts)), ops_(std::move(ops)) {
    for (std::size_t i = 0; i < ops_.size(); ++i) {
      const OpDecl& op = ops_[i];
      if (op.coarity < 0 || op.coarity >= sorts_->count())
        throw error("Signature: bad coarity for op '" + op.name + "'");
      for (int s : op.arity.sorts)
        if (s < 0 || s >= sorts_->count())
          throw error("Signature: bad arity sort for op '" + op.name + "'");
      for (std::size_t k = i + 1; k < ops_.size(); ++k)
        if (ops_[k].name == op.name)
          throw error("Signature: duplicate op name '" + op.name + "'");
    }
  }

  const Sorts& sorts() const { return *sorts_; }
  int num_ops() const { return static_cast<int>(ops_.size()); }
  const OpDecl& op(int i) const { return ops_.at(i); }
  const std::vector<OpDecl>& ops() const { return ops_; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < ops_.size(); ++i)
      if (ops_[i].name == name) return static_cast<int>(i);
    throw error("Signature: unknown op '" + name + "'");
  }

 private:
  std::optional<Sorts> sorts_;
  std::vector<OpDecl> ops_;
};

/// A many-sorted algebra with fully tabulated operations.  The table of an
/// op with arity w is indexed row-major over A_w = Π A_{w_i} (first position
/// most significant); a nullary op has the single entry of the empty tuple.
class Algebra {
 public:
  Algebra(CarrierPtr carrier, Signature sig,
          std::vector<std::vector<int>> tables)
      : carrier_(std::move(carrier)),
        sig_(std::move(sig)),
        tables_(std::move(tables)) {
    if (!(carrier_->sorts() == sig_.sorts()))
      throw error("Algebra: signature sorts differ from carrier sorts");
    if (tables_.size() != static_cast<std::size_t>(sig_.num_ops()))
      throw error("Algebra: one table per op required");
    for (int i = 0; i < sig_.num_ops(); ++i) {
      const OpDecl& op = sig_.op(i);
      std::size_t expect = 1;
      for (int s : op.arity.sorts)
        expect *= static_cast<std::size_t>(carrier_->size(s));
      if (tables_[i].size() != expect)
        throw error("Algebra: table for op '" + op.name + "' not total (" +
                    std::to_string(tables_[i].size()) + " of " +
                    std::to_string(expect) + " entries)");
      for (int out : tables_[i])
        if (out < 0 || out >= carrier_->size(op.coarity))
          throw error("Algebra: table output out of range for op '" +
                      op.name + "'");
    }
  }

  const CarrierPtr& carrier() const { return carrier_; }
  const Signature& signature() const { return sig_; }
  const std::vector<int>& table(int op) const { return tables_.at(op); }

  std::size_t tuple_index(int op, const std::vector<int>& args) const {
    const OpDecl& decl = sig_.op(op);
    if (args.size() != static_cast<std::size_t>(decl.arity.length()))
      throw error("apply: arity mismatch for op '" + decl.name + "'");
    std::size_t idx = 0;
    for (int i = 0; i < decl.arity.length(); ++i) {
      int s = decl.arity.sorts[i];
      if (args[i] < 0 || args[i] >= carrier_->size(s))
        throw error("apply: argument out of range for op '" + decl.name + "'");
      idx = idx * static_cast<std::size_t>(carrier_->size(s)) +
            static_cast<std::size_t>(args[i]);
    }
    return idx;
  }

  int apply(int op, const std::vector<int>& args) const {
    return tables_[op][tuple_index(op, args)];
  }
  int apply(const std::string& name, const std::vector<int>& args) const {
    return apply(sig_.index_of(name), args);
  }

 private:
  CarrierPtr carrier_;
  Signature sig_;
  std::vector<std::vector<int>> tables_;
};

inline int max_arity(const Algebra& a) {
  int n = 0;
  for (const OpDecl& op : a.signature().ops())
    n = std::max(n, op.arity.length());
  return n;
}

namespace detail {

// Visits every tuple of op `op` whose entries are drawn per position from
// X (mixed-radix over the per-position coordinate lists of X).  The visitor
// receives the table output of the tuple.  An empty coordinate at any arity
// position yields no tuples.
template <typename Visit>
void for_each_tuple_output(const Algebra& a, int op, Mask x_bits, Visit visit) {
  const OpDecl& decl = a.signature().op(op);
  const Carrier& c = *a.carrier();
  const int len = decl.arity.length();
  if (len == 0) {
    visit(a.table(op)[0]);
    return;
  }
  // Per-position element lists and strides.
  std::vector<std::vector<int>> elems(len);
  for (int i = 0; i < len; ++i) {
    int s = decl.arity.sorts[i];
    Mask bits = (x_bits >> c.offset(s)) & ((Mask{1} << c.size(s)) - 1);
    if (bits == 0) return;
    while (bits) {
      int e = std::countr_zero(bits);
      bits &= bits - 1;
      elems[i].push_back(e);
    }
  }
  std::vector<std::size_t> stride(len, 1);
  for (int i = len - 2; i >= 0; --i)
    stride[i] = stride[i + 1] *
                static_cast<std::size_t>(c.size(decl.arity.sorts[i + 1]));
  std::vector<int> pos(len, 0);
  const std::vector<int>& table = a.table(op);
  for (;;) {
    std::size_t idx = 0;
    for (int i = 0; i < len; ++i)
      idx += stride[i] * static_cast<std::size_t>(elems[i][pos[i]]);
    visit(table[idx]);
    int i = len - 1;
    while (i >= 0 && ++pos[i] == static_cast<int>(elems[i].size()))
      pos[i--] = 0;
    if (i < 0) break;
  }
}

}  // namespace detail

struct SubalgebraResult {
  bool closed = true;
  int op = -1;                 // valid when !closed
  std::vector<int> args;       // tuple witnessing the escape
};

/// X is a subalgebra iff it is closed under every operation of A.
inline SubalgebraResult is_subalgebra(const Algebra& a, const MSSubset& x) {
  const Carrier& c = *a.carrier();
  if (!same_carrier(x.carrier(), a.carrier()))
    throw error("is_subalgebra: carrier mismatch");
  for (int op = 0; op < a.signature().num_ops(); ++op) {
    const OpDecl& decl = a.signature().op(op);
    const int len = decl.arity.length();
    std::vector<std::vector<int>> elems(len);
    bool feasible = true;
    for (int i = 0; i < len && feasible; ++i) {
      Mask bits = x.sort_bits(decl.arity.sorts[i]);
      if (bits == 0) feasible = false;
      while (bits) {
        elems[i].push_back(std::countr_zero(bits));
        bits &= bits - 1;
      }
    }
    if (!feasible) continue;
    std::vector<int> pos(len, 0);
    for (;;) {
      std::vector<int> args(len);
      for (int i = 0; i < len; ++i) args[i] = elems[i][pos[i]];
      int out = a.apply(op, args);
      if (!x.contains(decl.coarity, out)) return {false, op, args};
      int i = len - 1;
      while (i >= 0 && ++pos[i] == static_cast<int>(elems[i].size()))
        pos[i--] = 0;
      if (i < 0) break;
    }
    (void)c;
  }
  return {};
}

inline Mask e_step_bits(const Algebra& a, Mask x) {
  Mask out = x;
  const Carrier& c = *a.carrier();
  for (int op = 0; op < a.signature().num_ops(); ++op) {
    int coarity = a.signature().op(op).coarity;
    int off = c.offset(coarity);
    detail::for_each_tuple_output(
        a, op, x, [&](int v) { out |= Mask{1} << (off + v); });
  }
  return out;
}

/// X together with all one-step operation images of tuples drawn from X.
inline MSSubset e_step(const Algebra& a, const MSSubset& x) {
  if (!same_carrier(x.carrier(), a.carrier()))
    throw error("e_step: carrier mismatch");
  return MSSubset(a.carrier(), e_step_bits(a, x.bits()));
}

inline Mask sg_via_e_bits(const Algebra& a, Mask x) {
  for (int round = 0; round <= a.carrier()->total_size() + 1; ++round) {
    Mask next = e_step_bits(a, x);
    if (next == x) return x;
    x = next;
  }
  return x;
}

/// Sg_A(X) as the least fixed point of the one-step closure tower above X.
inline MSSubset sg_via_e(const Algebra& a, const MSSubset& x) {
  if (!same_carrier(x.carrier(), a.carrier()))
    throw error("sg_via_e: carrier mismatch");
  return MSSubset(a.carrier(), sg_via_e_bits(a, x.bits()));
}

/// All subalgebra masks of A (Sub(**A**)), ascending by raw mask.
inline std::vector<Mask> subalgebra_masks(const Algebra& a,
                                          int cap = kDefaultCap) {
  require_cap(a.carrier(), cap, "subalgebra_masks");
  std::vector<Mask> out;
  for (Mask m = 0; m <= a.carrier()->full_mask(); ++m)
    if (is_subalgebra(a, MSSubset(a.carrier(), m)).closed) out.push_back(m);
  return out;
}

/// The intersection of all subalgebras containing X.  The independent
/// oracle for sg_via_e.
inline MSSubset sg_via_intersection(const Algebra& a, const MSSubset& x,
                                    int cap = kDefaultCap) {
  require_cap(a.carrier(), cap, "sg_via_intersection");
  Mask acc = a.carrier()->full_mask();
  for (Mask m = 0; m <= a.carrier()->full_mask(); ++m) {
    if ((x.bits() & ~m) != 0) continue;
    if (is_subalgebra(a, MSSubset(a.carrier(), m)).closed) acc &= m;
  }
  return MSSubset(a.carrier(), acc);
}

/// Wraps Sg_A as an algebra-backed ClosureOperator.  Evaluation follows the
/// E_A chain; every intermediate stage shares the memo since Sg of a chain
/// element equals Sg of its successor.
inline ClosureOperator as_closure_operator(Algebra a) {
  auto alg = std::make_shared<const Algebra>(std::move(a));
  auto memo = std::make_shared<std::vector<Mask>>(
      std::size_t{1} << alg->carrier()->total_size(), kNoMemo);
  return ClosureOperator(
      alg->carrier(), "algebra", [alg, memo](Mask x) -> Mask {
        std::vector<Mask> chain;
        while ((*memo)[x] == kNoMemo) {
          Mask e = e_step_bits(*alg, x);
          if (e == x) {
            (*memo)[x] = x;
            break;
          }
          chain.push_back(x);
          x = e;
        }
        Mask r = (*memo)[x];
        for (Mask m : chain) (*memo)[m] = r;
        return r;
      });
}

}  // namespace msalg

#endif  // MSALG_ALGEBRA_HPP_
