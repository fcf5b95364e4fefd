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

#ifndef MSALG_SYNTHESIS_HPP_
#define MSALG_SYNTHESIS_HPP_

#include <string>
#include <utility>
#include <vector>

#include "msalg/algebra.hpp"
#include "msalg/closure.hpp"
#include "msalg/core.hpp"

namespace msalg {

class not_closure_error : public error {
 public:
  explicit not_closure_error(const AxiomReport& report)
      : error("synthesize: operator violates the closure axioms"),
        report_(report) {}
  const AxiomReport& report() const { return report_; }

 private:
  AxiomReport report_;
};

class not_uniform_error : public error {
 public:
  not_uniform_error(Mask x, Mask y)
      : error("synthesize: operator is not uniform"), x_(x), y_(y) {}
  Mask witness_x() const { return x_; }
  Mask witness_y() const { return y_; }

 private:
  Mask x_, y_;
};

class not_n_ary_error : public error {
 public:
  not_n_ary_error(int n, Mask witness)
      : error("synthesize_bounded: operator is not " + std::to_string(n) +
              "-ary"),
        n_(n),
        witness_(witness) {}
  int n() const { return n_; }
  Mask witness() const { return witness_; }

 private:
  int n_;
  Mask witness_;
};

/// Which subset/element pair a synthesized operation encodes.
struct OpProvenance {
  Mask x = 0;     // the generating subset X
  int sort = 0;   // the coarity s
  int b = 0;      // the designated element b ∈ J(X)_s
  Word word;      // canonical_word(X)
};

struct SynthesizedAlgebra {
  Algebra algebra;
  std::vector<OpProvenance> provenance;  // parallel to the signature ops
};

/// The word listing each sort of support(X) ascending, repeated card(X_s)
/// times.  |result|_t = card(X_t) for every t.
inline Word canonical_word(const MSSubset& x) {
  Word w;
  for (int s = 0; s < x.carrier()->num_sorts(); ++s)
    for (int k = 0; k < x.element_count(s); ++k) w.sorts.push_back(s);
  return w;
}

/// M^{w,a}: per-sort collection of the tuple's entries; duplicates collapse.
inline MSSubset m_of(const CarrierPtr& c, const Word& w,
                     const std::vector<int>& a) {
  if (a.size() != static_cast<std::size_t>(w.length()))
    throw error("m_of: tuple length does not match word");
  Mask bits = 0;
  for (int i = 0; i < w.length(); ++i) {
    int s = w.sorts[i];
    if (a[i] < 0 || a[i] >= c->size(s))
      throw error("m_of: tuple entry out of range");
    bits |= Mask{1} << (c->offset(s) + a[i]);
  }
  return MSSubset(c, bits);
}

/// The deterministic choice function: minimum element id of Y_s.
inline int choose(const MSSubset& y, int s) {
  Mask bits = y.sort_bits(s);
  if (bits == 0) throw error("choose: empty coordinate at sort " +
                             y.carrier()->sorts().name(s));
  return std::countr_zero(bits);
}

namespace detail {

inline std::string synthesized_op_name(const MSSubset& x, int sort, int b) {
  return "F|" + subset_spec(x) + "|" + x.carrier()->sorts().name(sort) + "|" +
         std::to_string(b);
}

// The ascending per-sort-block tuple a_Y realizing Y = M^{w_Y, a_Y}.
inline std::vector<int> canonical_tuple(const MSSubset& x) {
  std::vector<int> a;
  for (int s = 0; s < x.carrier()->num_sorts(); ++s) {
    Mask bits = x.sort_bits(s);
    while (bits) {
      a.push_back(std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return a;
}

inline SynthesizedAlgebra synthesize_impl(const ClosureOperator& j,
                                          int bound, int cap) {
  require_cap(j.carrier(), cap, "synthesize");
  const CarrierPtr& c = j.carrier();

  AxiomReport axioms = check_closure_axioms(tabulate(j, cap));
  if (!axioms.all()) throw not_closure_error(axioms);
  UniformResult uni = is_uniform(j, cap);
  if (!uni.uniform) throw not_uniform_error(uni.witness_x, uni.witness_y);
  if (bound >= 0) {
    if (auto w = n_ary_witness(j, bound, cap)) throw not_n_ary_error(bound, *w);
  }

  std::vector<OpDecl> decls;
  std::vector<OpProvenance> provenance;
  std::vector<std::vector<int>> tables;

  for (Mask xm : all_subset_masks(c)) {
    MSSubset x(c, xm);
    if (bound >= 0 && cardinal(x) > bound) continue;
    Word w = canonical_word(x);
    Mask jx = j.closure_bits(xm);
    for (int s = 0; s < c->num_sorts(); ++s) {
      Mask bbits = (jx >> c->offset(s)) & ((Mask{1} << c->size(s)) - 1);
      while (bbits) {
        int b = std::countr_zero(bbits);
        bbits &= bbits - 1;
        decls.push_back({synthesized_op_name(x, s, b), w, s});
        provenance.push_back({xm, s, b, w});

        std::size_t rows = 1;
        for (int ws : w.sorts) rows *= static_cast<std::size_t>(c->size(ws));
        std::vector<int> table(rows);
        std::vector<int> a(w.length(), 0);
        for (std::size_t row = 0; row < rows; ++row) {
          MSSubset m = m_of(c, w, a);
          table[row] = (m == x)
                           ? b
                           : choose(MSSubset(c, j.closure_bits(m.bits())), s);
          for (int i = w.length() - 1; i >= 0; --i) {
            if (++a[i] < c->size(w.sorts[i])) break;
            a[i] = 0;
          }
        }
        tables.push_back(std::move(table));
      }
    }
  }

  Algebra result(c, Signature(c->sorts(), std::move(decls)),
                 std::move(tables));

  // Post-construction guard: Sg of the synthesized algebra must equal J on
  // every subset.
  ClosureOperator sg = as_closure_operator(result);
  for (Mask m = 0; m <= c->full_mask(); ++m)
    if (sg.closure_bits(m) != j.closure_bits(m))
      throw error("synthesize: internal guard failed at X=" +
                  subset_spec(MSSubset(c, m)));

  return {std::move(result), std::move(provenance)};
}

}  // namespace detail

/// From a uniform closure operator J, an algebra whose
/// Sg equals J on all of Sub(A).  One operation per (X, sort, b ∈ J(X)_s),
/// of rank (canonical_word(X), s); its table sends a to b when m_of(w,a) = X
/// and to choose(J(m_of(w,a)), s) otherwise.
inline SynthesizedAlgebra synthesize(const ClosureOperator& j,
                                     int cap = kDefaultCap) {
  return detail::synthesize_impl(j, -1, cap);
}

/// The construction restricted to operations whose word length is at most n.  Requires J to be n-ary.
inline SynthesizedAlgebra synthesize_bounded(const ClosureOperator& j, int n,
                                             int cap = kDefaultCap) {
  if (n < 0) throw error("synthesize_bounded: negative bound");
  return detail::synthesize_impl(j, n, cap);
}

}  // namespace msalg

#endif  // MSALG_SYNTHESIS_HPP_
