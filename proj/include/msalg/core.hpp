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

#ifndef MSALG_CORE_HPP_
#define MSALG_CORE_HPP_

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace msalg {

// Combined bitmask over the whole carrier: sort s occupies bits
// [offset(s), offset(s) + size(s)).  Total carrier size is limited to
// kMaxCarrierBits elements so every subset fits in one word.
using Mask = std::uint64_t;

inline constexpr int kMaxCarrierBits = 24;

// Default cap on the total carrier size for commands that tabulate over all
// of Sub(A).  Overridable per call site.
inline constexpr int kDefaultCap = 16;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ambient ordered list of sort names; a sort's position is its index,
/// and that index order is the canonical order on sorts everywhere.
class Sorts {
 public:
  explicit Sorts(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw error("Sorts: empty sort list");
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j])
          throw error("Sorts: duplicate sort name '" + names_[i] + "'");
  }

  int count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int s) const { return names_.at(s); }
  const std::vector<std::string>& names() const { return names_; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<int>(i);
    throw error("Sorts: unknown sort '" + name + "'");
  }

  bool operator==(const Sorts& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
};

/// A finite S-sorted carrier: per-sort element counts.  Elements of sort s
/// are the dense ids 0..size(s)-1.
class Carrier {
 public:
  Carrier(Sorts sorts, std::vector<int> sizes)
      : sorts_(std::move(sorts)), sizes_(std::move(sizes)) {
    if (static_cast<int>(sizes_.size()) != sorts_.count())
      throw error("Carrier: one size per sort required");
    int off = 0;
    for (int sz : sizes_) {
      if (sz < 0) throw error("Carrier: negative sort size");
      offsets_.push_back(off);
      off += sz;
    }
    total_ = off;
    if (total_ > kMaxCarrierBits)
      throw error("Carrier: total size " + std::to_string(total_) +
                  " exceeds representation limit " +
                  std::to_string(kMaxCarrierBits));
  }

  const Sorts& sorts() const { return sorts_; }
  int num_sorts() const { return sorts_.count(); }
  int size(int s) const { return sizes_.at(s); }
  const std::vector<int>& sizes() const { return sizes_; }
  int offset(int s) const { return offsets_.at(s); }
  int total_size() const { return total_; }

  Mask sort_mask(int s) const {
    return ((Mask{1} << sizes_[s]) - 1) << offsets_[s];
  }
  Mask full_mask() const { return (Mask{1} << total_) - 1; }

  bool operator==(const Carrier& o) const {
    return sorts_ == o.sorts_ && sizes_ == o.sizes_;
  }

 private:
  Sorts sorts_;
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

inline CarrierPtr make_carrier(std::vector<std::string> sort_names,
                               std::vector<int> sizes) {
  return std::make_shared<const Carrier>(Sorts(std::move(sort_names)),
                                         std::move(sizes));
}

inline bool same_carrier(const CarrierPtr& a, const CarrierPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// An S-indexed family of subsets of the carrier, packed into one mask.
class MSSubset {
 public:
  MSSubset(CarrierPtr carrier, Mask bits) : carrier_(std::move(carrier)), bits_(bits) {
    if (!carrier_) throw error("MSSubset: null carrier");
    if (bits_ & ~carrier_->full_mask())
      throw error("MSSubset: bits outside the carrier");
  }

  static MSSubset empty(CarrierPtr c) { return MSSubset(std::move(c), 0); }
  static MSSubset full(CarrierPtr c) {
    Mask m = c->full_mask();
    return MSSubset(std::move(c), m);
  }

  const CarrierPtr& carrier() const { return carrier_; }
  Mask bits() const { return bits_; }

  // Per-sort bitmask over element ids 0..size(s)-1.
  Mask sort_bits(int s) const {
    return (bits_ >> carrier_->offset(s)) & ((Mask{1} << carrier_->size(s)) - 1);
  }

  bool contains(int s, int x) const {
    return (bits_ >> (carrier_->offset(s) + x)) & 1u;
  }

  MSSubset with(int s, int x) const {
    check_element(s, x);
    return MSSubset(carrier_, bits_ | (Mask{1} << (carrier_->offset(s) + x)));
  }
  MSSubset without(int s, int x) const {
    check_element(s, x);
    return MSSubset(carrier_, bits_ & ~(Mask{1} << (carrier_->offset(s) + x)));
  }

  MSSubset unite(const MSSubset& o) const {
    require_same(o);
    return MSSubset(carrier_, bits_ | o.bits_);
  }
  MSSubset intersect(const MSSubset& o) const {
    require_same(o);
    return MSSubset(carrier_, bits_ & o.bits_);
  }

  bool operator==(const MSSubset& o) const {
    return same_carrier(carrier_, o.carrier_) && bits_ == o.bits_;
  }
  bool operator!=(const MSSubset& o) const { return !(*this == o); }

  void require_same(const MSSubset& o) const {
    if (!same_carrier(carrier_, o.carrier_))
      throw error("MSSubset: carrier mismatch");
  }

  int element_count(int s) const { return std::popcount(sort_bits(s)); }

 private:
  void check_element(int s, int x) const {
    if (s < 0 || s >= carrier_->num_sorts() || x < 0 || x >= carrier_->size(s))
      throw error("MSSubset: element out of range");
  }

  CarrierPtr carrier_;
  Mask bits_;
};

enum class SubsetRel { not_subset, subset_proper, subset_equal };

inline SubsetRel is_subset(const MSSubset& x, const MSSubset& y) {
  x.require_same(y);
  if ((x.bits() & ~y.bits()) != 0) return SubsetRel::not_subset;
  return x.bits() == y.bits() ? SubsetRel::subset_equal
                              : SubsetRel::subset_proper;
}

/// Kronecker delta: {x} at sort t, empty elsewhere.
inline MSSubset delta(const CarrierPtr& c, int t, int x) {
  if (t < 0 || t >= c->num_sorts() || x < 0 || x >= c->size(t))
    throw error("delta: element out of range");
  return MSSubset(c, Mask{1} << (c->offset(t) + x));
}

/// The sorts at which X is nonempty, ascending.
inline std::vector<int> support(const MSSubset& x) {
  std::vector<int> out;
  for (int s = 0; s < x.carrier()->num_sorts(); ++s)
    if (x.sort_bits(s) != 0) out.push_back(s);
  return out;
}

/// Support as a bitmask over sort indices.
inline unsigned support_mask(const CarrierPtr& c, Mask bits) {
  unsigned m = 0;
  for (int s = 0; s < c->num_sorts(); ++s)
    if (bits & c->sort_mask(s)) m |= 1u << s;
  return m;
}

inline unsigned support_mask(const MSSubset& x) {
  return support_mask(x.carrier(), x.bits());
}

/// Size of the disjoint union: sum of per-sort set sizes.
inline int cardinal(const MSSubset& x) { return std::popcount(x.bits()); }

/// Canonical total order on subsets: ascending cardinal, then lexicographic
/// on the sequence of per-sort bitmasks in sort-index order.
inline bool canonical_less(const CarrierPtr& c, Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb) return pa < pb;
  for (int s = 0; s < c->num_sorts(); ++s) {
    Mask sa = (a >> c->offset(s)) & ((Mask{1} << c->size(s)) - 1);
    Mask sb = (b >> c->offset(s)) & ((Mask{1} << c->size(s)) - 1);
    if (sa != sb) return sa < sb;
  }
  return false;
}

/// All masks of Sub(A) in canonical order.  2^total entries.
inline std::vector<Mask> all_subset_masks(const CarrierPtr& c) {
  std::vector<Mask> out;
  out.reserve(std::size_t{1} << c->total_size());
  for (Mask m = 0; m <= c->full_mask(); ++m) out.push_back(m);
  std::stable_sort(out.begin(), out.end(),
                   [&](Mask a, Mask b) { return canonical_less(c, a, b); });
  return out;
}

/// All Y ⊆ X with cardinal(Y) ≤ n, each once, in canonical order.
inline std::vector<MSSubset> enumerate_subsets_le(const MSSubset& x, int n) {
  std::vector<Mask> masks;
  Mask m = x.bits();
  Mask sub = m;
  for (;;) {
    if (std::popcount(sub) <= n) masks.push_back(sub);
    if (sub == 0) break;
    sub = (sub - 1) & m;
  }
  std::sort(masks.begin(), masks.end(), [&](Mask a, Mask b) {
    return canonical_less(x.carrier(), a, b);
  });
  std::vector<MSSubset> out;
  out.reserve(masks.size());
  for (Mask mm : masks) out.emplace_back(x.carrier(), mm);
  return out;
}

/// A finite sequence of sort indices; element of the free monoid S*.
struct Word {
  std::vector<int> sorts;

  int length() const { return static_cast<int>(sorts.size()); }
  // |w|_s: number of occurrences of sort s.
  int count(int s) const {
    return static_cast<int>(std::count(sorts.begin(), sorts.end(), s));
  }
  bool operator==(const Word& o) const { return sorts == o.sorts; }
};

inline Word concat(const Word& w, const Word& v) {
  Word out = w;
  out.sorts.insert(out.sorts.end(), v.sorts.begin(), v.sorts.end());
  return out;
}

inline std::string subset_spec(const MSSubset& x) {
  std::ostringstream os;
  bool first = true;
  for (int s = 0; s < x.carrier()->num_sorts(); ++s) {
    Mask bits = x.sort_bits(s);
    if (!bits) continue;
    if (!first) os << ';';
    first = false;
    os << x.carrier()->sorts().name(s) << ':';
    bool fe = true;
    for (int e = 0; e < x.carrier()->size(s); ++e)
      if ((bits >> e) & 1) {
        if (!fe) os << ',';
        fe = false;
        os << e;
      }
  }
  return os.str();
}

/// Parses the `s:0,1;t:0` subset syntax (empty string means the empty set).
inline MSSubset parse_subset_spec(const CarrierPtr& c, const std::string& spec) {
  Mask bits = 0;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.empty()) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos)
      throw error("subset spec: missing ':' in '" + part + "'");
    int s = c->sorts().index_of(part.substr(0, colon));
    std::stringstream es(part.substr(colon + 1));
    std::string id;
    while (std::getline(es, id, ',')) {
      if (id.empty() || id.find_first_not_of("0123456789") != std::string::npos)
        throw error("subset spec: bad element id '" + id + "'");
      int x = std::stoi(id);
      if (x >= c->size(s))
        throw error("subset spec: element " + id + " out of range for sort " +
                    c->sorts().name(s));
      bits |= Mask{1} << (c->offset(s) + x);
    }
  }
  return MSSubset(c, bits);
}

}  // namespace msalg

#endif  // MSALG_CORE_HPP_
