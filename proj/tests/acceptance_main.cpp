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

// Acceptance suite: one criterion per function, one PASS/FAIL line each.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "msalg/io.hpp"
#include "msalg/msalg.hpp"

using namespace msalg;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& what, bool ok,
            const std::string& detail = "") {
  std::cout << (ok ? "PASS" : "FAIL") << ": criterion " << criterion << " ("
            << what << ")";
  if (!detail.empty()) std::cout << " " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

// The main corpus: 200 seeded algebras, carrier <= 10, arity <= 3.
std::vector<Algebra> main_corpus() {
  std::vector<Algebra> out;
  GenParams p;
  p.num_sorts = 2;
  p.min_size = 1;
  p.max_size = 5;
  p.min_ops = 1;
  p.max_ops = 4;
  p.max_arity = 3;
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    p.seed = seed;
    out.push_back(random_algebra(p));
  }
  return out;
}

std::vector<ClosureTable> table_corpus() {
  std::vector<ClosureTable> out;
  GenParams p;
  p.num_sorts = 2;
  p.min_size = 1;
  p.max_size = 2;
  p.coverage = 0.3;
  for (std::uint64_t seed = 2000; seed < 2100; ++seed) {
    p.seed = seed;
    out.push_back(random_closure_table(p));
  }
  return out;
}

// A small-carrier corpus where full synthesis is tractable (carrier <= 6).
std::vector<Algebra> synth_corpus(std::size_t count, int max_size,
                                  std::uint64_t first_seed) {
  std::vector<Algebra> out;
  GenParams p;
  p.num_sorts = 2;
  p.min_size = 1;
  p.max_size = max_size;
  p.min_ops = 1;
  p.max_ops = 3;
  p.max_arity = 2;
  for (std::uint64_t seed = first_seed; out.size() < count; ++seed) {
    p.seed = seed;
    out.push_back(random_algebra(p));
  }
  return out;
}

Mask intersection_of_subalgebras(const std::vector<Mask>& subs, Mask x,
                                 Mask full) {
  Mask acc = full;
  for (Mask m : subs)
    if ((x & ~m) == 0) acc &= m;
  return acc;
}

bool operators_equal(const ClosureOperator& a, const ClosureOperator& b) {
  return leq(a, b) && leq(b, a);
}

void criterion_1(const std::vector<Algebra>& corpus) {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  for (const Algebra& a : corpus) {
    const Mask full = a.carrier()->full_mask();
    std::vector<Mask> subs = subalgebra_masks(a);
    SplitMix64 rng(17);
    for (Mask m = 0; m <= full && ok; ++m) {
      Mask via_e = sg_via_e_bits(a, m);
      if (via_e != intersection_of_subalgebras(subs, m, full)) ok = false;
      // Spot-check the verbatim oracle entry point as well.
      if (ok && rng.below(64) == 0 &&
          via_e != sg_via_intersection(a, MSSubset(a.carrier(), m)).bits())
        ok = false;
    }
    if (!ok) break;
  }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  report(1, "dual-oracle Sg", ok,
         "[" + std::to_string(corpus.size()) + " algebras, all subsets, " +
             std::to_string(secs) + "s]");
}

void criterion_2(const std::vector<Algebra>& algebras,
                 const std::vector<ClosureTable>& tables) {
  bool ok = true;
  for (const Algebra& a : algebras)
    if (!check_closure_axioms(tabulate(as_closure_operator(a))).all())
      ok = false;
  for (const ClosureTable& t : tables)
    if (!check_closure_axioms(t).all()) ok = false;
  report(2, "closure axioms over the corpus", ok,
         "[" + std::to_string(algebras.size()) + " algebras + " +
             std::to_string(tables.size()) + " tables]");
}

void criterion_3(const std::vector<Algebra>& corpus) {
  bool uniform_ok = true;
  for (const Algebra& a : corpus)
    if (!is_uniform(as_closure_operator(a)).uniform) uniform_ok = false;

  // Stage-by-stage support identities on 50 sampled instances: equal-support
  // inputs have equal-support one-step towers, and supp(Sg(X)) is the union
  // of the stage supports.
  bool stages_ok = true;
  for (std::size_t i = 0; i < 50 && i < corpus.size(); ++i) {
    const Algebra& a = corpus[i];
    const CarrierPtr& c = a.carrier();
    std::vector<std::vector<unsigned>> ref(std::size_t{1} << c->num_sorts());
    for (Mask m = 0; m <= c->full_mask(); ++m) {
      std::vector<unsigned> supps;
      unsigned sg_supp_union = 0;
      Mask stage = m;
      for (;;) {
        supps.push_back(support_mask(c, stage));
        sg_supp_union |= supps.back();
        Mask next = e_step_bits(a, stage);
        if (next == stage) break;
        stage = next;
      }
      if (support_mask(c, sg_via_e_bits(a, m)) != sg_supp_union)
        stages_ok = false;
      auto& first = ref[support_mask(c, m)];
      if (first.empty()) {
        first = supps;
      } else {
        // Towers may stabilize at different heights; compare the padded
        // sequences (a stabilized tower repeats its last support).
        std::size_t len = std::max(first.size(), supps.size());
        for (std::size_t k = 0; k < len; ++k)
          if (first[std::min(k, first.size() - 1)] !=
              supps[std::min(k, supps.size() - 1)])
            stages_ok = false;
      }
    }
  }
  report(3, "uniformity of Sg", uniform_ok && stages_ok,
         std::string("[all operators") +
             (stages_ok ? ", stage supports on 50 instances]" : "]"));
}

void criterion_4(const std::vector<Algebra>& algebras,
                 const std::vector<ClosureTable>& tables) {
  bool ok = true;
  std::vector<ClosureOperator> ops;
  for (const Algebra& a : algebras) ops.push_back(as_closure_operator(a));
  for (const ClosureTable& t : tables) ops.push_back(from_table(t));
  for (const ClosureOperator& j : ops)
    for (int n = 0; n <= 3; ++n)
      if (is_n_ary(j, n) != is_n_ary_via_fixed_points(j, n)) ok = false;
  report(4, "n-arity deciders agree", ok,
         "[" + std::to_string(ops.size()) + " operators, n in {0..3}]");
}

void criterion_5(const std::vector<Algebra>& corpus) {
  bool ok = true;
  for (const Algebra& a : corpus) {
    int n = std::max(max_arity(a), 1);
    if (!is_n_ary(as_closure_operator(a), n)) ok = false;
  }
  report(5, "Sg is n-ary at the operation arity bound", ok);
}

void criterion_6() {
  auto start = std::chrono::steady_clock::now();
  // Synthesis needs small carriers: one operation per (X, s, b) makes the
  // signature grow with 2^|A|.
  std::vector<ClosureOperator> ops;
  for (const Algebra& a : synth_corpus(80, 3, 3000))
    ops.push_back(as_closure_operator(a));
  int uniform_tables = 0;
  GenParams tp;
  tp.num_sorts = 2;
  tp.min_size = 1;
  tp.max_size = 2;
  tp.coverage = 0.3;
  for (std::uint64_t seed = 4000; uniform_tables < 20; ++seed) {
    tp.seed = seed;
    ClosureOperator j = from_table(random_closure_table(tp));
    if (is_uniform(j).uniform) {
      ops.push_back(std::move(j));
      ++uniform_tables;
    }
  }
  bool ok = true;
  for (const ClosureOperator& j : ops) {
    SynthesizedAlgebra syn = synthesize(j);
    if (!operators_equal(as_closure_operator(syn.algebra), j)) ok = false;
  }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  report(6, "synthesis round trip", ok,
         "[" + std::to_string(ops.size()) + " uniform operators, " +
             std::to_string(secs) + "s]");
}

void criterion_7() {
  bool ok = true;
  int done = 0;
  for (const Algebra& a : synth_corpus(60, 2, 4500)) {
    ClosureOperator j = as_closure_operator(a);
    int n = std::max(max_arity(a), 1);
    SynthesizedAlgebra syn = synthesize_bounded(j, n);
    if (max_arity(syn.algebra) > n) ok = false;
    if (!operators_equal(as_closure_operator(syn.algebra), j)) ok = false;
    ++done;
  }

  // Rejections must carry witnesses.
  bool nonuniform_rejected = false;
  try {
    synthesize(from_table(nonuniform_example()));
  } catch (const not_uniform_error& e) {
    auto c = nonuniform_example().carrier();
    nonuniform_rejected =
        MSSubset(c, e.witness_x()) == parse_subset_spec(c, "s:0") &&
        MSSubset(c, e.witness_y()) == parse_subset_spec(c, "s:1");
  }

  // A uniform operator that is not 1-ary: f(0,1) = 2, otherwise the first
  // argument, on a single sort {0,1,2}.
  auto c1 = make_carrier({"s"}, {3});
  std::vector<int> ftab;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) ftab.push_back(x == 0 && y == 1 ? 2 : x);
  Algebra bin(c1, Signature(c1->sorts(), {{"f", Word{{0, 0}}, 0}}), {ftab});
  bool not_nary_rejected = false;
  try {
    synthesize_bounded(as_closure_operator(bin), 1);
  } catch (const not_n_ary_error& e) {
    not_nary_rejected =
        MSSubset(c1, e.witness()) == parse_subset_spec(c1, "s:0,1");
  }
  report(7, "bounded synthesis and rejections",
         ok && nonuniform_rejected && not_nary_rejected,
         "[" + std::to_string(done) + " bounded round trips, 2 rejections]");
}

void criterion_8(const std::vector<Algebra>& algebras,
                 const std::vector<ClosureTable>& tables) {
  bool ok = true;
  std::vector<ClosureOperator> ops;
  for (const Algebra& a : algebras)
    if (a.carrier()->total_size() <= 8) ops.push_back(as_closure_operator(a));
  for (const ClosureTable& t : tables) ops.push_back(from_table(t));
  for (const ClosureOperator& j : ops) {
    for (Mask m = 0; m <= j.carrier()->full_mask(); ++m) {
      MSSubset x(j.carrier(), m);
      bool minimal = is_minimal_basis(j, x);
      bool irb = is_basis(j, x) && is_irredundant(j, x).irredundant;
      if (minimal != irb) ok = false;
    }
  }
  report(8, "irredundant = minimal basis, exhaustive", ok,
         "[" + std::to_string(ops.size()) + " operators, carrier <= 8]");
}

void criterion_9() {
  auto start = std::chrono::steady_clock::now();
  bool ok = true;
  int count = 0;
  GenParams p;
  p.num_sorts = 2;
  p.min_size = 1;
  p.max_size = 5;
  p.min_ops = 1;
  p.max_ops = 3;
  for (std::uint64_t seed = 5000; count < 1000; ++seed) {
    p.max_arity = 2 + static_cast<int>(seed % 3);
    p.seed = seed;
    Algebra a = random_algebra(p);
    ClosureOperator j = as_closure_operator(a);
    int n = std::max(max_arity(a), 2);
    IrBReport r = check_tarski_gaps(j, n);
    if (!r.pass) ok = false;
    if (n == 2 && !r.irb.empty() &&
        r.irb.back() - r.irb.front() + 1 != static_cast<int>(r.irb.size()))
      ok = false;  // convexity: IrB must be an integer interval
    ++count;
  }
  auto secs = std::chrono::duration_cast<std::chrono::seconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  report(9, "irredundant-basis gap bound", ok,
         "[" + std::to_string(count) + " algebras, n in {2,3,4}, " +
             std::to_string(secs) + "s]");
}

void criterion_10(const std::vector<Algebra>& corpus) {
  bool ok = true;
  for (const Algebra& a : corpus)
    if (irredundant_bases(as_closure_operator(a)).irb.empty()) ok = false;
  report(10, "IrB nonempty for algebra-backed operators", ok);
}

void criterion_11(const std::vector<Algebra>& algebras,
                  const std::vector<ClosureTable>& tables) {
  bool ok = true;
  std::vector<ClosureOperator> ops;
  for (const Algebra& a : algebras) ops.push_back(as_closure_operator(a));
  for (const ClosureTable& t : tables) ops.push_back(from_table(t));
  for (const ClosureOperator& j : ops) {
    const CarrierPtr& c = j.carrier();
    Mask j_empty = j.closure_bits(0);

    bool zero_identity = true;  // J(X) = X u J(empty) for every X
    bool one_identity = true;   // J(X) = J(empty) u U_x J(delta_x)
    for (Mask m = 0; m <= c->full_mask(); ++m) {
      if (j.closure_bits(m) != (m | j_empty)) zero_identity = false;
      Mask u = j_empty;
      Mask bits = m;
      while (bits) {
        Mask low = bits & (~bits + 1);
        u |= j.closure_bits(low);
        bits &= bits - 1;
      }
      if (j.closure_bits(m) != u) one_identity = false;
    }
    if (zero_identity != is_n_ary(j, 0)) ok = false;
    if (one_identity != is_n_ary(j, 1)) ok = false;
  }
  report(11, "0-ary and 1-ary characterizations", ok,
         "[" + std::to_string(ops.size()) + " operators]");
}

std::string run_cli(const std::string& args) {
  std::string cmd = std::string(MSALG_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof(buf), pipe))
    out.append(buf, got);
  pclose(pipe);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_12() {
  bool ok = true;
  std::string s1 = run_cli("selftest");
  std::string s2 = run_cli("selftest");
  if (s1.empty() || s1 != s2) ok = false;
  if (s1.find("0 failures") == std::string::npos) ok = false;

  const char* gens[] = {
      "gen algebra --seed 11 --num-sorts 2 --max-size 2 -o ",
      "gen table --seed 12 --num-sorts 2 --max-size 2 --coverage 0.3 -o ",
      "gen nonuniform -o "};
  for (const char* g : gens) {
    run_cli(std::string(g) + "acc_gen_a.json");
    run_cli(std::string(g) + "acc_gen_b.json");
    std::string a = slurp("acc_gen_a.json"), b = slurp("acc_gen_b.json");
    if (a.empty() || a != b) ok = false;
    std::remove("acc_gen_a.json");
    std::remove("acc_gen_b.json");
  }
  report(12, "selftest and gen are byte-reproducible", ok);
}

}  // namespace

int main() {
  std::vector<Algebra> algebras = main_corpus();
  std::vector<ClosureTable> tables = table_corpus();

  criterion_1(algebras);
  criterion_2(algebras, tables);
  criterion_3(algebras);
  criterion_4(algebras, tables);
  criterion_5(algebras);
  criterion_6();
  criterion_7();
  criterion_8(algebras, tables);
  criterion_9();
  criterion_10(algebras);
  criterion_11(algebras, tables);
  criterion_12();

  std::cout << (g_failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL")
            << " (" << g_failures << " failing criteria)" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
