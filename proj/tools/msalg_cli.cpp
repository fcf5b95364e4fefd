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

#include <cstdlib>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "msalg/io.hpp"
#include "msalg/msalg.hpp"

namespace {

using namespace msalg;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

int default_cap() {
  if (const char* env = std::getenv("MSALG_CAP")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v <= kMaxCarrierBits)
      return static_cast<int>(v);
  }
  return kDefaultCap;
}

CarrierPtr carrier_of(const Instance& inst) {
  if (std::holds_alternative<Algebra>(inst))
    return std::get<Algebra>(inst).carrier();
  return std::get<ClosureTable>(inst).carrier();
}

ClosureOperator operator_of(const Instance& inst) {
  if (std::holds_alternative<Algebra>(inst))
    return as_closure_operator(std::get<Algebra>(inst));
  return from_table(std::get<ClosureTable>(inst));
}

void emit(const json& report, bool as_json,
          const std::vector<std::string>& human) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    for (const std::string& line : human) std::cout << line << "\n";
  }
}

std::string spec_of(const CarrierPtr& c, Mask m) {
  std::string s = subset_spec(MSSubset(c, m));
  return s.empty() ? std::string("(empty)") : s;
}

json irb_to_json(const CarrierPtr& c, const IrBReport& r) {
  json out;
  out["irb"] = r.irb;
  json by_size = json::object();
  for (const auto& [size, witnesses] : r.bases_by_size) {
    json entry;
    entry["count"] = r.counts_by_size.at(size);
    json ws = json::array();
    for (Mask m : witnesses) ws.push_back(subset_spec(MSSubset(c, m)));
    entry["witnesses"] = ws;
    by_size[std::to_string(size)] = entry;
  }
  out["bases_by_size"] = by_size;
  json gaps = json::array();
  for (auto [i, j] : r.gaps) gaps.push_back(json::array({i, j}));
  out["gaps"] = gaps;
  if (r.n_used >= 2) {
    out["n"] = r.n_used;
    out["verdict"] = r.pass ? "pass" : "fail";
    if (r.violation)
      out["violation"] = json::array({r.violation->first, r.violation->second});
  }
  return out;
}

std::string irb_set_string(const IrBReport& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.irb.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r.irb[i]);
  }
  return s + "}";
}

// ---------------------------------------------------------------------------
// selftest: the full invariant suite at desk scale, deterministic.

struct SelfTest {
  int failures = 0;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "PASS" : "FAIL") + ": " + what);
    if (!ok) ++failures;
  }
};

void selftest_operator(SelfTest& st, const std::string& label,
                       const ClosureOperator& j, int cap) {
  ClosureTable tab = tabulate(j, cap);
  st.check(check_closure_axioms(tab).all(), label + " closure axioms");
  st.check(is_algebraic(j, cap), label + " algebraic");
  for (int n = 0; n <= 3; ++n)
    st.check(is_n_ary(j, n, cap) == is_n_ary_via_fixed_points(j, n, cap),
             label + " n-ary deciders agree at n=" + std::to_string(n));
  // Irredundant bases and minimal bases coincide; checked exhaustively.
  bool prop28 = true;
  for (Mask m = 0; m <= j.carrier()->full_mask(); ++m) {
    MSSubset x(j.carrier(), m);
    bool minimal = is_minimal_basis(j, x, cap);
    bool irb = is_basis(j, x) && is_irredundant(j, x).irredundant;
    if (minimal != irb) prop28 = false;
  }
  st.check(prop28, label + " irredundant-basis = minimal-basis");
}

int run_selftest(bool as_json, int cap) {
  SelfTest st;

  // Seeded random algebras.
  GenParams ap;
  ap.num_sorts = 2;
  ap.min_size = 1;
  ap.max_size = 2;
  ap.min_ops = 1;
  ap.max_ops = 3;
  ap.max_arity = 2;
  ap.cap = cap;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    ap.seed = seed;
    Algebra a = random_algebra(ap);
    std::string label = "algebra seed=" + std::to_string(seed);
    ClosureOperator sg = as_closure_operator(a);
    bool dual = true;
    for (Mask m = 0; m <= a.carrier()->full_mask(); ++m) {
      MSSubset x(a.carrier(), m);
      if (sg_via_e(a, x) != sg_via_intersection(a, x, cap)) dual = false;
    }
    st.check(dual, label + " Sg oracles agree");
    st.check(is_uniform(sg, cap).uniform, label + " Sg uniform");
    st.check(is_n_ary(sg, std::max(max_arity(a), 1), cap),
             label + " Sg n-ary at its own arity");
    selftest_operator(st, label, sg, cap);
    if (a.carrier()->total_size() <= 4) {
      SynthesizedAlgebra syn = synthesize(sg, cap);
      st.check(leq(as_closure_operator(syn.algebra), sg, cap) &&
                   leq(sg, as_closure_operator(syn.algebra), cap),
               label + " synthesis round trip");
    }
    IrBReport rep = irredundant_bases(sg, cap);
    st.check(!rep.irb.empty(), label + " IrB nonempty");
  }

  // Seeded random closure tables.
  GenParams tp;
  tp.num_sorts = 2;
  tp.min_size = 1;
  tp.max_size = 2;
  tp.coverage = 0.3;
  tp.cap = cap;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    tp.seed = seed;
    ClosureOperator j = from_table(random_closure_table(tp));
    selftest_operator(st, "table seed=" + std::to_string(seed), j, cap);
  }

  // The fixed non-uniform fixture.
  ClosureOperator nu = from_table(nonuniform_example());
  st.check(check_closure_axioms(tabulate(nu, cap)).all(),
           "nonuniform fixture closure axioms");
  st.check(!is_uniform(nu, cap).uniform, "nonuniform fixture not uniform");
  bool rejected = false;
  try {
    synthesize(nu, cap);
  } catch (const not_uniform_error&) {
    rejected = true;
  }
  st.check(rejected, "synthesize rejects the nonuniform fixture");

  json report;
  report["checks"] = st.lines;
  report["failures"] = st.failures;
  std::vector<std::string> human = st.lines;
  human.push_back("selftest: " + std::to_string(st.lines.size()) +
                  " checks, " + std::to_string(st.failures) + " failures");
  emit(report, as_json, human);
  return st.failures == 0 ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"msalg: a workbench for finite many-sorted closure spaces "
               "and algebras"};
  app.require_subcommand(1);

  int cap = default_cap();
  bool as_json = false;
  app.add_option("--cap", cap,
                 "total-carrier cap for commands that tabulate over Sub(A)")
      ->capture_default_str();
  app.add_flag("--json", as_json, "machine-readable JSON output");

  std::string file, set_spec, out_path;
  int n = 0, bound = -1;
  bool cross_check = false, skip_axioms = false;

  auto* sg_cmd = app.add_subcommand("sg", "subalgebra generated by a subset");
  sg_cmd->add_option("file", file)->required();
  sg_cmd->add_option("--set", set_spec, "subset, e.g. s:0,1;t:0")->required();
  sg_cmd->add_flag("--cross-check", cross_check,
                   "also run the subalgebra-intersection oracle");

  auto* axioms_cmd = app.add_subcommand("axioms", "check the closure axioms");
  axioms_cmd->add_option("file", file)->required();

  auto* uniform_cmd = app.add_subcommand("uniform", "check uniformity");
  uniform_cmd->add_option("file", file)->required();

  auto* nary_cmd = app.add_subcommand("nary", "decide n-arity");
  nary_cmd->add_option("file", file)->required();
  nary_cmd->add_option("--n", n)->required();
  nary_cmd->add_flag("--cross-check", cross_check,
                     "also run the fixed-point decider");

  auto* tower_cmd = app.add_subcommand("tower", "print the tower stages");
  tower_cmd->add_option("file", file)->required();
  tower_cmd->add_option("--set", set_spec)->required();
  tower_cmd->add_option("--n", n)->required();

  auto* synth_cmd =
      app.add_subcommand("synthesize", "build an algebra with Sg = J");
  synth_cmd->add_option("file", file)->required();
  synth_cmd->add_option("--bound", bound, "restrict operations to arity <= N");
  synth_cmd->add_option("-o,--output", out_path)->required();

  auto* irb_cmd = app.add_subcommand("irb", "irredundant basis sizes");
  irb_cmd->add_option("file", file)->required();

  auto* tarski_cmd =
      app.add_subcommand("tarski", "check the irredundant-basis gap bound");
  tarski_cmd->add_option("file", file)->required();
  tarski_cmd->add_option("--n", n)->required();

  auto* gen_cmd = app.add_subcommand("gen", "generate a corpus instance");
  std::string gen_kind;
  GenParams gp;
  gen_cmd->add_option("kind", gen_kind, "algebra | table | nonuniform")
      ->required()
      ->check(CLI::IsMember({"algebra", "table", "nonuniform"}));
  gen_cmd->add_option("--seed", gp.seed);
  gen_cmd->add_option("--num-sorts", gp.num_sorts);
  gen_cmd->add_option("--min-size", gp.min_size);
  gen_cmd->add_option("--max-size", gp.max_size);
  gen_cmd->add_option("--min-ops", gp.min_ops);
  gen_cmd->add_option("--max-ops", gp.max_ops);
  gen_cmd->add_option("--max-arity", gp.max_arity);
  gen_cmd->add_option("--nullary-prob", gp.nullary_prob);
  gen_cmd->add_option("--coverage", gp.coverage);
  gen_cmd->add_option("-o,--output", out_path)->required();

  auto* selftest_cmd =
      app.add_subcommand("selftest", "run the invariant suite at desk scale");

  app.add_flag("--skip-axioms", skip_axioms,
               "skip the axiom check when loading closure tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*selftest_cmd) return run_selftest(as_json, cap);

    if (*gen_cmd) {
      gp.cap = cap;
      json doc;
      if (gen_kind == "algebra") {
        doc = algebra_to_json(random_algebra(gp));
      } else if (gen_kind == "table") {
        doc = table_to_json(random_closure_table(gp));
      } else {
        doc = table_to_json(nonuniform_example());
      }
      write_json_file(out_path, doc);
      emit(json{{"written", out_path}}, as_json, {"wrote " + out_path});
      return kExitPass;
    }

    Instance inst = load_instance(file, skip_axioms);
    CarrierPtr c = carrier_of(inst);

    if (*sg_cmd) {
      if (!std::holds_alternative<Algebra>(inst))
        throw error("sg: requires an algebra file");
      const Algebra& a = std::get<Algebra>(inst);
      MSSubset x = parse_subset_spec(c, set_spec);
      MSSubset via_e = sg_via_e(a, x);
      json report;
      report["set"] = set_spec;
      report["sg"] = subset_spec(via_e);
      std::vector<std::string> human{"Sg(" + spec_of(c, x.bits()) +
                                     ") = " + spec_of(c, via_e.bits())};
      if (cross_check) {
        MSSubset via_i = sg_via_intersection(a, x, cap);
        bool agree = via_e == via_i;
        report["cross_check"] = agree ? "agree" : "disagree";
        report["sg_via_intersection"] = subset_spec(via_i);
        human.push_back(std::string("oracles ") +
                        (agree ? "agree" : "DISAGREE") + ": intersection gives " +
                        spec_of(c, via_i.bits()));
        emit(report, as_json, human);
        return agree ? kExitPass : kExitCheckFailed;
      }
      emit(report, as_json, human);
      return kExitPass;
    }

    if (*axioms_cmd) {
      ClosureTable tab = std::holds_alternative<ClosureTable>(inst)
                             ? std::get<ClosureTable>(inst)
                             : tabulate(operator_of(inst), cap);
      AxiomReport r = check_closure_axioms(tab);
      json report;
      report["extensive"] = r.extensive;
      report["isotone"] = r.isotone;
      report["idempotent"] = r.idempotent;
      std::vector<std::string> human;
      human.push_back(std::string("extensive: ") + (r.extensive ? "yes" : "no"));
      human.push_back(std::string("isotone: ") + (r.isotone ? "yes" : "no"));
      human.push_back(std::string("idempotent: ") +
                      (r.idempotent ? "yes" : "no"));
      if (r.extensive_witness) {
        report["extensive_witness"] = spec_of(c, *r.extensive_witness);
        human.push_back("  extensivity fails at X=" +
                        spec_of(c, *r.extensive_witness));
      }
      if (r.isotone_witness) {
        report["isotone_witness"] =
            json::array({spec_of(c, r.isotone_witness->first),
                         spec_of(c, r.isotone_witness->second)});
        human.push_back("  isotonicity fails at X=" +
                        spec_of(c, r.isotone_witness->first) +
                        " ⊆ Y=" + spec_of(c, r.isotone_witness->second));
      }
      if (r.idempotent_witness) {
        report["idempotent_witness"] = spec_of(c, *r.idempotent_witness);
        human.push_back("  idempotence fails at X=" +
                        spec_of(c, *r.idempotent_witness));
      }
      emit(report, as_json, human);
      return r.all() ? kExitPass : kExitCheckFailed;
    }

    if (*uniform_cmd) {
      UniformResult r = is_uniform(operator_of(inst), cap);
      json report;
      report["uniform"] = r.uniform;
      std::vector<std::string> human;
      if (r.uniform) {
        human.push_back("uniform: yes");
      } else {
        report["witness"] = json::array(
            {spec_of(c, r.witness_x), spec_of(c, r.witness_y)});
        human.push_back("uniform: no; witness X=" + spec_of(c, r.witness_x) +
                        ", Y=" + spec_of(c, r.witness_y));
      }
      emit(report, as_json, human);
      return r.uniform ? kExitPass : kExitCheckFailed;
    }

    if (*nary_cmd) {
      ClosureOperator j = operator_of(inst);
      bool tower_route = is_n_ary(j, n, cap);
      json report;
      report["n"] = n;
      report["n_ary"] = tower_route;
      std::vector<std::string> human{std::to_string(n) + "-ary: " +
                                     (tower_route ? "yes" : "no")};
      if (cross_check) {
        bool fp_route = is_n_ary_via_fixed_points(j, n, cap);
        bool agree = tower_route == fp_route;
        report["fixed_point_route"] = fp_route;
        report["cross_check"] = agree ? "agree" : "disagree";
        human.push_back(std::string("fixed-point decider: ") +
                        (fp_route ? "yes" : "no") + " (" +
                        (agree ? "agreement" : "DISAGREEMENT") + ")");
        if (!agree) {
          emit(report, as_json, human);
          return kExitCheckFailed;
        }
      }
      emit(report, as_json, human);
      return tower_route ? kExitPass : kExitCheckFailed;
    }

    if (*tower_cmd) {
      ClosureOperator j = operator_of(inst);
      MSSubset x = parse_subset_spec(c, set_spec);
      json stages = json::array();
      std::vector<std::string> human;
      Mask stage = x.bits();
      for (int m = 0; m <= c->total_size() + 2; ++m) {
        stages.push_back(spec_of(c, stage));
        human.push_back("J_{<=" + std::to_string(n) + "}^" +
                        std::to_string(m) + " = " + spec_of(c, stage));
        Mask next = closure_le_n_bits(j, n, stage);
        if (next == stage) break;
        stage = next;
      }
      Mask omega = closure_le_n_omega_bits(j, n, x.bits());
      json report;
      report["n"] = n;
      report["set"] = set_spec;
      report["stages"] = stages;
      report["omega"] = spec_of(c, omega);
      human.push_back("J_{<=" + std::to_string(n) + "}^omega = " +
                      spec_of(c, omega));
      emit(report, as_json, human);
      return kExitPass;
    }

    if (*synth_cmd) {
      ClosureOperator j = operator_of(inst);
      SynthesizedAlgebra syn =
          bound >= 0 ? synthesize_bounded(j, bound, cap) : synthesize(j, cap);
      write_json_file(out_path,
                      algebra_to_json(syn.algebra, &syn.provenance));
      json report;
      report["ops"] = syn.algebra.signature().num_ops();
      report["max_arity"] = max_arity(syn.algebra);
      report["written"] = out_path;
      emit(report, as_json,
           {"synthesized " +
                std::to_string(syn.algebra.signature().num_ops()) +
                " ops (max arity " + std::to_string(max_arity(syn.algebra)) +
                "), wrote " + out_path});
      return kExitPass;
    }

    if (*irb_cmd) {
      IrBReport r = irredundant_bases(operator_of(inst), cap);
      emit(irb_to_json(c, r), as_json, {"IrB = " + irb_set_string(r)});
      return kExitPass;
    }

    if (*tarski_cmd) {
      IrBReport r = check_tarski_gaps(operator_of(inst), n, cap);
      json report = irb_to_json(c, r);
      std::string line;
      if (r.pass) {
        line = "PASS: IrB = " + irb_set_string(r) +
               (n == 2 ? ", convex"
                       : ", all gaps <= " + std::to_string(n - 1));
      } else {
        line = "FAIL: IrB = " + irb_set_string(r) + ", gap (" +
               std::to_string(r.violation->first) + "," +
               std::to_string(r.violation->second) + ") exceeds " +
               std::to_string(n - 1);
      }
      emit(report, as_json, {line});
      return r.pass ? kExitPass : kExitCheckFailed;
    }
  } catch (const not_uniform_error& e) {
    CarrierPtr c;
    try {
      c = carrier_of(load_instance(file, true));
    } catch (...) {
    }
    std::cerr << e.what();
    if (c)
      std::cerr << "; witness X=" << spec_of(c, e.witness_x())
                << ", Y=" << spec_of(c, e.witness_y());
    std::cerr << "\n";
    return kExitCheckFailed;
  } catch (const not_n_ary_error& e) {
    CarrierPtr c;
    try {
      c = carrier_of(load_instance(file, true));
    } catch (...) {
    }
    std::cerr << e.what();
    if (c) std::cerr << "; witness X=" << spec_of(c, e.witness());
    std::cerr << "\n";
    return kExitCheckFailed;
  } catch (const not_closure_error& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
