#include "haarq/cli.hpp"

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <thread>

#include <CLI11.hpp>

#include "haarq/classical.hpp"
#include "haarq/json_io.hpp"
#include "haarq/known_points.hpp"
#include "haarq/rng.hpp"

namespace haarq::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPromise = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitBadInput = 4;

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

int env_max_sim_n() {
  if (const char* v = std::getenv("HAARQ_MAX_SIM_N")) {
    const int n = std::atoi(v);
    if (n >= 1) return n;
  }
  return kDefaultMaxSimN;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PartialBoolFn named_function(const std::string& name) {
  if (name == "id1") return PartialBoolFn::identity1();
  if (name == "nand") return PartialBoolFn::nand2();
  if (name == "nand-partial") return nand2_partial();
  throw std::invalid_argument("unknown function name '" + name + "'");
}

DualPoint named_point(const std::string& name) {
  if (name == "id1") return identity1_dual_point();
  if (name == "nand") return nand2_dual_point();
  if (name == "nand-partial") return nand2_partial_dual_point();
  throw std::invalid_argument("unknown function name '" + name + "'");
}

struct Options {
  std::uint64_t seed = 0;

  // gen-instance
  int gi_n = 0, gi_h = 0;
  std::vector<int> gi_b;
  std::string gi_out;

  // expand
  std::string ex_in, ex_out;

  // gen-tree
  int gt_depth = 0, gt_h = 0;
  std::string gt_mode = "fixed", gt_out;

  // quantum-haar / quantum-bv
  std::string q_oracle, q_instance, q_parity;
  int q_n = 0;
  std::uint64_t q_k = 0;

  // classical-search
  std::string cs_oracle;
  int cs_lazy_n = 0, cs_lazy_h = 0, cs_c = 10, cs_trials = 1, cs_jobs = 1;

  // tree-eval / majority-eval
  std::string t_tree;
  bool t_classical = false;
  int t_c = 10;
  double me_epsilon = 0.5, me_delta = 0.05;

  // transform
  std::string tr_op, tr_in, tr_out;

  // adv-solve / adv-compose-check
  std::string adv_fn, adv_tt;
  int adv_starts = 8, adv_max_iter = 5000;
  bool adv_balanced = false;
};

int cmd_gen_instance(const Options& o, std::ostream& out) {
  std::vector<std::uint8_t> b(o.gi_b.begin(), o.gi_b.end());
  for (int v : o.gi_b) {
    if (v != 0 && v != 1) throw std::invalid_argument("--b entries must be 0 or 1");
  }
  const HaarInstance inst = make_instance(o.gi_n, o.gi_h, std::move(b));
  const json j = instance_to_json(inst);
  if (!o.gi_out.empty()) {
    save_json_file(o.gi_out, j);
  } else {
    emit(out, j);
  }
  return kExitOk;
}

int cmd_expand(const Options& o, std::ostream& out) {
  const HaarInstance inst = instance_from_json(load_json_file(o.ex_in));
  const json j = oracle_to_json(expand(inst));
  if (!o.ex_out.empty()) {
    save_json_file(o.ex_out, j);
  } else {
    emit(out, j);
  }
  return kExitOk;
}

int cmd_gen_tree(const Options& o, std::ostream& out) {
  HeightMode mode;
  if (o.gt_mode == "fixed") {
    mode = HeightMode::fixed;
  } else if (o.gt_mode == "all-even") {
    mode = HeightMode::all_even;
  } else if (o.gt_mode == "all-odd") {
    mode = HeightMode::all_odd;
  } else {
    throw std::invalid_argument("--mode must be fixed, all-even or all-odd");
  }
  if (mode == HeightMode::fixed && o.gt_h < 1) {
    throw std::invalid_argument("--h is required for --mode fixed");
  }
  const EvaluatedTree tree = gen_one_fault_per_path(
      o.gt_depth, mode, o.gt_h, stream_seed(o.seed, "gen-tree"));
  const json j = tree_to_json(tree);
  if (!o.gt_out.empty()) {
    save_json_file(o.gt_out, j);
  } else {
    emit(out, j);
  }
  return kExitOk;
}

Oracle haar_input_oracle(const Options& o) {
  if (!o.q_oracle.empty()) return oracle_from_json(load_json_file(o.q_oracle));
  if (!o.q_instance.empty()) {
    return expand(instance_from_json(load_json_file(o.q_instance)));
  }
  throw std::invalid_argument("provide --oracle or --instance");
}

int cmd_quantum_haar(const Options& o, std::ostream& out) {
  Oracle oracle = haar_input_oracle(o);
  const HaarRun run = haar_algorithm(oracle, env_max_sim_n());
  const bool promise_ok = run.h_out >= 1 && run.h_out_mass >= 1.0 - 1e-9;
  json j{{"schema", 1},
         {"h_star", run.h_out},
         {"mass", run.h_out_mass},
         {"queries", run.queries},
         {"promise_ok", promise_ok},
         {"distribution", distribution_to_json(run.distribution)}};
  emit(out, j);
  return promise_ok ? kExitOk : kExitPromise;
}

int cmd_quantum_bv(const Options& o, std::ostream& out) {
  bool haar_promised = false;
  Oracle oracle = [&] {
    if (!o.q_parity.empty()) return parity_oracle(parity_from_json(load_json_file(o.q_parity)));
    if (o.q_n > 0) return parity_oracle(make_parity_instance(o.q_n, o.q_k));
    haar_promised = true;
    return haar_input_oracle(o);
  }();
  const BvRun run = bv_algorithm(oracle, env_max_sim_n());
  json j{{"schema", 1},
         {"outcome", run.outcome},
         {"p", run.outcome_p},
         {"h_from_k", run.h_from_k},
         {"queries", run.queries},
         {"distribution", distribution_to_json(run.distribution)}};
  emit(out, j);
  if (haar_promised && run.h_from_k == 0) return kExitPromise;
  return kExitOk;
}

json run_report_json(const RunReport& r) {
  return json{{"schema", 1},
              {"answer", r.answer},
              {"queries", r.queries},
              {"seed", r.seed},
              {"error_flag", r.error_flag}};
}

int cmd_classical_search(const Options& o, std::ostream& out) {
  const std::uint64_t stream = stream_seed(o.seed, "classical-search");
  const bool lazy = o.cs_oracle.empty();
  if (lazy && (o.cs_lazy_n < 2 || o.cs_lazy_h < 1)) {
    throw std::invalid_argument("provide --oracle, or --lazy-n with --lazy-h");
  }

  json oracle_json;
  int truth = -1;
  if (!lazy) {
    oracle_json = load_json_file(o.cs_oracle);
    Oracle probe = oracle_from_json(oracle_json);
    truth = detect_h_star(probe.bits_copy()).h_star;  // promise files only
  } else {
    truth = o.cs_lazy_h;
  }

  if (o.cs_trials <= 1) {
    Oracle oracle = lazy ? lazy_oracle(o.cs_lazy_n, o.cs_lazy_h, mix64(stream))
                         : oracle_from_json(oracle_json);
    RunReport r = binary_search_h(oracle, o.cs_c, stream);
    r.error_flag = truth >= 0 && r.answer != truth;
    emit(out, run_report_json(r));
    return kExitOk;
  }

  // batch mode: one CSV line per trial, computed in parallel, emitted in order
  std::vector<RunReport> reports(o.cs_trials);
  std::atomic<int> next{0};
  const int jobs = std::max(1, o.cs_jobs);
  auto worker = [&] {
    for (int t = next.fetch_add(1); t < o.cs_trials; t = next.fetch_add(1)) {
      const std::uint64_t trial_seed = mix64(stream ^ static_cast<std::uint64_t>(t));
      Oracle oracle = lazy ? lazy_oracle(o.cs_lazy_n, o.cs_lazy_h, mix64(trial_seed))
                           : oracle_from_json(oracle_json);
      reports[t] = binary_search_h(oracle, o.cs_c, trial_seed);
      reports[t].error_flag = truth >= 0 && reports[t].answer != truth;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  out << "seed,answer,correct,queries\n";
  for (const RunReport& r : reports) {
    out << r.seed << ',' << r.answer << ',' << (r.error_flag ? 0 : 1) << ','
        << r.queries << '\n';
  }
  return kExitOk;
}

int cmd_tree_eval(const Options& o, std::ostream& out) {
  const auto leaves = tree_leaves_from_json(load_json_file(o.t_tree));
  if (!o.t_classical) {
    const EvaluatedTree tree = eval_tree(leaves);
    emit(out, json{{"schema", 1},
                   {"root", tree.root_value()},
                   {"max_kappa", max_kappa(tree)},
                   {"root_kappa", root_kappa(tree)}});
    return kExitOk;
  }
  Oracle oracle = Oracle::eager(transform_depth(leaves.size()), leaves);
  RunReport r = classical_tree_eval(oracle, o.t_c, stream_seed(o.seed, "tree-eval"));
  r.error_flag = r.answer != eval_tree(leaves).root_value();
  emit(out, run_report_json(r));
  return kExitOk;
}

int cmd_majority_eval(const Options& o, std::ostream& out) {
  const auto leaves = tree_leaves_from_json(load_json_file(o.t_tree));
  Oracle oracle = Oracle::eager(transform_depth(leaves.size()), leaves);
  RunReport r = majority_eval(oracle, o.me_epsilon, o.me_delta,
                              stream_seed(o.seed, "majority-eval"));
  r.error_flag = r.answer != eval_tree(leaves).root_value();
  emit(out, run_report_json(r));
  return kExitOk;
}

int cmd_transform(const Options& o, std::ostream& out) {
  std::vector<double> values = ends_with(o.tr_in, ".csv")
                                   ? load_vector_csv(o.tr_in)
                                   : vector_from_json(load_json_file(o.tr_in));
  transform_depth(values.size());
  if (o.tr_op == "haar") {
    haar_forward(values);
  } else if (o.tr_op == "haar-inv") {
    haar_inverse(values);
  } else if (o.tr_op == "walsh") {
    walsh_hadamard(values);
  } else {
    throw std::invalid_argument("--op must be haar, haar-inv or walsh");
  }
  if (o.tr_out.empty()) {
    emit(out, vector_to_json(values));
  } else if (ends_with(o.tr_out, ".csv")) {
    save_vector_csv(o.tr_out, values);
  } else {
    save_json_file(o.tr_out, vector_to_json(values));
  }
  return kExitOk;
}

int cmd_adv_solve(const Options& o, std::ostream& out) {
  const PartialBoolFn f = !o.adv_tt.empty()
                              ? truth_table_from_json(load_json_file(o.adv_tt))
                              : named_function(o.adv_fn);
  SolveOptions opts;
  opts.starts = o.adv_starts;
  opts.max_iterations = o.adv_max_iter;
  opts.seed = stream_seed(o.seed, "adv-solve");
  opts.balanced = o.adv_balanced;
  const SolveResult result = solve_adv(f, opts);
  emit(out, solve_report_to_json(result.report));
  return result.report.converged ? kExitOk : kExitNoConverge;
}

int cmd_adv_compose_check(const Options& o, std::ostream& out) {
  const PartialBoolFn outer = named_function(o.adv_fn);
  const DualPoint outer_point = named_point(o.adv_fn);
  const std::string inner_name = o.adv_fn == "id1" ? "id1" : "nand";
  const PartialBoolFn inner = named_function(inner_name);
  const DualPoint inner_point = named_point(inner_name);

  const ComposeResult comp = compose_dual(outer_point, inner_point, outer, inner);
  const FeasibilityReport feas = check_feasible(comp.composed, comp.point);
  double trace = 0;
  for (double v : comp.point.omega) trace += v;

  const bool ok = feas.min_eigenvalue >= -1e-6 && feas.zero_pattern <= 1e-12 &&
                  std::abs(feas.value - comp.expected_value) <= 1e-6 &&
                  std::abs(trace - 1.0) <= 1e-9;
  emit(out, json{{"schema", 1},
                 {"outer", o.adv_fn},
                 {"inner", inner_name},
                 {"c", comp.c},
                 {"objective", feas.value},
                 {"expected", comp.expected_value},
                 {"trace", trace},
                 {"min_eig", feas.min_eigenvalue},
                 {"domain_size", comp.composed.domain.size()},
                 {"feasible", ok}});
  return ok ? kExitOk : kExitNoConverge;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t global_seed, const std::string& subcommand) {
  return mix64(global_seed ^ fnv1a64(subcommand));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Haar Problem oracles, NAND fault trees, one-query quantum algorithms, "
               "classical searches, and the adversary dual toolkit"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h / --h for block exponents
  Options o;
  app.add_option("--seed", o.seed, "global seed feeding every subcommand stream");

  auto* gi = app.add_subcommand("gen-instance", "emit a Haar instance file");
  gi->add_option("--n", o.gi_n, "oracle bit-length exponent")->required();
  gi->add_option("--h", o.gi_h, "block size exponent")->required();
  gi->add_option("--b", o.gi_b, "block bits, comma separated")->required()->delimiter(',');
  gi->add_option("--out", o.gi_out, "output file (stdout when omitted)");

  auto* ex = app.add_subcommand("expand", "expand an instance into an oracle file");
  ex->add_option("--in", o.ex_in, "instance JSON")->required();
  ex->add_option("--out", o.ex_out, "output file (stdout when omitted)");

  auto* gt = app.add_subcommand("gen-tree", "generate a one-fault-per-path tree");
  gt->add_option("--depth", o.gt_depth, "tree depth")->required();
  gt->add_option("--mode", o.gt_mode, "fixed | all-even | all-odd");
  gt->add_option("--h", o.gt_h, "fault height for --mode fixed");
  gt->add_option("--out", o.gt_out, "output file (stdout when omitted)");

  auto* qh = app.add_subcommand("quantum-haar", "one-query Haar-basis measurement");
  qh->add_option("--oracle", o.q_oracle, "oracle JSON");
  qh->add_option("--instance", o.q_instance, "instance JSON");

  auto* qb = app.add_subcommand("quantum-bv", "one-query Hadamard-basis measurement");
  qb->add_option("--oracle", o.q_oracle, "oracle JSON");
  qb->add_option("--instance", o.q_instance, "instance JSON");
  qb->add_option("--parity", o.q_parity, "parity JSON");
  qb->add_option("--n", o.q_n, "parity bit count (with --k)");
  qb->add_option("--k", o.q_k, "parity hidden string (with --n)");

  auto* cs = app.add_subcommand("classical-search", "randomized prefix search for h*");
  cs->add_option("--oracle", o.cs_oracle, "oracle JSON");
  cs->add_option("--lazy-n", o.cs_lazy_n, "lazy oracle size exponent");
  cs->add_option("--lazy-h", o.cs_lazy_h, "lazy oracle block exponent");
  cs->add_option("--c", o.cs_c, "error-control constant");
  cs->add_option("--trials", o.cs_trials, "batch trial count (CSV output)");
  cs->add_option("--jobs", o.cs_jobs, "worker threads for batch mode");

  auto* te = app.add_subcommand("tree-eval", "evaluate a tree file");
  te->add_option("--tree", o.t_tree, "tree JSON")->required();
  te->add_flag("--classical", o.t_classical, "use the randomized leftmost-fault search");
  te->add_option("--c", o.t_c, "error-control constant for --classical");

  auto* me = app.add_subcommand("majority-eval", "majority-vote tree evaluation");
  me->add_option("--tree", o.t_tree, "tree JSON")->required();
  me->add_option("--epsilon", o.me_epsilon, "leaf-ratio margin");
  me->add_option("--delta", o.me_delta, "failure probability");

  auto* tr = app.add_subcommand("transform", "apply a fast transform to a vector file");
  tr->add_option("--op", o.tr_op, "haar | haar-inv | walsh")->required();
  tr->add_option("--in", o.tr_in, "input vector (.json or .csv)")->required();
  tr->add_option("--out", o.tr_out, "output file (stdout JSON when omitted)");

  auto* as = app.add_subcommand("adv-solve", "solve the adversary dual for a function");
  as->add_option("--fn", o.adv_fn, "id1 | nand | nand-partial");
  as->add_option("--truth-table", o.adv_tt, "truth-table JSON");
  as->add_option("--starts", o.adv_starts, "solver starts");
  as->add_option("--max-iterations", o.adv_max_iter, "inner iteration budget");
  as->add_flag("--balanced", o.adv_balanced, "split Tr(Omega) across output classes");

  auto* ac = app.add_subcommand("adv-compose-check", "verify the composed dual point");
  ac->add_option("--fn", o.adv_fn, "outer function: id1 | nand | nand-partial")->required();

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    sub->set_help_flag("--help", "print help");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (app.got_subcommand(gi)) return cmd_gen_instance(o, out);
    if (app.got_subcommand(ex)) return cmd_expand(o, out);
    if (app.got_subcommand(gt)) return cmd_gen_tree(o, out);
    if (app.got_subcommand(qh)) return cmd_quantum_haar(o, out);
    if (app.got_subcommand(qb)) return cmd_quantum_bv(o, out);
    if (app.got_subcommand(cs)) return cmd_classical_search(o, out);
    if (app.got_subcommand(te)) return cmd_tree_eval(o, out);
    if (app.got_subcommand(me)) return cmd_majority_eval(o, out);
    if (app.got_subcommand(tr)) return cmd_transform(o, out);
    if (app.got_subcommand(as)) return cmd_adv_solve(o, out);
    if (app.got_subcommand(ac)) return cmd_adv_compose_check(o, out);
  } catch (const promise_violation& e) {
    err << "promise violation: " << e.what() << '\n';
    return kExitPromise;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitBadInput;
  }
  err << "no subcommand given\n";
  return kExitBadInput;
}

}  // namespace haarq::cli
