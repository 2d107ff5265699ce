#include "ksub/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ksub/io.hpp"
#include "ksub/minmax.hpp"
#include "ksub/multimatroid.hpp"
#include "ksub/rng.hpp"

#include <optional>

namespace ksub {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

ValuedFunction load_normalized(const std::string& path, std::ostream& err) {
  const ValuedFunction raw = parse_instance(read_file(path));
  Rational offset;
  ValuedFunction f = raw.normalized(&offset);
  if (offset != 0) {
    err << "warning: f(0) = " << to_string(offset)
        << " != 0; instance normalized on load\n";
  }
  return f;
}

std::string witness_text(const ViolationWitness& w) {
  return "T = " + w.T.to_string() + "; U = " + w.U.to_string() +
         "; lhs = " + to_string(w.lhs) + "; rhs = " + to_string(w.rhs);
}

int run_check(const std::string& path, std::uint64_t budget, std::ostream& out,
              std::ostream& err) {
  const ValuedFunction f = load_normalized(path, err);
  const auto sub = check_k_submodular(f, budget);
  const auto super = check_k_supermodular(f, budget);
  const auto mod = check_k_modular(f, budget);
  const auto pairwise = check_pairwise(f, budget);
  const auto report = [&](const char* name,
                          const std::optional<ViolationWitness>& w) {
    out << name << ": " << (w ? "no (" + witness_text(*w) + ")" : "yes") << '\n';
  };
  report("k-submodular", sub);
  report("k-supermodular", super);
  report("k-modular", mod);
  report("pairwise", pairwise);
  return sub ? 1 : 0;
}

int run_minimize(const std::string& path, bool certificate, std::uint64_t budget,
                 std::ostream& out, std::ostream& err) {
  const ValuedFunction f = load_normalized(path, err);
  const auto [value, argmin] = brute_force_min(f, budget);
  out << "minimum " << to_string(value) << '\n';
  out << "argmin " << argmin.to_string() << '\n';
  if (!certificate) return 0;
  const MinMaxResult result = verify_minmax(f, budget);
  if (const auto* cert = std::get_if<Certificate>(&result)) {
    out << serialize_certificate(f, *cert, budget);
    return 0;
  }
  const auto& d = std::get<Discrepancy>(result);
  out << "discrepancy: " << d.detail << '\n';
  if (d.primal_value) out << "primal " << to_string(*d.primal_value) << '\n';
  if (d.dual_value) out << "dual " << to_string(*d.dual_value) << '\n';
  if (d.witness) out << "witness " << witness_text(*d.witness) << '\n';
  return 1;
}

int run_dual(const std::string& path, bool integer, std::uint64_t budget,
             std::ostream& out, std::ostream& err) {
  const ValuedFunction f = load_normalized(path, err);
  const std::optional<DualOptimum> best =
      integer ? max_dual_integer(f, budget) : max_dual(f, budget);
  if (!best.has_value()) {
    out << "dual infeasible (U(f) is empty)\n";
    return 1;
  }
  out << "objective " << to_string(best->objective) << '\n';
  out << serialize_signed(best->vector);
  return 0;
}

int run_verify_ft(const std::string& path, std::uint64_t budget, std::ostream& out,
                  std::ostream& err) {
  const ValuedFunction f = load_normalized(path, err);
  const FtReport report = verify_ft(f, budget);
  out << "ft " << to_string(report.ft_value) << '\n';
  out << "primal " << to_string(report.primal_value) << '\n';
  out << "dual " << to_string(report.dual_value) << '\n';
  out << "chain " << (report.chain_ok ? "ok" : "violated") << '\n';
  out << "point\n" << serialize_full(report.point);
  out << "verdict " << (report.equal && report.chain_ok ? "equal" : "MISMATCH")
      << '\n';
  return report.equal && report.chain_ok ? 0 : 1;
}

int run_greedy(const std::string& path, const std::string& K_text,
               std::optional<std::uint64_t> order_seed, std::uint64_t budget,
               std::ostream& out, std::ostream& err) {
  const ValuedFunction f = load_normalized(path, err);
  std::istringstream ks(K_text);
  std::vector<int> tokens;
  int token;
  while (ks >> token) tokens.push_back(token);
  const Labeling K = Labeling::from_tokens(f.k(), tokens);

  std::vector<int> order(static_cast<std::size_t>(f.n()));
  for (int i = 0; i < f.n(); ++i) order[static_cast<std::size_t>(i)] = i;
  if (order_seed.has_value()) {
    Rng rng(*order_seed);
    order = rng.permutation(f.n());
  }
  const SignedVector v = greedy_base(f, K, order);
  out << serialize_signed(v);
  const auto base = in_B_K(f, v, K, budget);
  out << "base " << (base ? "violated (" + *base + ")" : "ok") << '\n';
  const bool dominated = !in_U(f, v, budget).has_value();
  out << "in-U " << (dominated ? "ok" : "violated") << '\n';
  return !base && dominated ? 0 : 1;
}

int run_multimatroid(const std::string& path, std::uint64_t budget,
                     std::ostream& out) {
  const ValuedFunction r = parse_instance(read_file(path));
  const RankBridgeReport report = rank_is_k_submodular(r, budget);
  if (report.axioms && report.axioms->axiom == 0) {
    out << "not a rank function: " << report.axioms->detail << '\n';
    out << "pairwise: " << (report.pairwise ? "violated" : "ok") << '\n';
    out << "k-submodular: " << (report.submodular ? "violated" : "ok") << '\n';
    return 1;
  }
  if (report.axioms) {
    out << "axiom " << report.axioms->axiom << " violated: " << report.axioms->detail
        << " (T = " << report.axioms->T.to_string()
        << "; U = " << report.axioms->U.to_string()
        << "; lhs = " << to_string(report.axioms->lhs)
        << "; rhs = " << to_string(report.axioms->rhs) << ")\n";
  } else {
    out << "axioms: ok\n";
  }
  out << "pairwise: " << (report.pairwise ? "violated" : "ok") << '\n';
  out << "k-submodular: " << (report.submodular ? "violated" : "ok") << '\n';
  out << "bridge-consistent: " << (report.consistent ? "yes" : "NO") << '\n';
  return report.axioms || !report.consistent ? 1 : 0;
}

int run_generate(const std::string& kind, int k, int n, std::uint64_t seed,
                 int range, long cap, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  std::string text;
  if (kind == "unary") {
    text = serialize_sum(gen_unary(k, n, seed));
  } else if (kind == "random") {
    RejectionStats stats;
    const ValuedFunction f = gen_rejection(k, n, range, seed, 10000, &stats);
    err << "accepted after " << stats.attempts << " draw(s)\n";
    text = serialize_table(f);
  } else if (kind == "rank") {
    text = serialize_table(gen_free_rank(
        k, n, cap < 0 ? std::nullopt : std::optional<int>(static_cast<int>(cap))));
  } else {
    err << "unknown --kind '" << kind << "'\n";
    return 2;
  }
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw ParseError("cannot write '" + out_path + "'");
    file << text;
  }
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"exact toolkit for k-submodular functions on star domains"};
  app.require_subcommand(1);
  std::uint64_t budget = kDefaultBudget;
  app.add_option("--budget", budget, "enumeration budget override");

  std::string path;
  bool certificate = false;
  bool integer = false;
  std::string kind = "unary";
  int gen_k = 2;
  int gen_n = 2;
  std::uint64_t seed = 0;
  int range = 2;
  long cap = -1;
  std::string out_path;
  std::string K_text;
  std::optional<std::uint64_t> order_seed;

  CLI::App* check = app.add_subcommand("check", "submodularity verdicts");
  check->add_option("file", path)->required();
  CLI::App* minimize = app.add_subcommand("minimize", "exact minimization");
  minimize->add_option("file", path)->required();
  minimize->add_flag("--certificate", certificate, "emit a min-max certificate");
  CLI::App* dual = app.add_subcommand("dual", "maximize the dual objective");
  dual->add_option("file", path)->required();
  dual->add_flag("--integer", integer, "restrict to integer dual vectors");
  CLI::App* verify_ft_cmd =
      app.add_subcommand("verify-ft", "cross-check via the epigraph LP");
  verify_ft_cmd->add_option("file", path)->required();
  CLI::App* multimatroid_cmd =
      app.add_subcommand("multimatroid", "rank axiom verification");
  multimatroid_cmd->add_option("file", path)->required();
  CLI::App* greedy = app.add_subcommand("greedy", "greedy base vector below K");
  greedy->add_option("file", path)->required();
  greedy->add_option("--K", K_text, "all-leaf labeling tokens, e.g. '1 2 1'")
      ->required();
  greedy->add_option("--order-seed", order_seed,
                     "randomize the insertion order (default: identity)");
  CLI::App* generate = app.add_subcommand("generate", "emit a seeded instance");
  generate->add_option("--kind", kind, "unary|random|rank");
  generate->add_option("--k", gen_k, "number of leaves")->required();
  generate->add_option("--n", gen_n, "number of coordinates")->required();
  generate->add_option("--seed", seed, "generator seed");
  generate->add_option("--range", range, "value range for --kind random");
  generate->add_option("--cap", cap, "rank cap for --kind rank (-1 = none)");
  generate->add_option("-o,--output", out_path, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.name("ksub");
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help lands here; CLI11 renders it through exit().
      std::ostringstream help;
      const int code = app.exit(e, help, help);
      out << help.str();
      return code;
    }
    err << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (check->parsed()) return run_check(path, budget, out, err);
    if (minimize->parsed()) return run_minimize(path, certificate, budget, out, err);
    if (dual->parsed()) return run_dual(path, integer, budget, out, err);
    if (verify_ft_cmd->parsed()) return run_verify_ft(path, budget, out, err);
    if (multimatroid_cmd->parsed())
      return run_multimatroid(path, budget, out);
    if (greedy->parsed())
      return run_greedy(path, K_text, order_seed, budget, out, err);
    if (generate->parsed())
      return run_generate(kind, gen_k, gen_n, seed, range, cap, out_path, out, err);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const KsubError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << "no subcommand given\n";
  return 2;
}

}  // namespace ksub
