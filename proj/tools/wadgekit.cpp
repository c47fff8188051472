// wadgekit command-line front end.
//
// Exit codes: 0 relation holds / success, 1 relation fails, 2 input or usage
// error.

#include "wadgekit/automaton.hpp"
#include "wadgekit/cycles.hpp"
#include "wadgekit/error.hpp"
#include "wadgekit/harness.hpp"
#include "wadgekit/poset.hpp"
#include "wadgekit/wadge.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

namespace {

using namespace wadgekit;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kInputError = 2;

std::string read_input(const std::string &path) {
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

MullerKAcceptor load_acceptor(const std::string &path, bool strict) {
  auto file = parse_automaton(read_input(path));
  std::vector<StateSet> dropped;
  auto m = MullerKAcceptor::from_file(file, strict, &dropped);
  if (!dropped.empty())
    std::cerr << "warning: " << path << ": " << dropped.size()
              << " subset-table entries are not cycles and were dropped\n";
  return m;
}

std::string format_set(const StateSet &s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i)
    os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

SizeRange parse_range(const std::string &text) {
  auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      auto v = std::stoul(text);
      return {v, v};
    }
    return {std::stoul(text.substr(0, colon)), std::stoul(text.substr(colon + 1))};
  } catch (const std::exception &) {
    throw Error("invalid range '" + text + "' (expected N or LO:HI)");
  }
}

std::size_t unfold_limit(std::optional<std::size_t> flag) {
  if (flag)
    return *flag;
  if (const char *env = std::getenv("WADGEKIT_UNFOLD_LIMIT")) {
    try {
      return std::stoul(env);
    } catch (const std::exception &) {
      throw Error("WADGEKIT_UNFOLD_LIMIT must be a nonnegative integer");
    }
  }
  return kDefaultUnfoldLimit;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Wadge reducibility of omega-regular k-partitions given as Muller k-acceptors"};
  app.require_subcommand(1);
  int exit_code = kHolds;

  // decide
  std::string decide_a, decide_b;
  bool decide_both = false, decide_relation = false, strict = false;
  auto *decide = app.add_subcommand("decide", "Decide L(A) <=_W L(B) for two acceptor files");
  decide->add_option("A", decide_a, "First acceptor")->required();
  decide->add_option("B", decide_b, "Second acceptor")->required();
  auto *both_flag = decide->add_flag("--both", decide_both, "Print LT, GT, EQ or INCOMPARABLE");
  decide->add_flag("--relation", decide_relation, "Print LE or NOT-LE (default)")->excludes(both_flag);
  decide->add_flag("--strict-subsets", strict, "Require all 2^n subset-table entries");
  decide->callback([&] {
    auto m1 = load_acceptor(decide_a, strict);
    auto m2 = load_acceptor(decide_b, strict);
    if (decide_both) {
      std::cout << to_string(classify(m1, m2)) << '\n';
      return;
    }
    bool le = decide_wadge_leq(m1, m2);
    std::cout << (le ? "LE" : "NOT-LE") << '\n';
    exit_code = le ? kHolds : kFails;
  });

  // invariant
  std::string inv_file;
  auto *invariant = app.add_subcommand("invariant", "Print the iterated-poset invariant");
  invariant->add_option("FILE", inv_file, "Acceptor file")->required();
  invariant->add_flag("--strict-subsets", strict, "Require all 2^n subset-table entries");
  invariant->callback([&] {
    std::cout << serialize_poset(build_invariant(load_acceptor(inv_file, strict)).poset);
  });

  // cycles
  std::string cyc_file, cyc_format = "list";
  bool cyc_count = false, cyc_bound = false;
  auto *cycles = app.add_subcommand("cycles", "List the cycle set of an automaton");
  cycles->add_option("FILE", cyc_file, "Automaton or acceptor file")->required();
  cycles->add_option("--format", cyc_format, "Output format")
      ->check(CLI::IsMember({"list", "subsets"}));
  cycles->add_flag("--count", cyc_count, "Print the number of cycles");
  cycles->add_flag("--bound", cyc_bound, "Print max(2^d, C^n + n)");
  cycles->callback([&] {
    auto file = parse_automaton(read_input(cyc_file));
    const auto &a = file.automaton;
    auto cs = all_cycles(a);
    if (cyc_count || cyc_bound) {
      if (cyc_count)
        std::cout << cs.size() << '\n';
      if (cyc_bound)
        std::cout << std::setprecision(10)
                  << cycle_count_bound(a.num_states(), a.alphabet().size()) << '\n';
      return;
    }
    std::optional<MullerKAcceptor> m;
    if (file.labeling)
      m = MullerKAcceptor::from_file(file);
    for (const auto &c : cs) {
      if (cyc_format == "list") {
        std::cout << "cycle:";
        for (StateId q : c)
          std::cout << ' ' << q;
      } else {
        std::cout << "subset: " << to_bitstring(c, a.num_states());
      }
      if (m)
        std::cout << " -> " << m->label_of(c);
      std::cout << '\n';
    }
  });

  // compare-posets
  std::string cmp_p, cmp_r;
  auto *compare = app.add_subcommand("compare-posets", "Decide P ≼ R for two poset files");
  compare->add_option("P", cmp_p, "First poset")->required();
  compare->add_option("R", cmp_r, "Second poset")->required();
  compare->callback([&] {
    bool le = preceq(parse_poset(read_input(cmp_p)), parse_poset(read_input(cmp_r)));
    std::cout << (le ? "LE" : "NOT-LE") << '\n';
    exit_code = le ? kHolds : kFails;
  });

  // unfold
  std::string unf_file;
  std::optional<std::size_t> unf_limit;
  auto *unfold_cmd = app.add_subcommand("unfold", "Print the bottom-up unfolding of a poset");
  unfold_cmd->add_option("P", unf_file, "Poset file")->required();
  unfold_cmd->add_option("--limit", unf_limit, "Node limit (env WADGEKIT_UNFOLD_LIMIT)");
  unfold_cmd->callback([&] {
    auto forest = unfold(parse_poset(read_input(unf_file)), unfold_limit(unf_limit));
    std::cout << serialize_poset(forest.poset());
  });

  // eval
  std::string eval_file, eval_prefix, eval_period;
  auto *eval = app.add_subcommand("eval", "Infinity set of the run on prefix.period^omega");
  eval->add_option("FILE", eval_file, "Automaton or acceptor file")->required();
  eval->add_option("--prefix", eval_prefix, "Letters of the prefix (space or comma separated)");
  eval->add_option("--period", eval_period, "Letters of the period")->required();
  eval->callback([&] {
    auto file = parse_automaton(read_input(eval_file));
    const auto &a = file.automaton;
    UltimatelyPeriodicWord w{parse_letters(a.alphabet(), eval_prefix),
                             parse_letters(a.alphabet(), eval_period)};
    if (w.period.empty())
      throw Error("period must be nonempty");
    auto inf = run_eval(a, w);
    std::cout << format_set(inf);
    if (file.labeling)
      std::cout << " -> " << MullerKAcceptor::from_file(file).label_of(inf);
    std::cout << '\n';
  });

  // gen
  std::string gen_kind, gen_states = "1:5", gen_nodes = "1:7", gen_nested = "1:4";
  GenConfig gen_cfg;
  auto *gen = app.add_subcommand("gen", "Generate a random automaton, acceptor, poset or forest");
  gen->add_option("KIND", gen_kind, "automaton | acceptor | poset | forest")
      ->required()
      ->check(CLI::IsMember({"automaton", "acceptor", "poset", "forest"}));
  gen->add_option("--seed", gen_cfg.seed, "Seed");
  gen->add_option("--states", gen_states, "State count N or LO:HI");
  gen->add_option("--alphabet", gen_cfg.alphabet_size, "Alphabet size");
  gen->add_option("--k", gen_cfg.k, "Number of labels");
  gen->add_option("--nodes", gen_nodes, "Node count N or LO:HI");
  gen->add_option("--nested-nodes", gen_nested, "Nested poset size N or LO:HI");
  gen->add_option("--depth", gen_cfg.depth, "Label nesting depth (0-2)");
  gen->add_option("--edge-prob", gen_cfg.edge_probability, "Edge probability");
  gen->callback([&] {
    gen_cfg.states = parse_range(gen_states);
    gen_cfg.nodes = parse_range(gen_nodes);
    gen_cfg.nested_nodes = parse_range(gen_nested);
    if (gen_kind == "automaton")
      std::cout << serialize_automaton(gen_automaton(gen_cfg));
    else if (gen_kind == "acceptor")
      std::cout << serialize_acceptor(gen_acceptor(gen_cfg));
    else if (gen_kind == "poset")
      std::cout << serialize_poset(gen_poset(gen_cfg));
    else
      std::cout << serialize_poset(gen_forest(gen_cfg));
  });

  // bench
  std::string bench_family = "chain";
  std::vector<std::size_t> bench_sizes{500, 1000};
  std::size_t bench_reps = 5;
  auto *bench = app.add_subcommand("bench", "Time preceq on growing poset families (CSV)");
  bench->add_option("--family", bench_family, "chain | antichain | random | all")
      ->check(CLI::IsMember({"chain", "antichain", "random", "all"}));
  bench->add_option("--sizes", bench_sizes, "Ascending sizes")->delimiter(',');
  bench->add_option("--reps", bench_reps, "Repetitions per size (at least 5)");
  bench->callback([&] {
    std::vector<TimingRow> rows;
    for (auto f : {BenchFamily::chain, BenchFamily::antichain, BenchFamily::random}) {
      if (bench_family != "all" && bench_family != to_string(f))
        continue;
      auto part = scaling_run(f, bench_sizes, bench_reps);
      rows.insert(rows.end(), part.begin(), part.end());
    }
    std::cout << timing_csv(rows);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kInputError;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return exit_code;
}
