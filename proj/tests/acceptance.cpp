// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "fixtures.hpp"
#include "wadgekit/cycles.hpp"
#include "wadgekit/harness.hpp"
#include "wadgekit/poset.hpp"
#include "wadgekit/wadge.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace wadgekit;
namespace fx = wadgekit::fixtures;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

Outcome poset_oracle_equivalence() {
  SplitMix64 rng(0xA11CE);
  GenConfig cfg;
  cfg.nodes = {1, 7};
  cfg.nested_nodes = {1, 3};
  std::size_t mismatches = 0, positives = 0;
  const std::size_t total = 500;
  for (std::size_t i = 0; i < total; ++i) {
    cfg.k = static_cast<std::uint32_t>(1 + i % 3);
    cfg.depth = (i / 3) % 2;
    auto p = gen_poset(rng, cfg);
    auto r = gen_poset(rng, cfg);
    bool fast = preceq(p, r);
    bool oracle = h_leq_bruteforce(unfold(p), unfold(r));
    mismatches += fast != oracle;
    positives += oracle;
  }
  return {mismatches == 0, fmt("%zu pairs, %zu related, %zu mismatches", total, positives, mismatches)};
}

Outcome forest_coincidence() {
  SplitMix64 rng(0xF0BE57);
  GenConfig cfg;
  cfg.nodes = {1, 7};
  cfg.nested_nodes = {1, 3};
  std::size_t mismatches = 0, positives = 0;
  const std::size_t total = 500;
  for (std::size_t i = 0; i < total; ++i) {
    cfg.k = static_cast<std::uint32_t>(1 + i % 3);
    cfg.depth = (i / 3) % 2;
    auto f = gen_forest(rng, cfg);
    auto g = gen_forest(rng, cfg);
    bool fast = preceq(f, g);
    bool oracle = h_leq_bruteforce(f, g);
    mismatches += fast != oracle;
    positives += oracle;
  }
  return {mismatches == 0, fmt("%zu pairs, %zu related, %zu mismatches", total, positives, mismatches)};
}

Outcome cycle_oracle_equivalence() {
  SplitMix64 rng(0xC7C1E);
  GenConfig cfg;
  cfg.states = {1, 10};
  std::size_t mismatches = 0, bound_violations = 0, largest = 0;
  const std::size_t total = 200;
  for (std::size_t i = 0; i < total; ++i) {
    cfg.alphabet_size = 1 + i % 3;
    auto a = gen_automaton(rng, cfg);
    auto fast = all_cycles(a);
    mismatches += fast != all_cycles_bruteforce(a);
    bound_violations +=
        static_cast<double>(fast.size()) > cycle_count_bound(a.num_states(), cfg.alphabet_size);
    largest = std::max(largest, fast.size());
  }
  return {mismatches == 0 && bound_violations == 0,
          fmt("%zu automata, %zu mismatches, %zu bound violations, max |C_M| = %zu", total,
              mismatches, bound_violations, largest)};
}

Outcome wadge_preorder_laws() {
  SplitMix64 rng(0x9E0DE);
  GenConfig cfg;
  cfg.states = {1, 6};
  cfg.k = 2;
  std::size_t reflexive_fail = 0, transitive_fail = 0, chains = 0;
  // Reflexivity on 100 acceptors.
  SplitMix64 refl(0x5E1F);
  for (int i = 0; i < 100; ++i) {
    cfg.k = static_cast<std::uint32_t>(2 + i % 2);
    auto m = gen_acceptor(refl, cfg);
    reflexive_fail += !decide_wadge_leq(m, m);
  }
  // Transitivity on 100 triples.
  cfg.k = 2;
  for (int i = 0; i < 100; ++i) {
    auto a = gen_acceptor(rng, cfg);
    auto b = gen_acceptor(rng, cfg);
    auto c = gen_acceptor(rng, cfg);
    if (decide_wadge_leq(a, b) && decide_wadge_leq(b, c)) {
      ++chains;
      transitive_fail += !decide_wadge_leq(a, c);
    }
  }
  return {reflexive_fail == 0 && transitive_fail == 0,
          fmt("reflexivity 100 acceptors, %zu violations; transitivity 100 triples "
              "(%zu with premises), %zu violations",
              reflexive_fail, chains, transitive_fail)};
}

Outcome language_invariance() {
  SplitMix64 rng(0x1A96);
  GenConfig cfg;
  cfg.states = {1, 5};
  std::size_t unequal = 0, label_mismatch = 0;
  for (int i = 0; i < 100; ++i) {
    cfg.alphabet_size = 1 + static_cast<std::size_t>(i) % 3;
    cfg.k = static_cast<std::uint32_t>(2 + i % 2);
    auto m = gen_acceptor(rng, cfg);
    auto other = gen_automaton(rng, cfg);
    auto prod = product_acceptor(m, other);
    unequal += classify(m, prod) != WadgeRelation::eq;
    for (int j = 0; j < 50; ++j) {
      auto w = gen_word(rng, cfg.alphabet_size, 8);
      label_mismatch += m.label_of(run_eval(m.automaton(), w)) !=
                        prod.label_of(run_eval(prod.automaton(), w));
    }
  }
  return {unequal == 0 && label_mismatch == 0,
          fmt("100 pairs, %zu not EQ, %zu label disagreements on 5000 words", unequal,
              label_mismatch)};
}

Outcome classical_k2() {
  auto open_closed = to_string(classify(fx::eoc_open(), fx::eoc_closed()));
  auto zero_open = to_string(classify(fx::constant_acceptor(fx::eoc(), 2, 0), fx::eoc_open()));
  bool pass = open_closed == "INCOMPARABLE" && zero_open == "LT";
  return {pass, fmt("open vs closed: %s, constant-0 vs open: %s", std::string(open_closed).c_str(),
                    std::string(zero_open).c_str())};
}

Outcome quadratic_scaling() {
  auto start = Clock::now();
  const std::vector<std::size_t> sizes{500, 1000};
  std::string detail;
  bool pass = true;
  for (auto family : {BenchFamily::chain, BenchFamily::antichain}) {
    auto rows = scaling_run(family, sizes, 31);
    double ratio = static_cast<double>(rows[1].median_ns) / static_cast<double>(rows[0].median_ns);
    pass = pass && ratio >= 3.0 && ratio <= 6.0;
    detail += fmt("%s ratio %.2f (%.2f ms -> %.2f ms); ", std::string(to_string(family)).c_str(),
                  ratio, rows[0].median_ns / 1e6, rows[1].median_ns / 1e6);
  }
  double total = seconds_since(start);
  pass = pass && total < 120.0;
  detail += fmt("bench time %.1f s", total);
  return {pass, detail};
}

Outcome unfolding_maximality() {
  SplitMix64 rng(0x0F01D);
  GenConfig cfg;
  cfg.nodes = {1, 6};
  cfg.edge_probability = 0.4;
  GenConfig forest_cfg;
  forest_cfg.nodes = {1, 5};
  std::size_t upper_fail = 0, largest_fail = 0, below = 0, forests = 0;
  for (int i = 0; i < 200; ++i) {
    cfg.k = forest_cfg.k = static_cast<std::uint32_t>(1 + i % 3);
    auto p = gen_poset(rng, cfg);
    auto u = unfold(p);
    upper_fail += !h_leq_bruteforce(u, p);
    for (int j = 0; j < 10; ++j) {
      auto g = gen_forest(rng, forest_cfg);
      ++forests;
      if (h_leq_bruteforce(g, p)) {
        ++below;
        largest_fail += !preceq(g, u);
      }
    }
  }
  return {upper_fail == 0 && largest_fail == 0,
          fmt("200 posets, %zu with u(P) not below P; %zu forests, %zu below P, %zu not below u(P)",
              upper_fail, forests, below, largest_fail)};
}

} // namespace

int main() {
  struct Criterion {
    const char *name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"poset-oracle equivalence", poset_oracle_equivalence},
      {"forest coincidence", forest_coincidence},
      {"cycle-oracle equivalence", cycle_oracle_equivalence},
      {"wadge preorder laws", wadge_preorder_laws},
      {"language invariance", language_invariance},
      {"classical k=2 sanity", classical_k2},
      {"quadratic scaling", quadratic_scaling},
      {"unfolding maximality", unfolding_maximality},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                o.detail.c_str(), seconds_since(start));
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
