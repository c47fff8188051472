#include <doctest.h>

#include "wadgekit/error.hpp"
#include "wadgekit/harness.hpp"

#include <algorithm>

using namespace wadgekit;

TEST_CASE("SplitMix64 reference outputs") {
  SplitMix64 zero(0);
  CHECK(zero.next() == 0xE220A8397B1DCDAFULL);
  CHECK(zero.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(zero.next() == 0x06C45D188009454FULL);

  SplitMix64 r(1234567);
  CHECK(r.next() == 6457827717110365317ULL);
  CHECK(r.next() == 3203168211198807973ULL);

  SplitMix64 b(42);
  std::vector<std::uint64_t> draws;
  for (int i = 0; i < 8; ++i)
    draws.push_back(b.below(10));
  CHECK(draws == std::vector<std::uint64_t>{7, 1, 2, 3, 0, 8, 2, 8});
  CHECK_THROWS_AS(b.below(0), InvariantError);

  SplitMix64 c(9);
  for (int i = 0; i < 1000; ++i) {
    auto v = c.between(3, 5);
    CHECK(v >= 3);
    CHECK(v <= 5);
  }
  CHECK_FALSE(c.chance(0.0));
  CHECK(c.chance(1.0));
}

TEST_CASE("generation is a pure function of seed and config") {
  GenConfig cfg;
  cfg.seed = 17;
  cfg.depth = 2;
  CHECK(gen_automaton(cfg) == gen_automaton(cfg));
  CHECK(gen_acceptor(cfg).labeling() == gen_acceptor(cfg).labeling());
  CHECK(gen_poset(cfg) == gen_poset(cfg));
  CHECK(gen_forest(cfg) == gen_forest(cfg));
  SplitMix64 r1(5), r2(5);
  auto w1 = gen_word(r1, 3, 4), w2 = gen_word(r2, 3, 4);
  CHECK(w1.prefix == w2.prefix);
  CHECK(w1.period == w2.period);
}

TEST_CASE("one-state configs give the unique one-state automaton") {
  GenConfig cfg;
  cfg.states = {1, 1};
  cfg.alphabet_size = 3;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    cfg.seed = seed;
    auto a = gen_automaton(cfg);
    CHECK(a == Automaton(1, make_alphabet(3), 0, {0, 0, 0}));
  }
}

TEST_CASE("generated objects satisfy their invariants") {
  GenConfig cfg;
  cfg.states = {5, 5};
  cfg.alphabet_size = 2;
  cfg.k = 3;
  SplitMix64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto a = gen_automaton(rng, cfg);
    CHECK(a.num_states() == 5);
    // Re-parsing goes through every automaton check.
    CHECK(parse_automaton(serialize_automaton(a)).automaton == a);
    auto m = gen_acceptor(rng, cfg);
    CHECK(m.cycles().size() == m.labeling().size());
    for (const auto &[c, label] : m.labeling())
      CHECK(label < cfg.k);
  }

  cfg.nodes = {1, 7};
  for (std::size_t depth = 0; depth <= 2; ++depth) {
    cfg.depth = depth;
    for (int i = 0; i < 60; ++i) {
      auto p = gen_poset(rng, cfg);
      CHECK(p.size() >= 1);
      CHECK(p.size() <= 7);
      CHECK(normalize(p.size(), p.cover_edges()) == p.cover_edges());
      for (const auto &l : p.labels()) {
        CHECK(l.depth() <= depth);
        if (!l.is_base())
          CHECK(l.nested().poset().least_node() == l.nested().root());
      }
      auto f = gen_forest(rng, cfg);
      CHECK(f.is_forest());
      CHECK_NOTHROW(Forest{f});
    }
  }
}

TEST_CASE("depth 2 posets reach nested pointed labels inside nested labels") {
  GenConfig cfg;
  cfg.depth = 2;
  cfg.nodes = {4, 7};
  SplitMix64 rng(2);
  std::size_t deepest = 0;
  for (int i = 0; i < 40; ++i) {
    auto p = gen_poset(rng, cfg);
    for (const auto &l : p.labels())
      deepest = std::max(deepest, l.depth());
  }
  CHECK(deepest == 2);
}

TEST_CASE("validate rejects bad configurations") {
  GenConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  auto bad = cfg;
  bad.states = {3, 2};
  CHECK_THROWS_AS(validate(bad), InvariantError);
  bad = cfg;
  bad.nodes = {0, 2};
  CHECK_THROWS_AS(validate(bad), InvariantError);
  bad = cfg;
  bad.depth = 3;
  CHECK_THROWS_AS(validate(bad), InvariantError);
  bad = cfg;
  bad.k = 0;
  CHECK_THROWS_AS(validate(bad), InvariantError);
  bad = cfg;
  bad.edge_probability = 1.5;
  CHECK_THROWS_AS(gen_poset(bad), InvariantError);
}

TEST_CASE("make_alphabet") {
  auto a = make_alphabet(3);
  CHECK(a.size() == 3);
  CHECK(a.find("c") == LetterId{2});
  CHECK(make_alphabet(28).find("x27") == LetterId{27});
}

TEST_CASE("bench families") {
  auto [c1, c2] = bench_pair(BenchFamily::chain, 10);
  CHECK(c1.size() == 10);
  CHECK(c1.cover_edge_count() == 9);
  CHECK(c1 == c2);
  auto [a1, a2] = bench_pair(BenchFamily::antichain, 10);
  CHECK(a1.cover_edge_count() == 0);
  auto [r1, r2] = bench_pair(BenchFamily::random, 50);
  CHECK(r1.size() == 50);
  CHECK(r2.size() == 50);

  CHECK(parse_bench_family("antichain") == BenchFamily::antichain);
  CHECK_THROWS_AS(parse_bench_family("tree"), InvariantError);
  CHECK(to_string(BenchFamily::random) == "random");
}

TEST_CASE("scaling_run and timing_csv") {
  auto rows = scaling_run(BenchFamily::chain, {50, 400}, 5);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].size == 50);
  CHECK(rows[1].size == 400);
  CHECK(rows[0].median_ns <= rows[1].median_ns);
  CHECK_THROWS_AS(scaling_run(BenchFamily::chain, {400, 50}), InvariantError);

  auto csv = timing_csv({{BenchFamily::antichain, 500, 1234}, {BenchFamily::chain, 1000, 99}});
  CHECK(csv == "family,size,median_ns\nantichain,500,1234\nchain,1000,99\n");
}
