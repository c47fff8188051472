#include "wadgekit/harness.hpp"

#include "wadgekit/error.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

namespace wadgekit {

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  __extension__ using Wide = unsigned __int128;
  if (bound == 0)
    throw InvariantError("SplitMix64::below: bound must be positive");
  return static_cast<std::uint64_t>((static_cast<Wide>(next()) * bound) >> 64);
}

bool SplitMix64::chance(double p) {
  return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
}

void validate(const GenConfig &cfg) {
  auto check = [](SizeRange r, const char *what) {
    if (r.lo == 0 || r.lo > r.hi)
      throw InvariantError(std::string("invalid ") + what + " range");
  };
  check(cfg.states, "states");
  check(cfg.nodes, "nodes");
  check(cfg.nested_nodes, "nested_nodes");
  if (cfg.alphabet_size == 0)
    throw InvariantError("alphabet size must be positive");
  if (cfg.k == 0)
    throw InvariantError("k must be positive");
  if (cfg.depth > 2)
    throw InvariantError("label depth is limited to 2");
  if (!(cfg.edge_probability >= 0.0 && cfg.edge_probability <= 1.0))
    throw InvariantError("edge probability must lie in [0, 1]");
}

Alphabet make_alphabet(std::size_t size) {
  std::vector<std::string> letters;
  for (std::size_t i = 0; i < size; ++i)
    letters.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i))
                             : "x" + std::to_string(i));
  return Alphabet(std::move(letters));
}

Automaton gen_automaton(SplitMix64 &rng, const GenConfig &cfg) {
  validate(cfg);
  const std::size_t n = rng.between(cfg.states.lo, cfg.states.hi);
  std::vector<StateId> delta(n * cfg.alphabet_size);
  for (auto &t : delta)
    t = static_cast<StateId>(rng.below(n));
  return Automaton(n, make_alphabet(cfg.alphabet_size), 0, std::move(delta));
}

MullerKAcceptor gen_acceptor(SplitMix64 &rng, const GenConfig &cfg) {
  auto a = gen_automaton(rng, cfg);
  std::map<Cycle, std::uint32_t> labeling;
  for (auto &c : all_cycles(a))
    labeling.emplace(std::move(c), static_cast<std::uint32_t>(rng.below(cfg.k)));
  return MullerKAcceptor(std::move(a), cfg.k, std::move(labeling));
}

namespace {

std::vector<NodeId> permutation(SplitMix64 &rng, std::size_t n) {
  std::vector<NodeId> perm(n);
  std::iota(perm.begin(), perm.end(), NodeId{0});
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

Label gen_label(SplitMix64 &rng, const GenConfig &cfg, std::size_t depth) {
  if (depth > 0 && rng.chance(0.5))
    return Label::nested(gen_pointed(rng, cfg, depth - 1));
  return Label::base(static_cast<std::uint32_t>(rng.below(cfg.k)));
}

LabeledPoset gen_dag(SplitMix64 &rng, const GenConfig &cfg, std::size_t n, std::size_t depth) {
  auto perm = permutation(rng, n);
  std::vector<OrderPair> rel;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.chance(cfg.edge_probability))
        rel.emplace_back(perm[i], perm[j]);
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(gen_label(rng, cfg, depth));
  return LabeledPoset(std::move(labels), rel);
}

} // namespace

PointedPoset gen_pointed(SplitMix64 &rng, const GenConfig &cfg, std::size_t depth) {
  const std::size_t m = rng.between(cfg.nested_nodes.lo, cfg.nested_nodes.hi);
  if (m == 1)
    return PointedPoset(singleton(gen_label(rng, cfg, depth)));
  auto body = gen_dag(rng, cfg, m - 1, depth);
  // Node m-1 becomes the explicit least element below every body node.
  std::vector<Label> labels = body.labels();
  auto rel = body.cover_edges();
  const auto root = static_cast<NodeId>(m - 1);
  labels.push_back(gen_label(rng, cfg, depth));
  for (NodeId v : body.minimal_nodes())
    rel.emplace_back(root, v);
  return PointedPoset(LabeledPoset(std::move(labels), rel));
}

LabeledPoset gen_poset(SplitMix64 &rng, const GenConfig &cfg) {
  validate(cfg);
  const std::size_t n = rng.between(cfg.nodes.lo, cfg.nodes.hi);
  return gen_dag(rng, cfg, n, cfg.depth);
}

LabeledPoset gen_forest(SplitMix64 &rng, const GenConfig &cfg) {
  validate(cfg);
  const std::size_t n = rng.between(cfg.nodes.lo, cfg.nodes.hi);
  auto perm = permutation(rng, n);
  std::vector<OrderPair> rel;
  for (std::size_t i = 1; i < n; ++i)
    if (rng.chance(0.75))
      rel.emplace_back(perm[rng.below(i)], perm[i]);
  std::vector<Label> labels;
  for (std::size_t i = 0; i < n; ++i)
    labels.push_back(gen_label(rng, cfg, cfg.depth));
  return LabeledPoset(std::move(labels), rel);
}

Automaton gen_automaton(const GenConfig &cfg) {
  SplitMix64 rng(cfg.seed);
  return gen_automaton(rng, cfg);
}

MullerKAcceptor gen_acceptor(const GenConfig &cfg) {
  SplitMix64 rng(cfg.seed);
  return gen_acceptor(rng, cfg);
}

LabeledPoset gen_poset(const GenConfig &cfg) {
  SplitMix64 rng(cfg.seed);
  return gen_poset(rng, cfg);
}

LabeledPoset gen_forest(const GenConfig &cfg) {
  SplitMix64 rng(cfg.seed);
  return gen_forest(rng, cfg);
}

UltimatelyPeriodicWord gen_word(SplitMix64 &rng, std::size_t alphabet_size,
                                std::size_t max_length) {
  UltimatelyPeriodicWord w;
  const std::size_t prefix = rng.between(0, max_length);
  const std::size_t period = rng.between(1, std::max<std::size_t>(1, max_length));
  for (std::size_t i = 0; i < prefix; ++i)
    w.prefix.push_back(static_cast<LetterId>(rng.below(alphabet_size)));
  for (std::size_t i = 0; i < period; ++i)
    w.period.push_back(static_cast<LetterId>(rng.below(alphabet_size)));
  return w;
}

std::string_view to_string(BenchFamily f) {
  switch (f) {
  case BenchFamily::chain:
    return "chain";
  case BenchFamily::antichain:
    return "antichain";
  case BenchFamily::random:
    return "random";
  }
  return "?";
}

BenchFamily parse_bench_family(std::string_view name) {
  if (name == "chain")
    return BenchFamily::chain;
  if (name == "antichain")
    return BenchFamily::antichain;
  if (name == "random")
    return BenchFamily::random;
  throw InvariantError("unknown benchmark family '" + std::string(name) + "'");
}

std::pair<LabeledPoset, LabeledPoset> bench_pair(BenchFamily family, std::size_t size) {
  auto alternating = [size] {
    std::vector<Label> labels;
    for (std::size_t i = 0; i < size; ++i)
      labels.push_back(Label::base(static_cast<std::uint32_t>(i % 2)));
    return labels;
  };
  switch (family) {
  case BenchFamily::chain: {
    std::vector<OrderPair> rel;
    for (std::size_t i = 0; i + 1 < size; ++i)
      rel.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
    return {LabeledPoset(alternating(), rel), LabeledPoset(alternating(), rel)};
  }
  case BenchFamily::antichain:
    return {LabeledPoset(alternating(), {}), LabeledPoset(alternating(), {})};
  case BenchFamily::random: {
    GenConfig cfg;
    cfg.nodes = {size, size};
    cfg.edge_probability = std::min(1.0, 3.0 / static_cast<double>(size));
    SplitMix64 rng(size);
    auto first = gen_poset(rng, cfg);
    auto second = gen_poset(rng, cfg);
    return {std::move(first), std::move(second)};
  }
  }
  throw InvariantError("unknown benchmark family");
}

std::vector<TimingRow> scaling_run(BenchFamily family, const std::vector<std::size_t> &sizes,
                                   std::size_t repetitions) {
  if (!std::is_sorted(sizes.begin(), sizes.end()))
    throw InvariantError("benchmark sizes must be ascending");
  repetitions = std::max<std::size_t>(repetitions, 5);
  std::vector<TimingRow> rows;
  for (std::size_t size : sizes) {
    auto [p1, p2] = bench_pair(family, size);
    std::vector<std::uint64_t> samples;
    volatile bool sink = false;
    for (std::size_t r = 0; r < repetitions; ++r) {
      auto start = std::chrono::steady_clock::now();
      sink = preceq(p1, p2);
      auto stop = std::chrono::steady_clock::now();
      samples.push_back(static_cast<std::uint64_t>(
          std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count()));
    }
    (void)sink;
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                     samples.end());
    rows.push_back({family, size, samples[samples.size() / 2]});
  }
  return rows;
}

std::string timing_csv(const std::vector<TimingRow> &rows) {
  std::ostringstream os;
  os << "family,size,median_ns\n";
  for (const auto &r : rows)
    os << to_string(r.family) << ',' << r.size << ',' << r.median_ns << '\n';
  return os.str();
}

} // namespace wadgekit
