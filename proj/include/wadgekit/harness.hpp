#pragma once

#include "wadgekit/automaton.hpp"
#include "wadgekit/poset.hpp"
#include "wadgekit/wadge.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wadgekit {

/// SplitMix64: a 64-bit counter advanced by the golden-ratio increment and
/// passed through a fixed finalizer. `split()` seeds an independent stream
/// from the next output.
///
///   state += 0x9E3779B97F4A7C15
///   z = state
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   return z ^ (z >> 31)
///
/// Bounded draws use the high word of the 128-bit product next() * bound.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability p (53-bit resolution).
  bool chance(double p);
  SplitMix64 split() { return SplitMix64(next()); }

private:
  std::uint64_t state_;
};

struct SizeRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

struct GenConfig {
  std::uint64_t seed = 0;
  SizeRange states{1, 5};
  std::size_t alphabet_size = 2;
  std::uint32_t k = 2;
  SizeRange nodes{1, 7};
  /// Nesting depth of generated labels: 0 gives base labels only; d > 0
  /// gives each node, with probability 1/2, a pointed poset of depth d - 1.
  std::size_t depth = 0;
  double edge_probability = 0.3;
  /// Node count of nested pointed posets, least element included.
  SizeRange nested_nodes{1, 4};
};

/// Throws InvariantError on empty ranges, zero sizes or depth above 2.
void validate(const GenConfig &cfg);

/// Letter names "a", "b", ... for alphabets up to 26 letters, then "x26"...
Alphabet make_alphabet(std::size_t size);

/// Each of the n*d transitions drawn uniformly, state-major; initial state 0.
Automaton gen_automaton(const GenConfig &cfg);
/// Labels every cycle uniformly in 0..k-1, in canonical cycle order.
MullerKAcceptor gen_acceptor(const GenConfig &cfg);
/// Random DAG over randomly permuted ids, then normalized.
LabeledPoset gen_poset(const GenConfig &cfg);
/// Random forest: each node attaches to an earlier node or starts a tree.
LabeledPoset gen_forest(const GenConfig &cfg);

// Stream versions, for drawing several objects from one seed.
Automaton gen_automaton(SplitMix64 &rng, const GenConfig &cfg);
MullerKAcceptor gen_acceptor(SplitMix64 &rng, const GenConfig &cfg);
LabeledPoset gen_poset(SplitMix64 &rng, const GenConfig &cfg);
LabeledPoset gen_forest(SplitMix64 &rng, const GenConfig &cfg);
PointedPoset gen_pointed(SplitMix64 &rng, const GenConfig &cfg, std::size_t depth);
UltimatelyPeriodicWord gen_word(SplitMix64 &rng, std::size_t alphabet_size,
                                std::size_t max_length);

enum class BenchFamily { chain, antichain, random };

std::string_view to_string(BenchFamily f);
/// Throws InvariantError on an unknown name.
BenchFamily parse_bench_family(std::string_view name);

/// The two same-size posets compared by the benchmark.
std::pair<LabeledPoset, LabeledPoset> bench_pair(BenchFamily family, std::size_t size);

struct TimingRow {
  BenchFamily family;
  std::size_t size;
  std::uint64_t median_ns;
};

/// Median wall-clock time of preceq on bench_pair(family, size) over
/// `repetitions` runs (at least 5), single-threaded.
std::vector<TimingRow> scaling_run(BenchFamily family, const std::vector<std::size_t> &sizes,
                                   std::size_t repetitions = 5);

/// `family,size,median_ns` header plus one line per row.
std::string timing_csv(const std::vector<TimingRow> &rows);

} // namespace wadgekit
