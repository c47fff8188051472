#pragma once

#include "wadgekit/automaton.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace wadgekit {

/// A set of states visited infinitely often by some run from the initial
/// state. Canonical encoding: sorted state ids.
using Cycle = StateSet;

/// Sorted (lexicographically), duplicate-free list of cycles.
using CycleSet = std::vector<Cycle>;

/// Distinct vertices v1..vt with arcs v_i -> v_{i+1} and v_t -> v1. Rotated
/// so that the smallest id comes first.
using ElementaryCycle = std::vector<StateId>;

/// Undirected graph on elementary cycles; two cycles are adjacent iff they
/// share a state.
struct IntersectionGraph {
  std::vector<ElementaryCycle> vertices;
  std::vector<std::vector<std::size_t>> adjacency;
};

/// Johnson's enumeration on the reachable part of `a`, treated as a simple
/// digraph. Self-loops yield cycles of length one.
std::vector<ElementaryCycle> elementary_cycles(const Automaton &a);

IntersectionGraph intersection_graph(std::vector<ElementaryCycle> cycles);

/// The cycle set C_M, computed by merging elementary cycles along the
/// intersection graph: every union of a connected family of elementary
/// cycles is a cycle and every cycle arises that way. A worklist starts from
/// the single elementary cycles and extends each new state set by one
/// overlapping elementary cycle at a time; an ordered set of state sets
/// filters repeats, so each cycle is expanded once.
CycleSet all_cycles(const Automaton &a);

/// Largest state count accepted by all_cycles_bruteforce.
inline constexpr std::size_t kBruteforceCycleMaxStates = 20;

/// Enumerates every subset of reachable states and keeps the strongly
/// connected ones. Throws SizeLimitError above kBruteforceCycleMaxStates.
CycleSet all_cycles_bruteforce(const Automaton &a);

/// Checks the Cycle invariant directly: nonempty, reachable, induced subgraph
/// strongly connected, and a self-loop when the set is a singleton.
bool is_cycle(const Automaton &a, const StateSet &states);

/// Upper bound max(2^d, C^n + n) on |C_M| for n states over d letters, with
/// C = 2 (1 - 2^-(d+1))^(1/(d+1)).
double cycle_count_bound(std::size_t n, std::size_t d);

/// Bit string of length n with bit i set iff state i is in `states`.
std::string to_bitstring(const StateSet &states, std::size_t n);

struct SubsetTableResult {
  std::map<Cycle, std::uint32_t> labels;
  /// Entries whose state set is not a cycle; they carry no meaning.
  std::vector<StateSet> dropped;
};

/// Restricts a subset table to C_M. In strict mode all 2^n subsets must be
/// present. Throws LabelingError for a missing cycle, a duplicate entry, or
/// an incomplete strict table.
SubsetTableResult subset_table_to_cycles(const Automaton &a,
                                         const std::vector<LabelEntry> &table,
                                         bool strict = false);

} // namespace wadgekit
