#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wadgekit {

using StateId = std::uint32_t;
using LetterId = std::uint32_t;

/// Sorted, duplicate-free list of state ids.
using StateSet = std::vector<StateId>;

/// Ordered list of distinct letter names. Order is fixed at construction and
/// is the order used for serialization.
class Alphabet {
public:
  explicit Alphabet(std::vector<std::string> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  const std::string &name(LetterId id) const { return letters_.at(id); }
  const std::vector<std::string> &letters() const noexcept { return letters_; }

  /// Index of `letter`, or nullopt if it is not part of the alphabet.
  std::optional<LetterId> find(std::string_view letter) const;

  friend bool operator==(const Alphabet &, const Alphabet &) = default;

private:
  std::vector<std::string> letters_;
};

/// Complete deterministic automaton (Q, f, in) with dense state ids 0..n-1.
///
/// The transition table is total: every (state, letter) pair has exactly one
/// target. Unreachable states are kept; analyses restrict themselves to the
/// part reachable from `initial()`.
class Automaton {
public:
  /// `delta[q * alphabet.size() + x]` is the target of state q on letter x.
  Automaton(std::size_t num_states, Alphabet alphabet, StateId initial,
            std::vector<StateId> delta);

  std::size_t num_states() const noexcept { return num_states_; }
  const Alphabet &alphabet() const noexcept { return alphabet_; }
  StateId initial() const noexcept { return initial_; }

  StateId next(StateId q, LetterId x) const {
    return delta_[static_cast<std::size_t>(q) * alphabet_.size() + x];
  }

  /// Distinct targets of q, ascending. Parallel letters collapse to one arc.
  StateSet successors(StateId q) const;

  bool has_edge(StateId from, StateId to) const;

  friend bool operator==(const Automaton &, const Automaton &) = default;

private:
  std::size_t num_states_;
  Alphabet alphabet_;
  StateId initial_;
  std::vector<StateId> delta_;
};

/// The word prefix . period^omega. `period` must be nonempty.
struct UltimatelyPeriodicWord {
  std::vector<LetterId> prefix;
  std::vector<LetterId> period;
};

/// Parses a whitespace- or comma-separated list of letter names.
std::vector<LetterId> parse_letters(const Alphabet &alphabet,
                                    std::string_view text);

/// One `cycle:` or `subset:` line of an acceptor labeling section.
struct LabelEntry {
  StateSet states;
  std::uint32_t label = 0;
  std::size_t line = 0;
};

/// Raw labeling section as it appears after the automaton in a file.
struct LabelingSection {
  enum class Kind { cycle_list, subset_table };
  Kind kind = Kind::cycle_list;
  std::uint32_t k = 0;
  std::vector<LabelEntry> entries;
};

struct AutomatonFile {
  Automaton automaton;
  std::optional<LabelingSection> labeling;
};

/// Parses the line-based automaton format, with an optional labeling section.
/// Throws ParseError with the offending line number.
AutomatonFile parse_automaton(std::string_view text);

/// Emits `alphabet:`, `states:`, `initial:` and the transitions sorted by
/// (from, letter index).
std::string serialize_automaton(const Automaton &a);

/// States reachable from the initial state (always contains it), ascending.
StateSet reachable_states(const Automaton &a);

/// Reflexive-transitive reachability over all states, as an n x n bit table.
class ReachabilityRelation {
public:
  ReachabilityRelation() = default;
  explicit ReachabilityRelation(std::size_t n) : n_(n), bits_(n * n, 0) {}

  std::size_t size() const noexcept { return n_; }
  bool contains(StateId from, StateId to) const {
    return bits_[static_cast<std::size_t>(from) * n_ + to] != 0;
  }
  void insert(StateId from, StateId to) {
    bits_[static_cast<std::size_t>(from) * n_ + to] = 1;
  }

private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Breadth-first search from every state; (p, p) is always present.
ReachabilityRelation reachability_matrix(const Automaton &a);

/// Strongly connected components of the reachable subgraph.
struct SccDecomposition {
  /// Components sorted by smallest member; each component sorted ascending.
  std::vector<StateSet> components;
  /// Component index of each state, or -1 for unreachable states.
  std::vector<int> component_of;
  /// Distinct direct successors of each component in the condensation DAG.
  std::vector<std::vector<std::size_t>> condensation;
  /// True when the component carries at least one internal edge.
  std::vector<bool> nontrivial;

  /// Whether component `to` is reachable from component `from` (reflexive).
  bool below(std::size_t from, std::size_t to) const;

private:
  friend SccDecomposition tarjan_scc(const Automaton &a);
  std::vector<std::uint8_t> reach_;
};

SccDecomposition tarjan_scc(const Automaton &a);

/// Synchronous product restricted to pairs reachable from (in1, in2).
struct ProductAutomaton {
  Automaton automaton;
  /// Component states of each product state.
  std::vector<std::pair<StateId, StateId>> pairs;
};

/// Throws InvariantError when the alphabets differ.
ProductAutomaton product(const Automaton &a1, const Automaton &a2);

/// Infinity set of the run of `a` on prefix . period^omega.
StateSet run_eval(const Automaton &a, const UltimatelyPeriodicWord &w);

} // namespace wadgekit
