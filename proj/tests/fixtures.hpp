#pragma once

#include "wadgekit/automaton.hpp"
#include "wadgekit/poset.hpp"
#include "wadgekit/wadge.hpp"

#include <map>
#include <string>

namespace wadgekit::fixtures {

inline const char *kOneState = R"(alphabet: a
states: 1
initial: 0
trans: 0 a 0
)";

// 0 -a-> 1, 0 -b-> 0, 1 -a-> 1, 1 -b-> 0
inline const char *kE2 = R"(# two states, one SCC
alphabet: a b
states: 2
initial: 0
trans: 0 a 1
trans: 0 b 0
trans: 1 a 1
trans: 1 b 0
)";

// State 1 is absorbing.
inline const char *kEOC = R"(alphabet: a b
states: 2
initial: 0
trans: 0 a 0
trans: 0 b 1
trans: 1 a 1
trans: 1 b 1
)";

// 0 -> 1 -> 2, 2 absorbing.
inline const char *kChain3 = R"(alphabet: a
states: 3
initial: 0
trans: 0 a 1
trans: 1 a 2
trans: 2 a 2
)";

// 0 branches to two absorbing sinks.
inline const char *kTwoSinks = R"(alphabet: a b
states: 3
initial: 0
trans: 0 a 1
trans: 0 b 2
trans: 1 a 1
trans: 1 b 1
trans: 2 a 2
trans: 2 b 2
)";

inline Automaton automaton(const char *text) { return parse_automaton(text).automaton; }

inline Automaton one_state() { return automaton(kOneState); }
inline Automaton e2() { return automaton(kE2); }
inline Automaton eoc() { return automaton(kEOC); }

/// E2 with A({0}) = 0, A({1}) = 1, A({0,1}) = 0.
inline MullerKAcceptor e2_acceptor() {
  return MullerKAcceptor(e2(), 2, {{{0}, 0}, {{1}, 1}, {{0, 1}, 0}});
}
inline MullerKAcceptor eoc_open() { return MullerKAcceptor(eoc(), 2, {{{0}, 0}, {{1}, 1}}); }
inline MullerKAcceptor eoc_closed() { return MullerKAcceptor(eoc(), 2, {{{0}, 1}, {{1}, 0}}); }

inline MullerKAcceptor constant_acceptor(const Automaton &a, std::uint32_t k, std::uint32_t label) {
  std::map<Cycle, std::uint32_t> labeling;
  for (const auto &c : all_cycles(a))
    labeling.emplace(c, label);
  return MullerKAcceptor(a, k, std::move(labeling));
}

inline LabeledPoset base_poset(std::vector<std::uint32_t> labels,
                               std::vector<OrderPair> relation = {}) {
  std::vector<Label> ls;
  for (auto l : labels)
    ls.push_back(Label::base(l));
  return LabeledPoset(std::move(ls), relation);
}

/// a < b < d, a < c < d with labels 0, 1, 2, 0 (ids a=0, b=1, c=2, d=3).
inline LabeledPoset diamond() {
  return base_poset({0, 1, 2, 0}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

inline LabeledPoset chain(std::vector<std::uint32_t> labels) {
  std::vector<OrderPair> rel;
  for (std::size_t i = 0; i + 1 < labels.size(); ++i)
    rel.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return base_poset(std::move(labels), rel);
}

} // namespace wadgekit::fixtures
