#include "wadgekit/wadge.hpp"

#include "wadgekit/error.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace wadgekit {

MullerKAcceptor::MullerKAcceptor(Automaton automaton, std::uint32_t k,
                                 std::map<Cycle, std::uint32_t> labeling)
    : automaton_(std::move(automaton)), k_(k), labeling_(std::move(labeling)),
      cycles_(all_cycles(automaton_)) {
  if (k_ == 0)
    throw LabelingError("k must be at least 1");
  const auto n = automaton_.num_states();
  for (const auto &[c, label] : labeling_) {
    if (!std::binary_search(cycles_.begin(), cycles_.end(), c))
      throw LabelingError("labeled state set " + to_bitstring(c, n) + " is not a cycle");
    if (label >= k_)
      throw LabelingError("label " + std::to_string(label) + " is not below k = " +
                          std::to_string(k_));
  }
  for (const auto &c : cycles_)
    if (!labeling_.count(c))
      throw LabelingError("unlabeled cycle " + to_bitstring(c, n));
}

MullerKAcceptor MullerKAcceptor::from_file(const AutomatonFile &file, bool strict_subsets,
                                           std::vector<StateSet> *dropped) {
  if (!file.labeling)
    throw LabelingError("input has no labeling section ('k:' with 'cycle:' or 'subset:' lines)");
  const auto &section = *file.labeling;
  std::map<Cycle, std::uint32_t> labeling;
  if (section.kind == LabelingSection::Kind::subset_table) {
    auto result = subset_table_to_cycles(file.automaton, section.entries, strict_subsets);
    if (dropped)
      dropped->insert(dropped->end(), result.dropped.begin(), result.dropped.end());
    labeling = std::move(result.labels);
  } else {
    if (strict_subsets)
      throw LabelingError("--strict-subsets requires a subset table");
    for (const auto &e : section.entries)
      if (!labeling.emplace(e.states, e.label).second)
        throw LabelingError("line " + std::to_string(e.line) + ": duplicate cycle entry");
  }
  return MullerKAcceptor(file.automaton, section.k, std::move(labeling));
}

std::uint32_t MullerKAcceptor::label_of(const Cycle &c) const {
  auto it = labeling_.find(c);
  if (it == labeling_.end())
    throw LabelingError("state set " + to_bitstring(c, automaton_.num_states()) +
                        " is not a cycle");
  return it->second;
}

std::string serialize_acceptor(const MullerKAcceptor &m) {
  std::ostringstream os;
  os << serialize_automaton(m.automaton()) << "k: " << m.k() << '\n';
  for (const auto &c : m.cycles()) {
    os << "cycle:";
    for (StateId q : c)
      os << ' ' << q;
    os << " -> " << m.label_of(c) << '\n';
  }
  return os.str();
}

MullerKAcceptor product_acceptor(const MullerKAcceptor &m, const Automaton &other) {
  auto prod = product(m.automaton(), other);
  std::map<Cycle, std::uint32_t> labeling;
  for (const auto &c : all_cycles(prod.automaton)) {
    std::set<StateId> first;
    for (StateId q : c)
      first.insert(prod.pairs[q].first);
    labeling.emplace(c, m.label_of(Cycle(first.begin(), first.end())));
  }
  return MullerKAcceptor(std::move(prod.automaton), m.k(), std::move(labeling));
}

std::string_view to_string(WadgeRelation r) {
  switch (r) {
  case WadgeRelation::lt:
    return "LT";
  case WadgeRelation::gt:
    return "GT";
  case WadgeRelation::eq:
    return "EQ";
  case WadgeRelation::incomparable:
    return "INCOMPARABLE";
  }
  return "?";
}

bool leq0(const Cycle &c, const Cycle &d, const ReachabilityRelation &reach) {
  // Cycles are strongly connected, so any representative pair decides.
  return reach.contains(c.front(), d.front());
}

bool leq1(const Cycle &c, const Cycle &d) {
  return std::includes(c.begin(), c.end(), d.begin(), d.end());
}

namespace {

// Pairs (i, j) with cycles[i] ⊋ cycles[j]; only the covers when n <= 64.
std::vector<OrderPair> inclusion_relation(const std::vector<Cycle> &cycles, std::size_t n) {
  std::vector<OrderPair> rel;
  if (n > 64) {
    for (std::size_t i = 0; i < cycles.size(); ++i)
      for (std::size_t j = 0; j < cycles.size(); ++j)
        if (i != j && leq1(cycles[i], cycles[j]))
          rel.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    return rel;
  }
  std::vector<std::uint64_t> mask(cycles.size(), 0);
  for (std::size_t i = 0; i < cycles.size(); ++i)
    for (StateId q : cycles[i])
      mask[i] |= std::uint64_t{1} << q;
  std::vector<std::size_t> by_size(cycles.size());
  std::iota(by_size.begin(), by_size.end(), std::size_t{0});
  std::stable_sort(by_size.begin(), by_size.end(),
                   [&](std::size_t a, std::size_t b) { return cycles[a].size() > cycles[b].size(); });
  std::vector<std::uint64_t> covers;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    covers.clear();
    for (std::size_t j : by_size) {
      if (mask[j] == mask[i] || (mask[j] & ~mask[i]) != 0)
        continue;
      bool below_cover = std::any_of(covers.begin(), covers.end(),
                                     [&](std::uint64_t c) { return (mask[j] & ~c) == 0; });
      if (below_cover)
        continue;
      covers.push_back(mask[j]);
      rel.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
    }
  }
  return rel;
}

} // namespace

Invariant build_invariant(const MullerKAcceptor &m) {
  const auto scc = tarjan_scc(m.automaton());
  const std::size_t n = m.automaton().num_states();
  const std::size_t num_components = scc.components.size();

  std::vector<std::vector<Cycle>> by_component(num_components);
  for (const auto &c : m.cycles())
    by_component[static_cast<std::size_t>(scc.component_of[c.front()])].push_back(c);

  Invariant inv{singleton(Label::base(0)), {}, {}};
  std::vector<std::size_t> outer_component;
  std::vector<Label> outer_labels;
  for (std::size_t comp = 0; comp < num_components; ++comp) {
    // Components without an internal edge host no cycle.
    if (!scc.nontrivial[comp])
      continue;
    auto &cycles = by_component[comp];
    std::vector<Label> labels;
    for (const auto &c : cycles)
      labels.push_back(Label::base(m.label_of(c)));
    PointedPoset nested(LabeledPoset(std::move(labels), inclusion_relation(cycles, n)));
    if (cycles[nested.root()] != scc.components[comp])
      throw InvariantError("least element of a nested label is not its component");
    outer_labels.push_back(Label::nested(std::move(nested)));
    outer_component.push_back(comp);
    inv.components.push_back(scc.components[comp]);
    inv.members.push_back(std::move(cycles));
  }

  std::vector<OrderPair> outer_rel;
  for (std::size_t i = 0; i < outer_component.size(); ++i)
    for (std::size_t j = 0; j < outer_component.size(); ++j)
      if (i != j && scc.below(outer_component[i], outer_component[j]))
        outer_rel.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(j));
  inv.poset = LabeledPoset(std::move(outer_labels), outer_rel);
  return inv;
}

bool decide_wadge_leq(const MullerKAcceptor &m1, const MullerKAcceptor &m2) {
  return preceq(build_invariant(m1).poset, build_invariant(m2).poset);
}

WadgeRelation classify(const MullerKAcceptor &m1, const MullerKAcceptor &m2) {
  const auto p1 = build_invariant(m1).poset;
  const auto p2 = build_invariant(m2).poset;
  const bool forward = preceq(p1, p2);
  const bool backward = preceq(p2, p1);
  if (forward && backward)
    return WadgeRelation::eq;
  if (forward)
    return WadgeRelation::lt;
  if (backward)
    return WadgeRelation::gt;
  return WadgeRelation::incomparable;
}

} // namespace wadgekit
