#pragma once

#include "wadgekit/automaton.hpp"
#include "wadgekit/cycles.hpp"
#include "wadgekit/poset.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wadgekit {

/// An automaton together with a total labeling A: C_M -> {0..k-1}. It
/// recognizes the k-partition that sends an omega-word to the label of its
/// infinity set.
class MullerKAcceptor {
public:
  /// Throws LabelingError unless the labeling domain is exactly C_M and all
  /// labels are below k.
  MullerKAcceptor(Automaton automaton, std::uint32_t k,
                  std::map<Cycle, std::uint32_t> labeling);

  /// Builds an acceptor from a parsed file with either labeling format.
  /// Subset-table entries that are not cycles are appended to `dropped`.
  static MullerKAcceptor from_file(const AutomatonFile &file, bool strict_subsets = false,
                                   std::vector<StateSet> *dropped = nullptr);

  const Automaton &automaton() const noexcept { return automaton_; }
  std::uint32_t k() const noexcept { return k_; }
  const std::map<Cycle, std::uint32_t> &labeling() const noexcept { return labeling_; }
  /// C_M in canonical order.
  const CycleSet &cycles() const noexcept { return cycles_; }

  /// Throws LabelingError when `c` is not a cycle.
  std::uint32_t label_of(const Cycle &c) const;

private:
  Automaton automaton_;
  std::uint32_t k_;
  std::map<Cycle, std::uint32_t> labeling_;
  CycleSet cycles_;
};

/// Automaton text followed by `k:` and one `cycle:` line per cycle.
std::string serialize_acceptor(const MullerKAcceptor &m);

/// Acceptor on product(m.automaton(), other) labeling each product cycle by
/// the label of its first projection. Recognizes the same k-partition as m.
MullerKAcceptor product_acceptor(const MullerKAcceptor &m, const Automaton &other);

/// The iterated poset (C_M / ≡0, ≤0, d) with classes represented by their
/// strongly connected component.
struct Invariant {
  /// Outer poset; each label is the pointed poset of the component's cycles
  /// ordered by reverse inclusion.
  LabeledPoset poset;
  /// State set of the component behind each outer node.
  std::vector<StateSet> components;
  /// Cycles of each outer node, indexed like the nested poset's nodes.
  std::vector<std::vector<Cycle>> members;
};

enum class WadgeRelation { lt, gt, eq, incomparable };

std::string_view to_string(WadgeRelation r);

/// Some state of d is reachable from some state of c.
bool leq0(const Cycle &c, const Cycle &d, const ReachabilityRelation &reach);

/// c ⊇ d.
bool leq1(const Cycle &c, const Cycle &d);

Invariant build_invariant(const MullerKAcceptor &m);

/// Whether L(m1) ≤_W L(m2): compares the two invariants with preceq.
bool decide_wadge_leq(const MullerKAcceptor &m1, const MullerKAcceptor &m2);

WadgeRelation classify(const MullerKAcceptor &m1, const MullerKAcceptor &m2);

} // namespace wadgekit
