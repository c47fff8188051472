#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace wadgekit {

using NodeId = std::uint32_t;

class PointedPoset;

/// Node label: a base value i of the antichain {0..k-1}, or a nested pointed
/// poset. A base value i is identified with the singleton poset labeled i
/// when compared against a nested label.
class Label {
public:
  static Label base(std::uint32_t value) { return Label(value); }
  static Label nested(std::shared_ptr<const PointedPoset> poset);
  static Label nested(PointedPoset poset);

  bool is_base() const noexcept { return std::holds_alternative<std::uint32_t>(v_); }
  std::uint32_t base_value() const { return std::get<std::uint32_t>(v_); }
  const PointedPoset &nested() const { return *std::get<Ptr>(v_); }
  const std::shared_ptr<const PointedPoset> &nested_ptr() const { return std::get<Ptr>(v_); }

  /// 0 for base labels, 1 + deepest label inside for nested ones.
  std::size_t depth() const;
  /// Description size; zero for base labels.
  std::size_t size() const;

  /// Structural equality.
  friend bool operator==(const Label &a, const Label &b);

private:
  using Ptr = std::shared_ptr<const PointedPoset>;
  explicit Label(std::uint32_t v) : v_(v) {}
  explicit Label(Ptr p) : v_(std::move(p)) {}

  std::variant<std::uint32_t, Ptr> v_;
};

/// A pair (below, above) of an order relation.
using OrderPair = std::pair<NodeId, NodeId>;

/// Transitive reduction of the transitive closure of `relation` over nodes
/// 0..n-1, i.e. the cover edges, sorted. Pairs (v, v) are ignored.
/// Throws InvariantError("order relation has a cycle") or on a dangling id.
std::vector<OrderPair> normalize(std::size_t n, const std::vector<OrderPair> &relation);

/// Finite nonempty poset with labels, stored as cover-edge adjacency lists.
class LabeledPoset {
public:
  /// `relation` may be any acyclic relation; it is normalized to covers.
  LabeledPoset(std::vector<Label> labels, const std::vector<OrderPair> &relation);

  std::size_t size() const noexcept { return labels_.size(); }
  const Label &label(NodeId v) const { return labels_.at(v); }
  const std::vector<Label> &labels() const noexcept { return labels_; }

  /// Covers of v (its successors), ascending.
  const std::vector<NodeId> &successors(NodeId v) const { return succ_.at(v); }
  const std::vector<NodeId> &predecessors(NodeId v) const { return pred_.at(v); }

  /// All cover edges, sorted.
  std::vector<OrderPair> cover_edges() const;
  std::size_t cover_edge_count() const noexcept { return edge_count_; }

  /// A topological order: every node precedes its successors.
  const std::vector<NodeId> &topological_order() const noexcept { return topo_; }

  std::vector<NodeId> minimal_nodes() const;
  std::optional<NodeId> least_node() const;
  bool is_forest() const;

  /// Nodes + cover edges + recursive size of nested labels.
  std::size_t description_size() const;

  friend bool operator==(const LabeledPoset &a, const LabeledPoset &b) {
    return a.labels_ == b.labels_ && a.succ_ == b.succ_;
  }

private:
  std::vector<Label> labels_;
  std::vector<std::vector<NodeId>> succ_;
  std::vector<std::vector<NodeId>> pred_;
  std::vector<NodeId> topo_;
  std::size_t edge_count_ = 0;
};

/// A labeled poset with a least element (its root).
class PointedPoset {
public:
  /// Throws InvariantError when there is no least element.
  explicit PointedPoset(LabeledPoset poset);

  const LabeledPoset &poset() const noexcept { return poset_; }
  NodeId root() const noexcept { return root_; }

  friend bool operator==(const PointedPoset &a, const PointedPoset &b) {
    return a.poset_ == b.poset_;
  }

private:
  LabeledPoset poset_;
  NodeId root_;
};

/// A labeled poset in which every lower cone is a chain.
class Forest {
public:
  /// Throws InvariantError when some node has two predecessors.
  explicit Forest(LabeledPoset poset);

  const LabeledPoset &poset() const noexcept { return poset_; }
  operator const LabeledPoset &() const noexcept { return poset_; }

private:
  LabeledPoset poset_;
};

LabeledPoset singleton(Label label);

/// Side-by-side union; nodes of `b` are renumbered after those of `a`.
LabeledPoset disjoint_union(const LabeledPoset &a, const LabeledPoset &b);

/// Parses `(poset (node ID label)* (edge ID ID)*)`; nested labels are
/// `(pointed ...)` blocks with a unique minimum. File ids may be any distinct
/// nonnegative integers; they are renumbered densely in ascending order.
LabeledPoset parse_poset(std::string_view text);

/// Canonical text form accepted by parse_poset.
std::string serialize_poset(const LabeledPoset &p);

inline constexpr std::size_t kDefaultUnfoldLimit = 1'000'000;

/// Number of nodes of unfold(p), saturated at `cap`.
std::uint64_t unfold_size(const LabeledPoset &p, std::uint64_t cap);

/// Bottom-up unfolding: the forest of cover paths v1..vt starting at a
/// minimal node, ordered by prefix, each path labeled by its endpoint.
/// Nested labels are copied, not unfolded. Nodes are numbered in depth-first
/// preorder. Throws SizeLimitError when the result would exceed `limit`.
Forest unfold(const LabeledPoset &p, std::size_t limit = kDefaultUnfoldLimit);

/// Work counters of one preceq call.
struct PreceqStats {
  /// Entries of the M tables filled, over all nesting levels.
  std::size_t table_cells = 0;
  /// Nested label pairs actually evaluated (memo misses).
  std::size_t label_evaluations = 0;
  /// Nested label comparisons answered from the memo.
  std::size_t memo_hits = 0;
};

/// Decides p1 ≼ p2, i.e. u(p1) ≤_h u(p2), in time proportional to the
/// product of the description sizes.
bool preceq(const LabeledPoset &p1, const LabeledPoset &p2, PreceqStats *stats = nullptr);

/// Base vs base: equality. Otherwise base values are lifted to singletons
/// and the posets compared with preceq.
bool label_leq(const Label &l1, const Label &l2);

inline constexpr std::size_t kBruteforceMaxNodes = 64;

/// Decides p1 ≤_h p2 by exhaustive search for a monotone, label-respecting
/// map. Nested labels are compared with the same exhaustive machinery on
/// their unfoldings, so no part of the answer goes through preceq.
/// Throws SizeLimitError above kBruteforceMaxNodes nodes on either side.
bool h_leq_bruteforce(const LabeledPoset &p1, const LabeledPoset &p2);

} // namespace wadgekit
