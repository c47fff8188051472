#include "wadgekit/poset.hpp"

#include "wadgekit/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>
#include <unordered_map>

namespace wadgekit {

// ---------------------------------------------------------------- labels

Label Label::nested(std::shared_ptr<const PointedPoset> poset) {
  if (!poset)
    throw InvariantError("nested label must not be null");
  return Label(std::move(poset));
}

Label Label::nested(PointedPoset poset) {
  return nested(std::make_shared<const PointedPoset>(std::move(poset)));
}

std::size_t Label::depth() const {
  if (is_base())
    return 0;
  std::size_t deepest = 0;
  for (const auto &l : nested().poset().labels())
    deepest = std::max(deepest, l.depth());
  return deepest + 1;
}

std::size_t Label::size() const {
  return is_base() ? 0 : nested().poset().description_size();
}

bool operator==(const Label &a, const Label &b) {
  if (a.is_base() != b.is_base())
    return false;
  if (a.is_base())
    return a.base_value() == b.base_value();
  return a.nested_ptr() == b.nested_ptr() || a.nested() == b.nested();
}

// ---------------------------------------------------------- normalization

namespace {

class BitRow {
public:
  explicit BitRow(std::size_t n) : w_((n + 63) / 64, 0) {}
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1U; }
  BitRow &operator|=(const BitRow &o) {
    for (std::size_t i = 0; i < w_.size(); ++i)
      w_[i] |= o.w_[i];
    return *this;
  }
  void subtract(const BitRow &o) {
    for (std::size_t i = 0; i < w_.size(); ++i)
      w_[i] &= ~o.w_[i];
  }
  template <class F> void for_each(F &&f) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      for (std::uint64_t x = w_[i]; x; x &= x - 1)
        f(i * 64 + static_cast<std::size_t>(std::countr_zero(x)));
  }

private:
  std::vector<std::uint64_t> w_;
};

// Kahn's algorithm; returns nullopt when the relation has a cycle.
std::optional<std::vector<NodeId>> topological(const std::vector<std::vector<NodeId>> &adj) {
  const std::size_t n = adj.size();
  std::vector<std::size_t> indeg(n, 0);
  for (const auto &out : adj)
    for (NodeId w : out)
      ++indeg[w];
  std::vector<NodeId> order, ready;
  for (std::size_t v = n; v-- > 0;)
    if (indeg[v] == 0)
      ready.push_back(static_cast<NodeId>(v));
  while (!ready.empty()) {
    NodeId v = ready.back();
    ready.pop_back();
    order.push_back(v);
    for (NodeId w : adj[v])
      if (--indeg[w] == 0)
        ready.push_back(w);
  }
  if (order.size() != n)
    return std::nullopt;
  return order;
}

} // namespace

std::vector<OrderPair> normalize(std::size_t n, const std::vector<OrderPair> &relation) {
  std::vector<std::vector<NodeId>> adj(n);
  for (auto [lo, hi] : relation) {
    if (lo >= n || hi >= n)
      throw InvariantError("dangling node id in order relation");
    if (lo != hi)
      adj[lo].push_back(hi);
  }
  for (auto &out : adj) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  auto order = topological(adj);
  if (!order)
    throw InvariantError("order relation has a cycle");

  // up[v] = elements strictly above v. An element above v is a cover unless
  // it is strictly above one of v's direct relation successors.
  std::vector<BitRow> up(n, BitRow(n));
  std::vector<OrderPair> covers;
  for (auto it = order->rbegin(); it != order->rend(); ++it) {
    NodeId v = *it;
    BitRow implied(n);
    for (NodeId w : adj[v]) {
      up[v].set(w);
      up[v] |= up[w];
      implied |= up[w];
    }
    BitRow cover = up[v];
    cover.subtract(implied);
    cover.for_each([&](std::size_t w) { covers.emplace_back(v, static_cast<NodeId>(w)); });
  }
  std::sort(covers.begin(), covers.end());
  return covers;
}

// ---------------------------------------------------------------- posets

LabeledPoset::LabeledPoset(std::vector<Label> labels, const std::vector<OrderPair> &relation)
    : labels_(std::move(labels)) {
  const std::size_t n = labels_.size();
  if (n == 0)
    throw InvariantError("poset must be nonempty");
  succ_.assign(n, {});
  pred_.assign(n, {});
  for (auto [lo, hi] : normalize(n, relation)) {
    succ_[lo].push_back(hi);
    pred_[hi].push_back(lo);
    ++edge_count_;
  }
  for (auto &p : pred_)
    std::sort(p.begin(), p.end());
  topo_ = *topological(succ_);
}

std::vector<OrderPair> LabeledPoset::cover_edges() const {
  std::vector<OrderPair> out;
  out.reserve(edge_count_);
  for (NodeId v = 0; v < size(); ++v)
    for (NodeId w : succ_[v])
      out.emplace_back(v, w);
  return out;
}

std::vector<NodeId> LabeledPoset::minimal_nodes() const {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < size(); ++v)
    if (pred_[v].empty())
      out.push_back(v);
  return out;
}

std::optional<NodeId> LabeledPoset::least_node() const {
  auto mins = minimal_nodes();
  // In a finite poset a unique minimal element is below everything.
  if (mins.size() == 1)
    return mins.front();
  return std::nullopt;
}

bool LabeledPoset::is_forest() const {
  return std::all_of(pred_.begin(), pred_.end(),
                     [](const auto &p) { return p.size() <= 1; });
}

std::size_t LabeledPoset::description_size() const {
  std::size_t total = size() + edge_count_;
  for (const auto &l : labels_)
    total += l.size();
  return total;
}

PointedPoset::PointedPoset(LabeledPoset poset) : poset_(std::move(poset)), root_(0) {
  auto least = poset_.least_node();
  if (!least)
    throw InvariantError("pointed poset has no least element");
  root_ = *least;
}

Forest::Forest(LabeledPoset poset) : poset_(std::move(poset)) {
  if (!poset_.is_forest())
    throw InvariantError("not a forest: some node has two predecessors");
}

LabeledPoset singleton(Label label) {
  return LabeledPoset({std::move(label)}, {});
}

LabeledPoset disjoint_union(const LabeledPoset &a, const LabeledPoset &b) {
  std::vector<Label> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  auto edges = a.cover_edges();
  const auto offset = static_cast<NodeId>(a.size());
  for (auto [lo, hi] : b.cover_edges())
    edges.emplace_back(lo + offset, hi + offset);
  return LabeledPoset(std::move(labels), edges);
}

// ------------------------------------------------------------- text form

namespace {

struct Token {
  std::string text;
  std::size_t line;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (detail::is_space(c)) {
      ++i;
    } else if (c == ';' || c == '#') {
      while (i < s.size() && s[i] != '\n')
        ++i;
    } else if (c == '(' || c == ')') {
      out.push_back({std::string(1, c), line});
      ++i;
    } else {
      std::size_t j = i;
      while (j < s.size() && !detail::is_space(s[j]) && s[j] != '(' && s[j] != ')')
        ++j;
      out.push_back({std::string(s.substr(i, j - i)), line});
      i = j;
    }
  }
  return out;
}

class PosetParser {
public:
  explicit PosetParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  LabeledPoset parse_top() {
    auto p = parse_block("poset");
    if (pos_ != toks_.size())
      throw ParseError(toks_[pos_].line, "trailing input after poset");
    return p;
  }

private:
  const Token &peek() const {
    if (pos_ >= toks_.size())
      throw ParseError(toks_.empty() ? 0 : toks_.back().line, "unexpected end of input");
    return toks_[pos_];
  }
  const Token &take() {
    const Token &t = peek();
    ++pos_;
    return t;
  }
  void expect(std::string_view what) {
    const Token &t = take();
    if (t.text != what)
      throw ParseError(t.line, "expected '" + std::string(what) + "', got '" + t.text + "'");
  }
  std::uint64_t integer() {
    const Token &t = take();
    auto v = detail::parse_uint(t.text);
    if (!v)
      throw ParseError(t.line, "expected a nonnegative integer, got '" + t.text + "'");
    return *v;
  }

  LabeledPoset parse_block(std::string_view head) {
    std::size_t open_line = peek().line;
    expect("(");
    expect(head);
    std::map<std::uint64_t, Label> nodes;
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::size_t>> edges;
    while (peek().text != ")") {
      expect("(");
      const Token &kw = take();
      if (kw.text == "node") {
        std::size_t line = kw.line;
        auto id = integer();
        Label label = peek().text == "(" ? Label::nested(parse_pointed())
                                         : Label::base(static_cast<std::uint32_t>(integer()));
        if (!nodes.emplace(id, std::move(label)).second)
          throw ParseError(line, "duplicate node id " + std::to_string(id));
      } else if (kw.text == "edge") {
        std::size_t line = kw.line;
        auto lo = integer();
        auto hi = integer();
        edges.emplace_back(lo, hi, line);
      } else {
        throw ParseError(kw.line, "expected 'node' or 'edge', got '" + kw.text + "'");
      }
      expect(")");
    }
    expect(")");
    if (nodes.empty())
      throw ParseError(open_line, "poset must have at least one node");

    std::map<std::uint64_t, NodeId> dense;
    std::vector<Label> labels;
    for (auto &[id, label] : nodes) {
      dense.emplace(id, static_cast<NodeId>(labels.size()));
      labels.push_back(std::move(label));
    }
    std::vector<OrderPair> rel;
    for (auto [lo, hi, line] : edges) {
      auto a = dense.find(lo), b = dense.find(hi);
      if (a == dense.end() || b == dense.end())
        throw ParseError(line, "dangling node id " +
                                   std::to_string(a == dense.end() ? lo : hi));
      rel.emplace_back(a->second, b->second);
    }
    try {
      return LabeledPoset(std::move(labels), rel);
    } catch (const InvariantError &e) {
      throw ParseError(open_line, e.what());
    }
  }

  PointedPoset parse_pointed() {
    std::size_t line = peek().line;
    auto p = parse_block("pointed");
    if (!p.least_node())
      throw ParseError(line, "pointed block without unique minimum");
    return PointedPoset(std::move(p));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void write_items(std::ostream &os, const LabeledPoset &p, const std::string &sep);

void write_label(std::ostream &os, const Label &l) {
  if (l.is_base()) {
    os << l.base_value();
    return;
  }
  os << "(pointed";
  write_items(os, l.nested().poset(), " ");
  os << ')';
}

void write_items(std::ostream &os, const LabeledPoset &p, const std::string &sep) {
  for (NodeId v = 0; v < p.size(); ++v) {
    os << sep << "(node " << v << ' ';
    write_label(os, p.label(v));
    os << ')';
  }
  for (auto [lo, hi] : p.cover_edges())
    os << sep << "(edge " << lo << ' ' << hi << ')';
}

} // namespace

LabeledPoset parse_poset(std::string_view text) {
  return PosetParser(tokenize(text)).parse_top();
}

std::string serialize_poset(const LabeledPoset &p) {
  std::ostringstream os;
  os << "(poset";
  write_items(os, p, "\n  ");
  os << ")\n";
  return os.str();
}

// -------------------------------------------------------------- unfolding

std::uint64_t unfold_size(const LabeledPoset &p, std::uint64_t cap) {
  // paths[v] = number of cover paths from a minimal node ending in v.
  std::vector<std::uint64_t> paths(p.size(), 0);
  std::uint64_t total = 0;
  for (NodeId v : p.topological_order()) {
    if (p.predecessors(v).empty())
      paths[v] = 1;
    for (NodeId u : p.predecessors(v))
      paths[v] = std::min(cap, paths[v] + paths[u]);
    total = std::min(cap, total + paths[v]);
  }
  return total;
}

Forest unfold(const LabeledPoset &p, std::size_t limit) {
  auto estimated = unfold_size(p, std::uint64_t{limit} + 1);
  if (estimated > limit)
    throw SizeLimitError("unfolding exceeds the limit of " + std::to_string(limit) + " nodes");

  std::vector<Label> labels;
  std::vector<OrderPair> edges;
  labels.reserve(estimated);
  struct Frame {
    NodeId poset_node;
    NodeId forest_node;
    std::size_t next_child;
  };
  std::vector<Frame> stack;
  auto emit = [&](NodeId v, std::optional<NodeId> parent) {
    auto id = static_cast<NodeId>(labels.size());
    labels.push_back(p.label(v));
    if (parent)
      edges.emplace_back(*parent, id);
    stack.push_back({v, id, 0});
  };
  for (NodeId root : p.minimal_nodes()) {
    emit(root, std::nullopt);
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto &succ = p.successors(f.poset_node);
      if (f.next_child == succ.size()) {
        stack.pop_back();
        continue;
      }
      NodeId child = succ[f.next_child++];
      emit(child, f.forest_node);
    }
  }
  return Forest(LabeledPoset(std::move(labels), edges));
}

// ----------------------------------------------------------------- preceq

namespace {

struct PtrPairHash {
  std::size_t operator()(const std::pair<const void *, const void *> &k) const noexcept {
    auto a = reinterpret_cast<std::uintptr_t>(k.first);
    auto b = reinterpret_cast<std::uintptr_t>(k.second);
    return std::hash<std::uintptr_t>{}(a * 0x9E3779B97F4A7C15ULL ^ (b + 0x632BE59BD9B4E019ULL));
  }
};

/// State shared across one top-level preceq call: the label memo, keyed by
/// the identity of the two nested posets, and the lifted singletons.
class CompareContext {
public:
  explicit CompareContext(PreceqStats *stats) : stats_(stats) {}

  bool label_leq(const Label &l1, const Label &l2) {
    if (l1.is_base() && l2.is_base())
      return l1.base_value() == l2.base_value();
    const PointedPoset *p1 = pointed(l1);
    const PointedPoset *p2 = pointed(l2);
    auto key = std::make_pair(static_cast<const void *>(p1), static_cast<const void *>(p2));
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (stats_)
        ++stats_->memo_hits;
      return it->second;
    }
    if (stats_)
      ++stats_->label_evaluations;
    bool result = preceq(p1->poset(), p2->poset());
    memo_.emplace(key, result);
    return result;
  }

  bool preceq(const LabeledPoset &p1, const LabeledPoset &p2) {
    const std::size_t n1 = p1.size(), n2 = p2.size();
    // m[v1 * n2 + v2]: some morphism from the unfolding of the upper cone of
    // v1 into the unfolding of the upper cone of v2.
    std::vector<std::uint8_t> m(n1 * n2, 0);
    const auto &topo1 = p1.topological_order();
    const auto &topo2 = p2.topological_order();
    for (auto i1 = topo1.rbegin(); i1 != topo1.rend(); ++i1) {
      const NodeId v1 = *i1;
      const std::uint8_t *row = &m[std::size_t{v1} * n2];
      for (auto i2 = topo2.rbegin(); i2 != topo2.rend(); ++i2) {
        const NodeId v2 = *i2;
        bool ok = false;
        for (NodeId u2 : p2.successors(v2))
          if (row[u2]) {
            ok = true;
            break;
          }
        if (!ok) {
          ok = true;
          for (NodeId u1 : p1.successors(v1))
            if (!m[std::size_t{u1} * n2 + v2]) {
              ok = false;
              break;
            }
          ok = ok && label_leq(p1.label(v1), p2.label(v2));
        }
        m[std::size_t{v1} * n2 + v2] = ok ? 1 : 0;
      }
    }
    if (stats_)
      stats_->table_cells += n1 * n2;

    for (NodeId v1 = 0; v1 < n1; ++v1) {
      const std::uint8_t *row = &m[std::size_t{v1} * n2];
      if (std::find(row, row + n2, std::uint8_t{1}) == row + n2)
        return false;
    }
    return true;
  }

private:
  const PointedPoset *pointed(const Label &l) {
    if (!l.is_base())
      return l.nested_ptr().get();
    auto &slot = lifted_[l.base_value()];
    if (!slot)
      slot = std::make_shared<const PointedPoset>(singleton(l));
    return slot.get();
  }

  PreceqStats *stats_;
  std::unordered_map<std::pair<const void *, const void *>, bool, PtrPairHash> memo_;
  std::map<std::uint32_t, std::shared_ptr<const PointedPoset>> lifted_;
};

} // namespace

bool preceq(const LabeledPoset &p1, const LabeledPoset &p2, PreceqStats *stats) {
  CompareContext ctx(stats);
  return ctx.preceq(p1, p2);
}

bool label_leq(const Label &l1, const Label &l2) {
  CompareContext ctx(nullptr);
  return ctx.label_leq(l1, l2);
}

// -------------------------------------------------------- exhaustive oracle

namespace {

using Mask = std::uint64_t;

/// Inclusive up-sets of each node (v <= w), as masks over at most 64 nodes.
std::vector<Mask> up_sets(const LabeledPoset &p) {
  std::vector<Mask> up(p.size(), 0);
  const auto &topo = p.topological_order();
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    NodeId v = *it;
    up[v] = Mask{1} << v;
    for (NodeId w : p.successors(v))
      up[v] |= up[w];
  }
  return up;
}

bool oracle_label_leq(const Label &l1, const Label &l2) {
  if (l1.is_base() && l2.is_base())
    return l1.base_value() == l2.base_value();
  auto as_poset = [](const Label &l) {
    return l.is_base() ? singleton(l) : l.nested().poset();
  };
  return h_leq_bruteforce(unfold(as_poset(l1)), unfold(as_poset(l2)));
}

/// Search for a map f: P1 -> P2 with x <= y implies f(x) <= f(y) and
/// compatible labels. Binary constraints over the comparable pairs of P1,
/// maintained arc consistent, with backtracking on the smallest domain.
class MorphismSearch {
public:
  MorphismSearch(const LabeledPoset &p1, const LabeledPoset &p2)
      : n1_(p1.size()), n2_(p2.size()), tgt_up_(up_sets(p2)), tgt_down_(n2_, 0) {
    for (NodeId a = 0; a < n2_; ++a)
      for (NodeId b = 0; b < n2_; ++b)
        if ((tgt_up_[a] >> b) & 1U)
          tgt_down_[b] |= Mask{1} << a;
    auto src_up = up_sets(p1);
    for (NodeId x = 0; x < n1_; ++x)
      for (NodeId y = 0; y < n1_; ++y)
        if (x != y && ((src_up[x] >> y) & 1U))
          constraints_.emplace_back(x, y);
    initial_.assign(n1_, 0);
    for (NodeId x = 0; x < n1_; ++x)
      for (NodeId a = 0; a < n2_; ++a)
        if (oracle_label_leq(p1.label(x), p2.label(a)))
          initial_[x] |= Mask{1} << a;
  }

  bool solve() { return search(initial_); }

private:
  bool propagate(std::vector<Mask> &dom) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto [x, y] : constraints_) {
        Mask keep_x = 0;
        for (Mask s = dom[x]; s; s &= s - 1) {
          auto a = std::countr_zero(s);
          if (tgt_up_[static_cast<std::size_t>(a)] & dom[y])
            keep_x |= Mask{1} << a;
        }
        Mask keep_y = 0;
        for (Mask s = dom[y]; s; s &= s - 1) {
          auto b = std::countr_zero(s);
          if (tgt_down_[static_cast<std::size_t>(b)] & keep_x)
            keep_y |= Mask{1} << b;
        }
        if (keep_x != dom[x] || keep_y != dom[y]) {
          dom[x] = keep_x;
          dom[y] = keep_y;
          changed = true;
        }
        if (!keep_x || !keep_y)
          return false;
      }
    }
    return true;
  }

  bool search(std::vector<Mask> dom) const {
    if (std::any_of(dom.begin(), dom.end(), [](Mask d) { return d == 0; }))
      return false;
    if (!propagate(dom))
      return false;
    std::size_t pick = n1_;
    int best = 65;
    for (std::size_t x = 0; x < n1_; ++x) {
      int c = std::popcount(dom[x]);
      if (c > 1 && c < best) {
        best = c;
        pick = x;
      }
    }
    // All domains are singletons and every constraint is arc consistent.
    if (pick == n1_)
      return true;
    for (Mask s = dom[pick]; s; s &= s - 1) {
      auto next = dom;
      next[pick] = s & (~s + 1);
      if (search(std::move(next)))
        return true;
    }
    return false;
  }

  std::size_t n1_, n2_;
  std::vector<Mask> tgt_up_, tgt_down_;
  std::vector<OrderPair> constraints_;
  std::vector<Mask> initial_;
};

} // namespace

bool h_leq_bruteforce(const LabeledPoset &p1, const LabeledPoset &p2) {
  if (p1.size() > kBruteforceMaxNodes || p2.size() > kBruteforceMaxNodes)
    throw SizeLimitError("h_leq_bruteforce: posets are limited to " +
                         std::to_string(kBruteforceMaxNodes) + " nodes");
  return MorphismSearch(p1, p2).solve();
}

} // namespace wadgekit
