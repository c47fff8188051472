#include "wadgekit/cycles.hpp"

#include "wadgekit/error.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <set>
#include <unordered_set>

namespace wadgekit {

namespace {

/// Fixed-width state bit set, ordered lexicographically by words.
class Bits {
public:
  explicit Bits(std::size_t n) : words_((n + 63) / 64, 0) {}

  void set(StateId q) { words_[q / 64] |= std::uint64_t{1} << (q % 64); }
  bool test(StateId q) const { return (words_[q / 64] >> (q % 64)) & 1U; }

  bool intersects(const Bits &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i])
        return true;
    return false;
  }
  bool contains(const Bits &o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((o.words_[i] & ~words_[i]) != 0)
        return false;
    return true;
  }
  Bits operator|(const Bits &o) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i)
      r.words_[i] |= o.words_[i];
    return r;
  }
  StateSet to_set() const {
    StateSet out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      while (x) {
        out.push_back(static_cast<StateId>(w * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 0;
    for (auto w : words_)
      h = (h ^ w) * 0x100000001B3ULL;
    return static_cast<std::size_t>(h);
  }

  friend auto operator<=>(const Bits &, const Bits &) = default;

private:
  std::vector<std::uint64_t> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits &b) const { return b.hash(); }
};

/// Johnson (1975): circuits through the least vertex s of the strongly
/// connected piece of the subgraph induced on vertices >= s.
class JohnsonEnumerator {
public:
  JohnsonEnumerator(std::vector<StateSet> adj, std::vector<std::uint8_t> alive)
      : adj_(std::move(adj)), alive_(std::move(alive)), n_(adj_.size()),
        blocked_(n_, 0), block_map_(n_), in_piece_(n_, 0) {}

  std::vector<ElementaryCycle> run() {
    for (StateId s = 0; s < n_; ++s) {
      if (!alive_[s])
        continue;
      restrict_to_piece(s);
      for (StateId v = s; v < n_; ++v) {
        blocked_[v] = 0;
        block_map_[v].clear();
      }
      start_ = s;
      circuit(s);
    }
    return std::move(out_);
  }

private:
  bool usable(StateId v) const { return v >= start_ && in_piece_[v]; }

  // Marks the vertices >= s that lie on a common strongly connected piece
  // with s, using only alive vertices >= s.
  void restrict_to_piece(StateId s) {
    std::vector<std::uint8_t> fwd(n_, 0), bwd(n_, 0);
    std::vector<StateId> work{s};
    fwd[s] = 1;
    while (!work.empty()) {
      StateId v = work.back();
      work.pop_back();
      for (StateId w : adj_[v])
        if (w >= s && alive_[w] && !fwd[w]) {
          fwd[w] = 1;
          work.push_back(w);
        }
    }
    std::vector<StateSet> radj(n_);
    for (StateId v = s; v < n_; ++v)
      if (alive_[v])
        for (StateId w : adj_[v])
          if (w >= s && alive_[w])
            radj[w].push_back(v);
    work.push_back(s);
    bwd[s] = 1;
    while (!work.empty()) {
      StateId v = work.back();
      work.pop_back();
      for (StateId w : radj[v])
        if (!bwd[w]) {
          bwd[w] = 1;
          work.push_back(w);
        }
    }
    for (StateId v = 0; v < n_; ++v)
      in_piece_[v] = fwd[v] && bwd[v];
  }

  void unblock(StateId u) {
    blocked_[u] = 0;
    auto pending = std::move(block_map_[u]);
    block_map_[u].clear();
    for (StateId w : pending)
      if (blocked_[w])
        unblock(w);
  }

  bool circuit(StateId v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = 1;
    for (StateId w : adj_[v]) {
      if (!usable(w))
        continue;
      if (w == start_) {
        out_.push_back(path_);
        found = true;
      } else if (!blocked_[w]) {
        if (circuit(w))
          found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (StateId w : adj_[v]) {
        if (!usable(w))
          continue;
        auto &bm = block_map_[w];
        if (std::find(bm.begin(), bm.end(), v) == bm.end())
          bm.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  std::vector<StateSet> adj_;
  std::vector<std::uint8_t> alive_;
  std::size_t n_;
  std::vector<std::uint8_t> blocked_;
  std::vector<StateSet> block_map_;
  std::vector<std::uint8_t> in_piece_;
  StateId start_ = 0;
  std::vector<StateId> path_;
  std::vector<ElementaryCycle> out_;
};

Bits to_bits(const std::vector<StateId> &states, std::size_t n) {
  Bits b(n);
  for (StateId q : states)
    b.set(q);
  return b;
}

} // namespace

std::vector<ElementaryCycle> elementary_cycles(const Automaton &a) {
  const std::size_t n = a.num_states();
  std::vector<std::uint8_t> alive(n, 0);
  for (StateId q : reachable_states(a))
    alive[q] = 1;
  std::vector<StateSet> adj(n);
  for (StateId q = 0; q < n; ++q)
    if (alive[q])
      adj[q] = a.successors(q);
  return JohnsonEnumerator(std::move(adj), std::move(alive)).run();
}

IntersectionGraph intersection_graph(std::vector<ElementaryCycle> cycles) {
  IntersectionGraph g;
  g.vertices = std::move(cycles);
  const std::size_t m = g.vertices.size();
  std::vector<StateSet> sorted(m);
  for (std::size_t i = 0; i < m; ++i) {
    sorted[i] = g.vertices[i];
    std::sort(sorted[i].begin(), sorted[i].end());
  }
  g.adjacency.assign(m, {});
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      std::vector<StateId> common;
      std::set_intersection(sorted[i].begin(), sorted[i].end(), sorted[j].begin(),
                            sorted[j].end(), std::back_inserter(common));
      if (!common.empty()) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  return g;
}

namespace {

bool meets(std::uint64_t a, std::uint64_t b) { return (a & b) != 0; }
bool covers(std::uint64_t a, std::uint64_t b) { return (b & ~a) == 0; }
std::uint64_t join(std::uint64_t a, std::uint64_t b) { return a | b; }
bool meets(const Bits &a, const Bits &b) { return a.intersects(b); }
bool covers(const Bits &a, const Bits &b) { return a.contains(b); }
Bits join(const Bits &a, const Bits &b) { return a | b; }

StateSet to_set(std::uint64_t bits) {
  StateSet out;
  for (; bits; bits &= bits - 1)
    out.push_back(static_cast<StateId>(std::countr_zero(bits)));
  return out;
}
StateSet to_set(const Bits &bits) { return bits.to_set(); }

// Closure of the elementary cycles under union of overlapping members.
template <class Mask, class Hash>
CycleSet merge_closure(const std::vector<Mask> &elementary) {
  std::unordered_set<Mask, Hash> seen;
  std::vector<Mask> found;
  for (const auto &e : elementary)
    if (seen.insert(e).second)
      found.push_back(e);
  const std::vector<Mask> distinct = found;
  for (std::size_t i = 0; i < found.size(); ++i) {
    const Mask current = found[i];
    for (const auto &e : distinct) {
      if (!meets(current, e) || covers(current, e))
        continue;
      Mask merged = join(current, e);
      if (seen.insert(merged).second)
        found.push_back(std::move(merged));
    }
  }
  CycleSet out;
  out.reserve(found.size());
  for (const auto &m : found)
    out.push_back(to_set(m));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

CycleSet all_cycles(const Automaton &a) {
  const std::size_t n = a.num_states();
  const auto elementary = elementary_cycles(a);
  if (n <= 64) {
    std::vector<std::uint64_t> masks;
    masks.reserve(elementary.size());
    for (const auto &c : elementary) {
      std::uint64_t m = 0;
      for (StateId q : c)
        m |= std::uint64_t{1} << q;
      masks.push_back(m);
    }
    return merge_closure<std::uint64_t, std::hash<std::uint64_t>>(masks);
  }
  std::vector<Bits> bits;
  bits.reserve(elementary.size());
  for (const auto &c : elementary)
    bits.push_back(to_bits(c, n));
  return merge_closure<Bits, BitsHash>(bits);
}

namespace {

using Mask = std::uint32_t;

Mask closure_within(Mask start, Mask within, const std::vector<Mask> &next) {
  Mask reached = start;
  Mask frontier = start;
  while (frontier) {
    Mask grow = 0;
    for (Mask f = frontier; f; f &= f - 1)
      grow |= next[static_cast<std::size_t>(std::countr_zero(f))];
    grow &= within & ~reached;
    reached |= grow;
    frontier = grow;
  }
  return reached;
}

} // namespace

CycleSet all_cycles_bruteforce(const Automaton &a) {
  const std::size_t n = a.num_states();
  if (n > kBruteforceCycleMaxStates)
    throw SizeLimitError("all_cycles_bruteforce: " + std::to_string(n) +
                         " states exceeds the limit of " +
                         std::to_string(kBruteforceCycleMaxStates));
  std::vector<Mask> fwd(n, 0), bwd(n, 0);
  for (StateId q = 0; q < n; ++q)
    for (LetterId x = 0; x < a.alphabet().size(); ++x) {
      StateId t = a.next(q, x);
      fwd[q] |= Mask{1} << t;
      bwd[t] |= Mask{1} << q;
    }
  Mask reachable = 0;
  for (StateId q : reachable_states(a))
    reachable |= Mask{1} << q;

  CycleSet out;
  // Iterate over the nonempty submasks of the reachable set.
  for (Mask s = reachable; s != 0; s = (s - 1) & reachable) {
    Mask root = s & (~s + 1);
    if (std::popcount(s) == 1) {
      auto q = static_cast<std::size_t>(std::countr_zero(s));
      if (!(fwd[q] & s))
        continue;
    } else if (closure_within(root, s, fwd) != s || closure_within(root, s, bwd) != s) {
      continue;
    }
    StateSet c;
    for (Mask m = s; m; m &= m - 1)
      c.push_back(static_cast<StateId>(std::countr_zero(m)));
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_cycle(const Automaton &a, const StateSet &states) {
  if (states.empty() || !std::is_sorted(states.begin(), states.end()) ||
      std::adjacent_find(states.begin(), states.end()) != states.end() ||
      states.back() >= a.num_states())
    return false;
  auto reach = reachable_states(a);
  if (!std::includes(reach.begin(), reach.end(), states.begin(), states.end()))
    return false;
  if (states.size() == 1)
    return a.has_edge(states[0], states[0]);
  std::vector<std::uint8_t> member(a.num_states(), 0);
  for (StateId q : states)
    member[q] = 1;
  auto covers_all = [&](bool forward) {
    std::vector<std::uint8_t> seen(a.num_states(), 0);
    std::vector<StateId> work{states[0]};
    seen[states[0]] = 1;
    std::size_t count = 1;
    while (!work.empty()) {
      StateId v = work.back();
      work.pop_back();
      for (StateId w : states) {
        if (seen[w])
          continue;
        bool edge = forward ? a.has_edge(v, w) : a.has_edge(w, v);
        if (edge) {
          seen[w] = 1;
          ++count;
          work.push_back(w);
        }
      }
    }
    return count == states.size();
  };
  return covers_all(true) && covers_all(false);
}

double cycle_count_bound(std::size_t n, std::size_t d) {
  const double dd = static_cast<double>(d);
  const double c = 2.0 * std::pow(1.0 - std::pow(2.0, -(dd + 1.0)), 1.0 / (dd + 1.0));
  return std::max(std::pow(2.0, dd), std::pow(c, static_cast<double>(n)) + static_cast<double>(n));
}

std::string to_bitstring(const StateSet &states, std::size_t n) {
  std::string bits(n, '0');
  for (StateId q : states)
    bits.at(q) = '1';
  return bits;
}

SubsetTableResult subset_table_to_cycles(const Automaton &a,
                                         const std::vector<LabelEntry> &table,
                                         bool strict) {
  const std::size_t n = a.num_states();
  auto cycles = all_cycles(a);
  SubsetTableResult out;
  std::set<StateSet> seen;
  for (const auto &e : table) {
    if (!seen.insert(e.states).second)
      throw LabelingError("line " + std::to_string(e.line) + ": duplicate entry for subset " +
                          to_bitstring(e.states, n));
    if (std::binary_search(cycles.begin(), cycles.end(), e.states))
      out.labels.emplace(e.states, e.label);
    else
      out.dropped.push_back(e.states);
  }
  if (strict) {
    if (n >= 63 || seen.size() != (std::uint64_t{1} << n))
      throw LabelingError("strict subset table needs all 2^" + std::to_string(n) +
                          " entries, found " + std::to_string(seen.size()));
  }
  for (const auto &c : cycles)
    if (!out.labels.count(c))
      throw LabelingError("unlabeled cycle " + to_bitstring(c, n));
  return out;
}

} // namespace wadgekit
