#include "wadgekit/automaton.hpp"

#include "wadgekit/error.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <queue>
#include <sstream>
#include <unordered_set>

namespace wadgekit {

Alphabet::Alphabet(std::vector<std::string> letters)
    : letters_(std::move(letters)) {
  if (letters_.empty())
    throw InvariantError("alphabet must not be empty");
  std::unordered_set<std::string> seen;
  for (const auto &l : letters_) {
    if (l.empty() || std::any_of(l.begin(), l.end(), detail::is_space))
      throw InvariantError("invalid letter name '" + l + "'");
    if (!seen.insert(l).second)
      throw InvariantError("duplicate letter '" + l + "'");
  }
}

std::optional<LetterId> Alphabet::find(std::string_view letter) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == letter)
      return static_cast<LetterId>(i);
  return std::nullopt;
}

Automaton::Automaton(std::size_t num_states, Alphabet alphabet,
                     StateId initial, std::vector<StateId> delta)
    : num_states_(num_states), alphabet_(std::move(alphabet)),
      initial_(initial), delta_(std::move(delta)) {
  if (num_states_ == 0)
    throw InvariantError("automaton needs at least one state");
  if (initial_ >= num_states_)
    throw InvariantError("initial state out of range");
  if (delta_.size() != num_states_ * alphabet_.size())
    throw InvariantError("transition table is not total");
  for (StateId t : delta_)
    if (t >= num_states_)
      throw InvariantError("transition target out of range");
}

StateSet Automaton::successors(StateId q) const {
  StateSet out(delta_.begin() + static_cast<std::ptrdiff_t>(q * alphabet_.size()),
               delta_.begin() + static_cast<std::ptrdiff_t>((q + 1) * alphabet_.size()));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Automaton::has_edge(StateId from, StateId to) const {
  for (LetterId x = 0; x < alphabet_.size(); ++x)
    if (next(from, x) == to)
      return true;
  return false;
}

std::vector<LetterId> parse_letters(const Alphabet &alphabet,
                                    std::string_view text) {
  std::string normalized(text);
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::vector<LetterId> out;
  for (const auto &tok : detail::split_ws(normalized)) {
    auto id = alphabet.find(tok);
    if (!id)
      throw ParseError(0, "letter '" + std::string(tok) + "' not in alphabet");
    out.push_back(*id);
  }
  return out;
}

namespace {

struct PendingTransition {
  std::size_t line;
  StateId from;
  std::string letter;
  StateId to;
};

StateId parse_state(std::string_view tok, std::size_t line) {
  auto v = detail::parse_uint(tok);
  if (!v)
    throw ParseError(line, "expected a state id, got '" + std::string(tok) + "'");
  return static_cast<StateId>(*v);
}

} // namespace

AutomatonFile parse_automaton(std::string_view text) {
  std::optional<std::vector<std::string>> letters;
  std::optional<std::size_t> states;
  std::optional<StateId> initial;
  std::size_t initial_line = 0;
  std::vector<PendingTransition> pending;
  std::optional<std::uint32_t> k;
  std::optional<LabelingSection::Kind> kind;
  std::vector<LabelEntry> entries;
  std::vector<std::size_t> subset_widths;

  std::size_t line_no = 0;
  for (const auto &raw : detail::split_lines(text)) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty())
      continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ParseError(line_no, "malformed line (expected 'key: value')");
    auto key = detail::trim(line.substr(0, colon));
    auto rest = line.substr(colon + 1);
    auto toks = detail::split_ws(rest);

    if (key == "alphabet") {
      if (letters)
        throw ParseError(line_no, "duplicate alphabet line");
      if (toks.empty())
        throw ParseError(line_no, "alphabet must not be empty");
      std::vector<std::string> ls(toks.begin(), toks.end());
      try {
        Alphabet check(ls);
      } catch (const InvariantError &e) {
        throw ParseError(line_no, e.what());
      }
      letters = std::move(ls);
    } else if (key == "states") {
      if (states)
        throw ParseError(line_no, "duplicate states line");
      if (toks.size() != 1)
        throw ParseError(line_no, "malformed states line");
      auto v = detail::parse_uint(toks[0]);
      if (!v || *v == 0)
        throw ParseError(line_no, "state count must be a positive integer");
      states = *v;
    } else if (key == "initial") {
      if (initial)
        throw ParseError(line_no, "duplicate initial line");
      if (toks.size() != 1)
        throw ParseError(line_no, "malformed initial line");
      initial = parse_state(toks[0], line_no);
      initial_line = line_no;
    } else if (key == "trans") {
      if (toks.size() != 3)
        throw ParseError(line_no, "malformed transition (expected 'trans: <from> <letter> <to>')");
      pending.push_back({line_no, parse_state(toks[0], line_no),
                         std::string(toks[1]), parse_state(toks[2], line_no)});
    } else if (key == "k") {
      if (k)
        throw ParseError(line_no, "duplicate k line");
      if (toks.size() != 1)
        throw ParseError(line_no, "malformed k line");
      auto v = detail::parse_uint(toks[0]);
      if (!v || *v == 0)
        throw ParseError(line_no, "k must be a positive integer");
      k = static_cast<std::uint32_t>(*v);
    } else if (key == "cycle" || key == "subset") {
      auto this_kind = key == "cycle" ? LabelingSection::Kind::cycle_list
                                      : LabelingSection::Kind::subset_table;
      if (kind && *kind != this_kind)
        throw ParseError(line_no, "cannot mix 'cycle:' and 'subset:' lines");
      kind = this_kind;
      auto arrow = std::find(toks.begin(), toks.end(), "->");
      if (arrow == toks.end() || arrow + 2 != toks.end())
        throw ParseError(line_no, "malformed labeling line (expected '... -> <label>')");
      auto label = detail::parse_uint(*(arrow + 1));
      if (!label)
        throw ParseError(line_no, "label must be a nonnegative integer");
      LabelEntry e;
      e.label = static_cast<std::uint32_t>(*label);
      e.line = line_no;
      if (this_kind == LabelingSection::Kind::cycle_list) {
        if (arrow == toks.begin())
          throw ParseError(line_no, "cycle must not be empty");
        for (auto it = toks.begin(); it != arrow; ++it) {
          StateId q = parse_state(*it, line_no);
          if (!e.states.empty() && q <= e.states.back())
            throw ParseError(line_no, "cycle state ids must be strictly increasing");
          e.states.push_back(q);
        }
      } else {
        if (arrow - toks.begin() != 1)
          throw ParseError(line_no, "malformed subset line (expected one bit string)");
        std::string_view bits = toks[0];
        for (std::size_t i = 0; i < bits.size(); ++i) {
          if (bits[i] == '1')
            e.states.push_back(static_cast<StateId>(i));
          else if (bits[i] != '0')
            throw ParseError(line_no, "subset must be a string of 0/1");
        }
        // Width is checked once the state count is known.
        subset_widths.push_back(bits.size());
      }
      entries.push_back(std::move(e));
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
  }

  if (!letters)
    throw ParseError(0, "missing 'alphabet:' line");
  if (!states)
    throw ParseError(0, "missing 'states:' line");
  if (!initial)
    throw ParseError(0, "missing 'initial:' line");
  if (*initial >= *states)
    throw ParseError(initial_line, "unknown state id " + std::to_string(*initial));

  Alphabet alphabet(*letters);
  const std::size_t n = *states;
  const std::size_t d = alphabet.size();
  constexpr StateId unset = ~StateId{0};
  std::vector<StateId> delta(n * d, unset);
  for (const auto &t : pending) {
    if (t.from >= n)
      throw ParseError(t.line, "unknown state id " + std::to_string(t.from));
    if (t.to >= n)
      throw ParseError(t.line, "unknown state id " + std::to_string(t.to));
    auto x = alphabet.find(t.letter);
    if (!x)
      throw ParseError(t.line, "unknown letter '" + t.letter + "'");
    auto &slot = delta[t.from * d + *x];
    if (slot != unset)
      throw ParseError(t.line, "duplicate transition for state " +
                                   std::to_string(t.from) + " on '" + t.letter + "'");
    slot = t.to;
  }
  for (std::size_t q = 0; q < n; ++q)
    for (std::size_t x = 0; x < d; ++x)
      if (delta[q * d + x] == unset)
        throw ParseError(0, "missing transition for state " + std::to_string(q) +
                                " on '" + alphabet.name(static_cast<LetterId>(x)) + "'");

  AutomatonFile out{Automaton(n, std::move(alphabet), *initial, std::move(delta)),
                    std::nullopt};

  if (k || kind) {
    if (!k)
      throw ParseError(entries.front().line, "labeling lines require a preceding 'k:' line");
    LabelingSection section;
    section.k = *k;
    section.kind = kind.value_or(LabelingSection::Kind::cycle_list);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto &e = entries[i];
      if (section.kind == LabelingSection::Kind::subset_table) {
        if (subset_widths[i] != n)
          throw ParseError(e.line, "subset bit string must have length " + std::to_string(n));
      } else {
        for (StateId q : e.states)
          if (q >= n)
            throw ParseError(e.line, "unknown state id " + std::to_string(q));
      }
      if (e.label >= *k)
        throw ParseError(e.line, "label " + std::to_string(e.label) + " is not below k = " +
                                     std::to_string(*k));
    }
    section.entries = std::move(entries);
    out.labeling = std::move(section);
  }
  return out;
}

std::string serialize_automaton(const Automaton &a) {
  std::ostringstream os;
  os << "alphabet:";
  for (const auto &l : a.alphabet().letters())
    os << ' ' << l;
  os << "\nstates: " << a.num_states() << "\ninitial: " << a.initial() << '\n';
  for (StateId q = 0; q < a.num_states(); ++q)
    for (LetterId x = 0; x < a.alphabet().size(); ++x)
      os << "trans: " << q << ' ' << a.alphabet().name(x) << ' ' << a.next(q, x) << '\n';
  return os.str();
}

namespace {

std::vector<std::uint8_t> bfs_from(const Automaton &a, StateId start) {
  std::vector<std::uint8_t> seen(a.num_states(), 0);
  std::queue<StateId> work;
  seen[start] = 1;
  work.push(start);
  while (!work.empty()) {
    StateId q = work.front();
    work.pop();
    for (LetterId x = 0; x < a.alphabet().size(); ++x) {
      StateId t = a.next(q, x);
      if (!seen[t]) {
        seen[t] = 1;
        work.push(t);
      }
    }
  }
  return seen;
}

} // namespace

StateSet reachable_states(const Automaton &a) {
  auto seen = bfs_from(a, a.initial());
  StateSet out;
  for (StateId q = 0; q < a.num_states(); ++q)
    if (seen[q])
      out.push_back(q);
  return out;
}

ReachabilityRelation reachability_matrix(const Automaton &a) {
  ReachabilityRelation rel(a.num_states());
  for (StateId p = 0; p < a.num_states(); ++p) {
    auto seen = bfs_from(a, p);
    for (StateId q = 0; q < a.num_states(); ++q)
      if (seen[q])
        rel.insert(p, q);
  }
  return rel;
}

bool SccDecomposition::below(std::size_t from, std::size_t to) const {
  return reach_[from * components.size() + to] != 0;
}

SccDecomposition tarjan_scc(const Automaton &a) {
  const std::size_t n = a.num_states();
  constexpr int unvisited = -1;
  std::vector<int> index(n, unvisited), low(n, 0);
  std::vector<std::uint8_t> on_stack(n, 0);
  std::vector<StateId> stack;
  std::vector<StateSet> raw_components;
  std::vector<StateSet> succ(n);
  for (StateId q = 0; q < n; ++q)
    succ[q] = a.successors(q);

  // Iterative Tarjan from the initial state only; unreachable states stay
  // unvisited.
  struct Frame {
    StateId q;
    std::size_t next_child;
  };
  int counter = 0;
  std::vector<Frame> call;
  auto enter = [&](StateId q) {
    index[q] = low[q] = counter++;
    stack.push_back(q);
    on_stack[q] = 1;
    call.push_back({q, 0});
  };
  enter(a.initial());
  while (!call.empty()) {
    Frame &f = call.back();
    if (f.next_child < succ[f.q].size()) {
      StateId t = succ[f.q][f.next_child++];
      if (index[t] == unvisited)
        enter(t);
      else if (on_stack[t])
        low[f.q] = std::min(low[f.q], index[t]);
      continue;
    }
    StateId q = f.q;
    call.pop_back();
    if (!call.empty())
      low[call.back().q] = std::min(low[call.back().q], low[q]);
    if (low[q] == index[q]) {
      StateSet comp;
      StateId w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp.push_back(w);
      } while (w != q);
      std::sort(comp.begin(), comp.end());
      raw_components.push_back(std::move(comp));
    }
  }

  std::sort(raw_components.begin(), raw_components.end(),
            [](const StateSet &x, const StateSet &y) { return x.front() < y.front(); });

  SccDecomposition out;
  out.components = std::move(raw_components);
  const std::size_t m = out.components.size();
  out.component_of.assign(n, -1);
  for (std::size_t c = 0; c < m; ++c)
    for (StateId q : out.components[c])
      out.component_of[q] = static_cast<int>(c);

  out.condensation.assign(m, {});
  out.nontrivial.assign(m, false);
  for (std::size_t c = 0; c < m; ++c) {
    for (StateId q : out.components[c]) {
      for (StateId t : succ[q]) {
        auto tc = static_cast<std::size_t>(out.component_of[t]);
        if (tc == c)
          out.nontrivial[c] = true;
        else
          out.condensation[c].push_back(tc);
      }
    }
    auto &cs = out.condensation[c];
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
  }

  // Tarjan emits components in reverse topological order; recompute a
  // topological order on the condensation to fill the closure bottom-up.
  out.reach_.assign(m * m, 0);
  std::vector<std::size_t> indeg(m, 0), topo;
  for (std::size_t c = 0; c < m; ++c)
    for (auto t : out.condensation[c])
      ++indeg[t];
  std::queue<std::size_t> ready;
  for (std::size_t c = 0; c < m; ++c)
    if (indeg[c] == 0)
      ready.push(c);
  while (!ready.empty()) {
    auto c = ready.front();
    ready.pop();
    topo.push_back(c);
    for (auto t : out.condensation[c])
      if (--indeg[t] == 0)
        ready.push(t);
  }
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    auto c = *it;
    out.reach_[c * m + c] = 1;
    for (auto t : out.condensation[c])
      for (std::size_t u = 0; u < m; ++u)
        out.reach_[c * m + u] |= out.reach_[t * m + u];
  }
  return out;
}

ProductAutomaton product(const Automaton &a1, const Automaton &a2) {
  if (!(a1.alphabet() == a2.alphabet()))
    throw InvariantError("product requires identical alphabets");
  const std::size_t d = a1.alphabet().size();
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  std::vector<StateId> delta;
  auto intern = [&](std::pair<StateId, StateId> p) {
    auto [it, fresh] = ids.emplace(p, static_cast<StateId>(pairs.size()));
    if (fresh)
      pairs.push_back(p);
    return it->second;
  };
  intern({a1.initial(), a2.initial()});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [p, q] = pairs[i];
    for (LetterId x = 0; x < d; ++x)
      delta.push_back(intern({a1.next(p, x), a2.next(q, x)}));
  }
  Automaton aut(pairs.size(), a1.alphabet(), 0, std::move(delta));
  return {std::move(aut), std::move(pairs)};
}

StateSet run_eval(const Automaton &a, const UltimatelyPeriodicWord &w) {
  if (w.period.empty())
    throw InvariantError("period must be nonempty");
  auto check = [&](LetterId x) {
    if (x >= a.alphabet().size())
      throw InvariantError("letter not in alphabet");
  };
  std::for_each(w.prefix.begin(), w.prefix.end(), check);
  std::for_each(w.period.begin(), w.period.end(), check);

  StateId q = a.initial();
  for (LetterId x : w.prefix)
    q = a.next(q, x);

  // State at each period boundary; the first repeat closes the loop.
  std::vector<int> boundary_index(a.num_states(), -1);
  std::vector<StateId> boundaries;
  while (boundary_index[q] < 0) {
    boundary_index[q] = static_cast<int>(boundaries.size());
    boundaries.push_back(q);
    for (LetterId x : w.period)
      q = a.next(q, x);
  }

  std::vector<std::uint8_t> inf(a.num_states(), 0);
  for (auto i = static_cast<std::size_t>(boundary_index[q]); i < boundaries.size(); ++i) {
    StateId s = boundaries[i];
    for (LetterId x : w.period) {
      s = a.next(s, x);
      inf[s] = 1;
    }
  }
  StateSet out;
  for (StateId s = 0; s < a.num_states(); ++s)
    if (inf[s])
      out.push_back(s);
  return out;
}

} // namespace wadgekit
