#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/error.hpp"

namespace cga {

using StateId = std::uint32_t;

/// Finite automaton over words; nondeterministic unless built by determinize().
class WordAutomaton {
 public:
  struct Edge {
    Letter letter;
    StateId to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  WordAutomaton() = default;
  explicit WordAutomaton(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name = {}) {
    auto id = static_cast<StateId>(names_.size());
    if (name.empty()) name = "s" + std::to_string(id);
    names_.push_back(std::move(name));
    out_.emplace_back();
    final_.push_back(false);
    return id;
  }

  void add_transition(StateId from, Letter letter, StateId to) {
    if (letter >= alphabet_.size()) throw Error(ErrorKind::symbol_not_in_alphabet, "letter index out of range");
    auto& edges = out_.at(from);
    Edge e{letter, to};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) edges.insert(it, e);
  }
  void add_transition(StateId from, const Symbol& symbol, StateId to) {
    add_transition(from, alphabet_.letter(symbol), to);
  }

  void set_initial(StateId s) { initial_ = s; }
  void set_final(StateId s, bool f = true) { final_.at(s) = f; }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return names_.size(); }
  const std::string& name(StateId s) const { return names_.at(s); }
  StateId initial() const { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }
  const std::vector<Edge>& edges(StateId s) const { return out_.at(s); }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& e : out_) n += e.size();
    return n;
  }

  /// At most one successor per (state, letter).
  bool deterministic() const {
    for (const auto& edges : out_)
      for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i].letter == edges[i - 1].letter) return false;
    return true;
  }

  std::optional<StateId> state_named(const std::string& n) const {
    for (StateId s = 0; s < names_.size(); ++s)
      if (names_[s] == n) return s;
    return std::nullopt;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<std::vector<Edge>> out_;
  StateId initial_ = 0;
  std::vector<bool> final_;
};

namespace detail {

inline void require_states(const WordAutomaton& a, const char* what) {
  if (a.state_count() == 0) throw Error(ErrorKind::invalid_argument, std::string(what) + ": automaton has no states");
}

inline std::vector<StateId> step(const WordAutomaton& a, const std::vector<StateId>& from, Letter l) {
  std::vector<StateId> next;
  for (StateId s : from)
    for (const auto& e : a.edges(s))
      if (e.letter == l) next.push_back(e.to);
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

}  // namespace detail

inline bool accepts_letters(const WordAutomaton& a, const Letters& w) {
  if (a.state_count() == 0) return false;
  std::vector<StateId> cur{a.initial()};
  for (Letter l : w) {
    cur = detail::step(a, cur, l);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](StateId s) { return a.is_final(s); });
}

/// True iff some run of the automaton on w ends in a final state.
inline bool nfa_accepts(const WordAutomaton& a, const Word& w) { return accepts_letters(a, a.alphabet().encode(w)); }

inline void require_same_alphabet(const Alphabet& a, const Alphabet& b, const char* op) {
  if (!(a == b)) throw Error(ErrorKind::alphabet_mismatch, std::string(op) + " needs identical alphabets");
}

/// Product automaton over reachable state pairs.
inline WordAutomaton intersect(const WordAutomaton& a, const WordAutomaton& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "intersect");
  WordAutomaton out(a.alphabet());
  if (a.state_count() == 0 || b.state_count() == 0) {
    out.set_initial(out.add_state());
    return out;
  }
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> todo;
  auto get = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.try_emplace({p, q}, 0);
    if (fresh) {
      it->second = out.add_state(a.name(p) + "&" + b.name(q));
      out.set_final(it->second, a.is_final(p) && b.is_final(q));
      todo.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(get(a.initial(), b.initial()));
  while (!todo.empty()) {
    auto [p, q] = todo.front();
    todo.pop_front();
    StateId from = ids.at({p, q});
    for (const auto& ea : a.edges(p))
      for (const auto& eb : b.edges(q))
        if (ea.letter == eb.letter) out.add_transition(from, ea.letter, get(ea.to, eb.to));
  }
  return out;
}

/// Disjoint union under a fresh initial state.
inline WordAutomaton unite(const WordAutomaton& a, const WordAutomaton& b) {
  require_same_alphabet(a.alphabet(), b.alphabet(), "union");
  WordAutomaton out(a.alphabet());
  StateId init = out.add_state("init");
  out.set_initial(init);
  auto copy = [&](const WordAutomaton& src, const std::string& tag) {
    if (src.state_count() == 0) return;
    StateId base = static_cast<StateId>(out.state_count());
    for (StateId s = 0; s < src.state_count(); ++s) {
      out.add_state(tag + src.name(s));
      out.set_final(base + s, src.is_final(s));
    }
    for (StateId s = 0; s < src.state_count(); ++s)
      for (const auto& e : src.edges(s)) out.add_transition(base + s, e.letter, base + e.to);
    for (const auto& e : src.edges(src.initial())) out.add_transition(init, e.letter, base + e.to);
    if (src.is_final(src.initial())) out.set_final(init);
  };
  copy(a, "L.");
  copy(b, "R.");
  return out;
}

/// Subset construction; the result is complete (the empty subset is a sink).
inline WordAutomaton determinize(const WordAutomaton& a) {
  WordAutomaton out(a.alphabet());
  std::map<std::vector<StateId>, StateId> ids;
  std::deque<std::vector<StateId>> todo;
  auto get = [&](std::vector<StateId> set) {
    auto [it, fresh] = ids.try_emplace(set, 0);
    if (fresh) {
      std::string name = "{";
      for (std::size_t i = 0; i < set.size(); ++i) name += (i ? "," : "") + a.name(set[i]);
      name += "}";
      it->second = out.add_state(name);
      out.set_final(it->second, std::any_of(set.begin(), set.end(), [&](StateId s) { return a.is_final(s); }));
      todo.push_back(std::move(set));
    }
    return it->second;
  };
  std::vector<StateId> start;
  if (a.state_count() > 0) start.push_back(a.initial());
  out.set_initial(get(start));
  while (!todo.empty()) {
    auto set = std::move(todo.front());
    todo.pop_front();
    StateId from = ids.at(set);
    for (Letter l = 0; l < a.alphabet().size(); ++l) out.add_transition(from, l, get(detail::step(a, set, l)));
  }
  return out;
}

/// Complement relative to Σ* over the automaton's own alphabet.
inline WordAutomaton complement(const WordAutomaton& a) {
  WordAutomaton d = determinize(a);
  for (StateId s = 0; s < d.state_count(); ++s) d.set_final(s, !d.is_final(s));
  return d;
}

inline std::vector<bool> reachable_states(const WordAutomaton& a) {
  std::vector<bool> seen(a.state_count(), false);
  if (a.state_count() == 0) return seen;
  std::vector<StateId> stack{a.initial()};
  seen[a.initial()] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (const auto& e : a.edges(s))
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
  }
  return seen;
}

inline std::vector<bool> coreachable_states(const WordAutomaton& a) {
  std::vector<bool> live(a.state_count(), false);
  for (StateId s = 0; s < a.state_count(); ++s) live[s] = a.is_final(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < a.state_count(); ++s) {
      if (live[s]) continue;
      for (const auto& e : a.edges(s))
        if (live[e.to]) {
          live[s] = changed = true;
          break;
        }
    }
  }
  return live;
}

/// Emptiness by reachability of a final state.
inline bool is_empty(const WordAutomaton& a) {
  auto reach = reachable_states(a);
  for (StateId s = 0; s < a.state_count(); ++s)
    if (reach[s] && a.is_final(s)) return false;
  return true;
}

/// Letters used on some transition between reachable, co-reachable states.
inline std::vector<Letter> live_letters(const WordAutomaton& a) {
  auto reach = reachable_states(a);
  auto co = coreachable_states(a);
  std::set<Letter> used;
  for (StateId s = 0; s < a.state_count(); ++s) {
    if (!reach[s]) continue;
    for (const auto& e : a.edges(s))
      if (co[e.to]) used.insert(e.letter);
  }
  return {used.begin(), used.end()};
}

/// Re-expresses the automaton over another alphabet, renaming each letter
/// through `rename` (identity when absent). Letters whose image is missing
/// from the target alphabet are dropped with their transitions.
inline WordAutomaton relabel(const WordAutomaton& a, const Alphabet& target,
                             const std::map<Symbol, Symbol>& rename = {}) {
  WordAutomaton out(target);
  for (StateId s = 0; s < a.state_count(); ++s) {
    out.add_state(a.name(s));
    out.set_final(s, a.is_final(s));
  }
  if (a.state_count() == 0) {
    out.set_initial(out.add_state());
    return out;
  }
  out.set_initial(a.initial());
  std::vector<std::optional<Letter>> map(a.alphabet().size());
  for (Letter l = 0; l < a.alphabet().size(); ++l) {
    const Symbol& s = a.alphabet().at(l);
    auto it = rename.find(s);
    map[l] = target.index(it == rename.end() ? s : it->second);
  }
  for (StateId s = 0; s < a.state_count(); ++s)
    for (const auto& e : a.edges(s))
      if (map[e.letter]) out.add_transition(s, *map[e.letter], e.to);
  return out;
}

/// Lifts an automaton to a superset alphabet, keeping its language.
inline WordAutomaton lift(const WordAutomaton& a, const Alphabet& superset) {
  if (!a.alphabet().is_subset_of(superset))
    throw Error(ErrorKind::alphabet_mismatch, "cannot lift automaton to an alphabet missing some of its symbols");
  return relabel(a, superset);
}

/// All accepted words of length n, sorted.
inline std::vector<Letters> words_of_length(const WordAutomaton& a, std::size_t n, const Limits& limits = {}) {
  std::vector<Letters> out;
  if (a.state_count() == 0) return out;
  // exact[k][s]: s reaches a final state in exactly k steps
  std::vector<std::vector<char>> exact(n + 1, std::vector<char>(a.state_count(), 0));
  for (StateId s = 0; s < a.state_count(); ++s) exact[0][s] = a.is_final(s);
  for (std::size_t k = 1; k <= n; ++k)
    for (StateId s = 0; s < a.state_count(); ++s)
      for (const auto& e : a.edges(s))
        if (exact[k - 1][e.to]) {
          exact[k][s] = 1;
          break;
        }
  Letters cur;
  std::function<void(const std::vector<StateId>&)> rec = [&](const std::vector<StateId>& set) {
    std::size_t remaining = n - cur.size();
    if (remaining == 0) {
      out.push_back(cur);
      check_cap(out.size(), limits, "enumerating automaton words");
      return;
    }
    std::map<Letter, std::vector<StateId>> next;
    for (StateId s : set)
      for (const auto& e : a.edges(s))
        if (exact[remaining - 1][e.to]) next[e.letter].push_back(e.to);
    for (auto& [l, targets] : next) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      cur.push_back(l);
      rec(targets);
      cur.pop_back();
    }
  };
  if (exact[n][a.initial()]) rec({a.initial()});
  return out;
}

/// Automaton for Σ*.
inline WordAutomaton universal_automaton(const Alphabet& sigma) {
  WordAutomaton a(sigma);
  StateId s = a.add_state("all");
  a.set_initial(s);
  a.set_final(s);
  for (Letter l = 0; l < sigma.size(); ++l) a.add_transition(s, l, s);
  return a;
}

inline WordAutomaton empty_automaton(const Alphabet& sigma) {
  WordAutomaton a(sigma);
  a.set_initial(a.add_state("none"));
  return a;
}

/// (letters)* for a subset of the alphabet.
inline WordAutomaton star_automaton(const Alphabet& sigma, const std::vector<Symbol>& letters) {
  WordAutomaton a(sigma);
  StateId s = a.add_state("loop");
  a.set_initial(s);
  a.set_final(s);
  for (const auto& l : letters) a.add_transition(s, l, s);
  return a;
}

/// Trie automaton for a finite language.
inline WordAutomaton finite_language(const Alphabet& sigma, const std::vector<Word>& words) {
  WordAutomaton a(sigma);
  StateId root = a.add_state("t");
  a.set_initial(root);
  std::map<std::pair<StateId, Letter>, StateId> child;
  for (const auto& w : words) {
    StateId cur = root;
    for (const auto& sym : w) {
      Letter l = sigma.letter(sym);
      auto it = child.find({cur, l});
      if (it == child.end()) {
        StateId next = a.add_state(a.name(cur) + "." + sym);
        a.add_transition(cur, l, next);
        it = child.emplace(std::make_pair(cur, l), next).first;
      }
      cur = it->second;
    }
    a.set_final(cur);
  }
  return a;
}

}  // namespace cga
