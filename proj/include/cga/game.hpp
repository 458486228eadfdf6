#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/automaton.hpp"
#include "cga/error.hpp"

namespace cga {

enum class Decision : std::uint8_t { zero = 0, one = 1 };

inline int value(Decision d) { return static_cast<int>(d); }
inline Decision flip(Decision d) { return d == Decision::zero ? Decision::one : Decision::zero; }
inline Decision decision_from_int(int v) {
  if (v != 0 && v != 1) throw Error(ErrorKind::invalid_argument, "decision must be 0 or 1");
  return v ? Decision::one : Decision::zero;
}

/// Subset of {0, 1}.
class DecisionSet {
 public:
  constexpr DecisionSet() = default;
  static constexpr DecisionSet none() { return DecisionSet{}; }
  static constexpr DecisionSet only(Decision d) { return DecisionSet(d == Decision::zero ? 1 : 2); }
  static constexpr DecisionSet both() { return DecisionSet(3); }

  constexpr bool contains(Decision d) const { return bits_ & (d == Decision::zero ? 1 : 2); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr DecisionSet operator&(DecisionSet o) const { return DecisionSet(bits_ & o.bits_); }
  constexpr DecisionSet operator|(DecisionSet o) const { return DecisionSet(bits_ | o.bits_); }
  friend constexpr bool operator==(DecisionSet, DecisionSet) = default;

  std::string to_string() const {
    if (bits_ == 3) return "0,1";
    if (bits_ == 1) return "0";
    if (bits_ == 2) return "1";
    return "{}";
  }

 private:
  constexpr explicit DecisionSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

struct GameState {
  std::string name;
  Letter obs1 = 0;
  Letter obs2 = 0;
  std::optional<DecisionSet> admissible;
};

/// Finite arena of a consensus game acceptor. States carry one observation
/// per player; final states (no outgoing edge, other than the initial state)
/// carry the admissible decisions.
class GameGraph {
 public:
  GameGraph() = default;
  explicit GameGraph(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
    if (!alphabet_.contains(kBorder))
      throw Error(ErrorKind::invalid_game, "game alphabet must contain the reserved symbol " + kBorder);
  }

  StateId add_state(const std::string& name, const Symbol& obs1, const Symbol& obs2) {
    if (!valid_symbol_name(name)) throw Error(ErrorKind::invalid_game, "bad state name '" + name + "'");
    if (ids_.count(name)) throw Error(ErrorKind::invalid_game, "duplicate state '" + name + "'");
    auto id = static_cast<StateId>(states_.size());
    states_.push_back(GameState{name, alphabet_.letter(obs1), alphabet_.letter(obs2), std::nullopt});
    succ_.emplace_back();
    ids_.emplace(name, id);
    return id;
  }
  StateId add_state(const std::string& name, const Symbol& obs) { return add_state(name, obs, obs); }

  void add_edge(StateId from, StateId to) {
    auto& s = succ_.at(from);
    if (to >= states_.size()) throw Error(ErrorKind::invalid_game, "edge to unknown state");
    auto it = std::lower_bound(s.begin(), s.end(), to);
    if (it == s.end() || *it != to) s.insert(it, to);
  }
  void add_edge(const std::string& from, const std::string& to) { add_edge(id(from), id(to)); }

  void set_admissible(StateId s, DecisionSet d) { states_.at(s).admissible = d; }
  void set_admissible(const std::string& s, DecisionSet d) { set_admissible(id(s), d); }
  void set_initial(StateId s) { initial_ = s; }
  void set_initial(const std::string& s) { initial_ = id(s); }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return states_.size(); }
  const GameState& state(StateId s) const { return states_.at(s); }
  const std::vector<StateId>& successors(StateId s) const { return succ_.at(s); }
  StateId initial() const { return initial_; }

  bool is_final(StateId s) const { return s != initial_ && succ_.at(s).empty(); }

  StateId id(const std::string& name) const {
    auto it = ids_.find(name);
    if (it == ids_.end()) throw Error(ErrorKind::invalid_game, "unknown state '" + name + "'");
    return it->second;
  }
  bool has_state(const std::string& name) const { return ids_.count(name) != 0; }

  const Symbol& obs(StateId s, int player) const {
    return alphabet_.at(player == 1 ? states_.at(s).obs1 : states_.at(s).obs2);
  }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& s : succ_) n += s.size();
    return n;
  }

 private:
  Alphabet alphabet_;
  std::vector<GameState> states_;
  std::vector<std::vector<StateId>> succ_;
  std::unordered_map<std::string, StateId> ids_;
  StateId initial_ = 0;
};

/// Full state sequence v0 v1 ... v_{n+1}; observation length n.
struct Play {
  std::vector<StateId> states;
  std::size_t length() const { return states.size() < 2 ? 0 : states.size() - 2; }
  friend auto operator<=>(const Play&, const Play&) = default;
};

struct Violation {
  std::string code;
  std::string detail;
  friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::vector<Violation> validate_game(const GameGraph& g) {
  std::vector<Violation> out;
  if (g.state_count() == 0) {
    out.push_back({"no-states", "game has no states"});
    return out;
  }
  const StateId v0 = g.initial();
  const Letter border = g.alphabet().letter(kBorder);
  for (StateId s = 0; s < g.state_count(); ++s)
    for (StateId t : g.successors(s))
      if (t == v0) out.push_back({"initial-has-incoming", g.state(s).name + " -> " + g.state(t).name});
  if (g.state(v0).obs1 != border || g.state(v0).obs2 != border)
    out.push_back({"initial-observation", g.state(v0).name + " must be observed as " + kBorder});
  if (g.state(v0).admissible)
    out.push_back({"admissible-on-nonfinal", g.state(v0).name});

  std::vector<bool> reach(g.state_count(), false), co(g.state_count(), false);
  std::vector<StateId> stack{v0};
  reach[v0] = true;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : g.successors(s))
      if (!reach[t]) {
        reach[t] = true;
        stack.push_back(t);
      }
  }
  for (StateId s = 0; s < g.state_count(); ++s) co[s] = g.is_final(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < g.state_count(); ++s) {
      if (co[s]) continue;
      for (StateId t : g.successors(s))
        if (co[t]) {
          co[s] = changed = true;
          break;
        }
    }
  }

  for (StateId s = 0; s < g.state_count(); ++s) {
    const auto& st = g.state(s);
    if (s == v0) continue;
    if (g.is_final(s)) {
      if (!st.admissible)
        out.push_back({"missing-admissible-set", st.name});
      else if (st.admissible->empty())
        out.push_back({"empty-admissible-set", st.name});
      if (st.obs1 != border || st.obs2 != border)
        out.push_back({"final-observation", st.name + " must be observed as " + kBorder});
      if (!reach[s]) out.push_back({"dead-state", st.name + " is unreachable"});
    } else {
      if (st.admissible) out.push_back({"admissible-on-nonfinal", st.name});
      if (!reach[s] || !co[s]) out.push_back({"dead-state", st.name + " lies on no play"});
    }
  }
  return out;
}

inline void require_valid(const GameGraph& g) {
  auto v = validate_game(g);
  if (!v.empty()) throw Error(ErrorKind::invalid_game, v.front().code + ": " + v.front().detail);
}

inline void check_play(const GameGraph& g, const Play& p) {
  const auto& s = p.states;
  if (s.size() < 2 || s.front() != g.initial() || !g.is_final(s.back()))
    throw Error(ErrorKind::invalid_play, "play must run from the initial state to a final state");
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const auto& succ = g.successors(s[i]);
    if (!std::binary_search(succ.begin(), succ.end(), s[i + 1]))
      throw Error(ErrorKind::invalid_play, "no edge " + g.state(s[i]).name + " -> " + g.state(s[i + 1]).name);
    if (i > 0 && g.is_final(s[i])) throw Error(ErrorKind::invalid_play, "interior state is final");
  }
}

/// Interior observations of player i (1 or 2).
inline Word observation(const GameGraph& g, const Play& p, int player) {
  check_play(g, p);
  Word w;
  for (std::size_t i = 1; i + 1 < p.states.size(); ++i) w.push_back(g.obs(p.states[i], player));
  return w;
}

namespace detail {
inline Letters observation_letters(const GameGraph& g, const Play& p, int player) {
  Letters w;
  for (std::size_t i = 1; i + 1 < p.states.size(); ++i)
    w.push_back(player == 1 ? g.state(p.states[i]).obs1 : g.state(p.states[i]).obs2);
  return w;
}
}  // namespace detail

inline DecisionSet admissible(const GameGraph& g, const Play& p) {
  return g.state(p.states.back()).admissible.value_or(DecisionSet::none());
}

/// All plays with exactly n interior states, in lexicographic order of states.
inline std::vector<Play> enumerate_plays(const GameGraph& g, std::size_t n, const Limits& limits = {}) {
  std::vector<Play> out;
  if (g.state_count() == 0) return out;
  // exact[k][s]: from non-final s, a final is reached after exactly k more interior states
  std::vector<std::vector<char>> exact(n + 1, std::vector<char>(g.state_count(), 0));
  for (StateId s = 0; s < g.state_count(); ++s)
    for (StateId t : g.successors(s))
      if (g.is_final(t)) exact[0][s] = 1;
  for (std::size_t k = 1; k <= n; ++k)
    for (StateId s = 0; s < g.state_count(); ++s)
      for (StateId t : g.successors(s))
        if (!g.is_final(t) && exact[k - 1][t]) {
          exact[k][s] = 1;
          break;
        }
  std::vector<StateId> path{g.initial()};
  std::function<void()> rec = [&] {
    std::size_t interior = path.size() - 1;
    StateId cur = path.back();
    if (interior == n) {
      for (StateId t : g.successors(cur))
        if (g.is_final(t)) {
          Play p{path};
          p.states.push_back(t);
          out.push_back(std::move(p));
          check_cap(out.size(), limits, "enumerating plays");
        }
      return;
    }
    for (StateId t : g.successors(cur)) {
      if (g.is_final(t) || !exact[n - interior - 1][t]) continue;
      path.push_back(t);
      rec();
      path.pop_back();
    }
  };
  if (exact[n][g.initial()]) rec();
  return out;
}

inline bool indistinguishable(const GameGraph& g, const Play& a, const Play& b, int player) {
  return observation(g, a, player) == observation(g, b, player);
}

/// Union-find over plays of one observation length, merged on equal β¹ or β².
struct PlayClasses {
  std::vector<Play> plays;
  std::vector<std::size_t> class_of;            // per play
  std::vector<std::vector<std::size_t>> classes;  // play indices, ascending
};

inline PlayClasses classify_plays(const GameGraph& g, std::size_t n, const Limits& limits = {}) {
  PlayClasses pc;
  pc.plays = enumerate_plays(g, n, limits);
  std::vector<std::size_t> parent(pc.plays.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int player = 1; player <= 2; ++player) {
    std::unordered_map<Letters, std::size_t> first;
    for (std::size_t i = 0; i < pc.plays.size(); ++i) {
      auto [it, fresh] = first.try_emplace(detail::observation_letters(g, pc.plays[i], player), i);
      if (!fresh) parent[find(i)] = find(it->second);
    }
  }
  std::map<std::size_t, std::size_t> index;
  pc.class_of.resize(pc.plays.size());
  for (std::size_t i = 0; i < pc.plays.size(); ++i) {
    auto [it, fresh] = index.try_emplace(find(i), pc.classes.size());
    if (fresh) pc.classes.emplace_back();
    pc.classes[it->second].push_back(i);
    pc.class_of[i] = it->second;
  }
  return pc;
}

/// Equivalence classes of connectedness among plays of observation length n.
inline std::vector<std::vector<Play>> connected_classes(const GameGraph& g, std::size_t n, const Limits& limits = {}) {
  auto pc = classify_plays(g, n, limits);
  std::vector<std::vector<Play>> out;
  for (const auto& cls : pc.classes) {
    auto& c = out.emplace_back();
    for (std::size_t i : cls) c.push_back(pc.plays[i]);
  }
  return out;
}

struct SafetyReport {
  Play play;
  DecisionSet safe;
  /// For each excluded decision: alternating chain of plays from `play` to
  /// a connected play where that decision is inadmissible.
  std::array<std::optional<std::vector<Play>>, 2> excluded_by;
};

inline SafetyReport safe_decisions(const GameGraph& g, const Play& p, const Limits& limits = {}) {
  check_play(g, p);
  auto pc = classify_plays(g, p.length(), limits);
  auto self = std::find(pc.plays.begin(), pc.plays.end(), p);
  std::size_t start = static_cast<std::size_t>(self - pc.plays.begin());
  const auto& cls = pc.classes[pc.class_of[start]];

  SafetyReport rep{p, DecisionSet::both(), {}};
  for (std::size_t i : cls) rep.safe = rep.safe & admissible(g, pc.plays[i]);

  // BFS inside the class for witness chains
  std::unordered_map<Letters, std::vector<std::size_t>> by_obs[2];
  for (std::size_t i : cls)
    for (int pl = 0; pl < 2; ++pl) by_obs[pl][detail::observation_letters(g, pc.plays[i], pl + 1)].push_back(i);
  std::map<std::size_t, std::size_t> parent{{start, start}};
  std::deque<std::size_t> queue{start};
  std::vector<std::size_t> order;
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    for (int pl = 0; pl < 2; ++pl)
      for (std::size_t nb : by_obs[pl][detail::observation_letters(g, pc.plays[cur], pl + 1)])
        if (parent.try_emplace(nb, cur).second) queue.push_back(nb);
  }
  for (Decision d : {Decision::zero, Decision::one}) {
    if (rep.safe.contains(d)) continue;
    for (std::size_t i : order) {
      if (admissible(g, pc.plays[i]).contains(d)) continue;
      std::vector<Play> chain;
      for (std::size_t k = i;; k = parent[k]) {
        chain.push_back(pc.plays[k]);
        if (k == start) break;
      }
      std::reverse(chain.begin(), chain.end());
      rep.excluded_by[value(d)] = std::move(chain);
      break;
    }
  }
  return rep;
}

/// Drops states that lie on no play from the initial state to a final one.
inline GameGraph prune_game(const GameGraph& g) {
  const std::size_t n = g.state_count();
  std::vector<char> reach(n, 0), co(n, 0);
  std::vector<StateId> stack{g.initial()};
  reach[g.initial()] = 1;
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId t : g.successors(s))
      if (!reach[t]) {
        reach[t] = 1;
        stack.push_back(t);
      }
  }
  for (StateId s = 0; s < n; ++s) co[s] = g.is_final(s);
  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      if (co[s]) continue;
      for (StateId t : g.successors(s))
        if (co[t]) {
          co[s] = changed = true;
          break;
        }
    }
  }
  GameGraph out(g.alphabet());
  std::vector<StateId> map(n, 0);
  for (StateId s = 0; s < n; ++s) {
    if (s != g.initial() && !(reach[s] && co[s])) continue;
    const auto& st = g.state(s);
    map[s] = out.add_state(st.name, g.obs(s, 1), g.obs(s, 2));
    if (st.admissible) out.set_admissible(map[s], *st.admissible);
  }
  out.set_initial(map[g.initial()]);
  for (StateId s = 0; s < n; ++s) {
    if (s != g.initial() && !(reach[s] && co[s])) continue;
    for (StateId t : g.successors(s))
      if (reach[t] && co[t]) out.add_edge(map[s], map[t]);
  }
  return out;
}

/// Disjoint union with the two initial states identified. States of the
/// second game are renamed on collision; observation symbols are shared.
inline GameGraph union_games(const GameGraph& a, const GameGraph& b) {
  GameGraph out(unite(a.alphabet(), b.alphabet()));
  for (StateId s = 0; s < a.state_count(); ++s) {
    const auto& st = a.state(s);
    out.add_state(st.name, a.obs(s, 1), a.obs(s, 2));
    if (st.admissible) out.set_admissible(s, *st.admissible);
  }
  out.set_initial(a.initial());
  for (StateId s = 0; s < a.state_count(); ++s)
    for (StateId t : a.successors(s)) out.add_edge(s, t);

  std::vector<StateId> map(b.state_count());
  for (StateId s = 0; s < b.state_count(); ++s) {
    if (s == b.initial()) {
      map[s] = a.initial();
      continue;
    }
    const auto& st = b.state(s);
    std::string name = st.name;
    while (out.has_state(name) || (b.has_state(name) && b.id(name) != s)) name += "'";
    map[s] = out.add_state(name, b.obs(s, 1), b.obs(s, 2));
    if (st.admissible) out.set_admissible(map[s], *st.admissible);
  }
  for (StateId s = 0; s < b.state_count(); ++s)
    for (StateId t : b.successors(s)) out.add_edge(map[s], map[t]);
  return out;
}

/// Swaps {0} and {1} on every final state.
inline GameGraph invert_game(const GameGraph& g) {
  GameGraph out(g.alphabet());
  for (StateId s = 0; s < g.state_count(); ++s) {
    const auto& st = g.state(s);
    out.add_state(st.name, g.obs(s, 1), g.obs(s, 2));
    if (st.admissible) {
      DecisionSet d = *st.admissible;
      if (d == DecisionSet::only(Decision::zero))
        d = DecisionSet::only(Decision::one);
      else if (d == DecisionSet::only(Decision::one))
        d = DecisionSet::only(Decision::zero);
      out.set_admissible(s, d);
    }
  }
  out.set_initial(g.initial());
  for (StateId s = 0; s < g.state_count(); ++s)
    for (StateId t : g.successors(s)) out.add_edge(s, t);
  return out;
}

/// Union of a cover of L with the inverted cover of its complement. The two
/// observation alphabets may only share Σ and the border symbol.
inline GameGraph characterizer(const GameGraph& cover, const GameGraph& complement_cover, const Alphabet& sigma) {
  const Alphabet shared = intersect(cover.alphabet(), complement_cover.alphabet());
  for (const auto& s : shared.symbols()) {
    if (s != kBorder && !sigma.contains(s))
      throw Error(ErrorKind::alphabet_overlap, "observation '" + s + "' shared outside the terminal alphabet");
  }
  return union_games(cover, invert_game(complement_cover));
}

/// Clique over Σ observed alike by both players, every play ending where only
/// decision 0 is admissible.
inline GameGraph empty_language_game(const Alphabet& sigma) {
  if (sigma.empty()) throw Error(ErrorKind::invalid_argument, "empty_language_game needs a non-empty alphabet");
  if (sigma.contains(kBorder)) throw Error(ErrorKind::invalid_argument, "terminal alphabet contains the border symbol");
  GameGraph g(with_symbol(sigma, kBorder));
  StateId v0 = g.add_state("e0", kBorder);
  g.set_initial(v0);
  StateId fin = g.add_state("e_reject", kBorder);
  g.set_admissible(fin, DecisionSet::only(Decision::zero));
  std::vector<StateId> letters;
  for (const auto& s : sigma.symbols()) letters.push_back(g.add_state("e:" + s, s));
  for (StateId x : letters) {
    g.add_edge(v0, x);
    g.add_edge(x, fin);
    for (StateId y : letters) g.add_edge(x, y);
  }
  return g;
}

/// Observation-based strategy of player 1, truncated at maxlen.
struct StrategyTable {
  std::size_t maxlen = 0;
  std::map<Word, Decision> entries;

  std::optional<Decision> lookup(const Word& w) const {
    auto it = entries.find(w);
    if (it == entries.end()) return std::nullopt;
    return it->second;
  }
  friend bool operator==(const StrategyTable&, const StrategyTable&) = default;
};

struct StrategyCounterexample {
  Play play;
  std::optional<Play> partner;  // set when the failure is a consensus clash
  std::string reason;
};

struct VerifyResult {
  bool ok = true;
  std::optional<StrategyCounterexample> counterexample;
  explicit operator bool() const { return ok; }
};

/// Checks that the table, read as player 1's strategy, wins every play of
/// observation length <= n: its decision is admissible at the play, and
/// plays that player 2 cannot tell apart receive the same decision (player 2
/// then answers with that decision).
inline VerifyResult verify_strategy(const GameGraph& g, const StrategyTable& s, std::size_t n,
                                    const Limits& limits = {}) {
  for (std::size_t len = 0; len <= n; ++len) {
    auto plays = enumerate_plays(g, len, limits);
    std::map<Letters, std::pair<Decision, std::size_t>> by_obs2;
    for (std::size_t i = 0; i < plays.size(); ++i) {
      const auto& p = plays[i];
      Word w1 = observation(g, p, 1);
      auto d = s.lookup(w1);
      if (!d) throw Error(ErrorKind::partial_strategy, "no decision for observation '" + format_word(w1) + "'");
      if (!admissible(g, p).contains(*d))
        return {false, StrategyCounterexample{p, std::nullopt, "decision " + std::to_string(value(*d)) +
                                                                   " is not admissible"}};
      auto [it, fresh] = by_obs2.try_emplace(detail::observation_letters(g, p, 2), *d, i);
      if (!fresh && it->second.first != *d)
        return {false, StrategyCounterexample{p, plays[it->second.second],
                                              "player 2 cannot distinguish plays with different decisions"}};
    }
  }
  return {true, std::nullopt};
}

/// Warns about words of Σ^n (1 <= n <= maxlen) that no play yields to a player.
inline std::vector<std::string> lint_observation_coverage(const GameGraph& g, const Alphabet& sigma, std::size_t maxlen,
                                                          const Limits& limits = {}) {
  std::vector<std::string> warnings;
  for (std::size_t n = 1; n <= maxlen; ++n) {
    std::set<Word> seen[2];
    for (const auto& p : enumerate_plays(g, n, limits))
      for (int pl = 0; pl < 2; ++pl) seen[pl].insert(observation(g, p, pl + 1));
    for (const auto& w : all_words(sigma.size(), n, limits)) {
      Word word = sigma.decode(w);
      for (int pl = 0; pl < 2; ++pl)
        if (!seen[pl].count(word))
          warnings.push_back("player " + std::to_string(pl + 1) + " never observes " + format_word(word));
    }
  }
  return warnings;
}

}  // namespace cga
