#pragma once

// Shared fixtures and brute-force oracles for the test binaries. The oracles
// read raw transitions only and never call the library's enumeration or
// closure code.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cga/cga.hpp"

namespace cga::test {

inline std::string corpus(const std::string& name) { return std::string(CGA_CORPUS_DIR) + "/" + name; }

inline DominoSystem fig2a_domino() { return expect<DominoSystem>(load_document(corpus("fig2a.domino")), "domino"); }
inline GameGraph fig2a_game() { return compile_domino_game(fig2a_domino()); }
inline Seed fig2a_seed() { return extract_seed(fig2a_game()); }
inline Seed flip_seed() { return load_seed(corpus("flip")); }
inline FlowerSpec corpus_flower(const std::string& name) {
  return expect<FlowerSpec>(load_document(corpus(name)), "flower");
}

inline Word w(const Alphabet& a, const std::string& text) { return parse_word(a, text); }

/// Every word of length n over the alphabet, built by counting.
inline std::vector<Word> brute_words(const Alphabet& a, std::size_t n) {
  std::vector<Word> out;
  const std::size_t k = a.size();
  if (k == 0) return n == 0 ? std::vector<Word>{Word{}} : out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k;
  for (std::size_t code = 0; code < total; ++code) {
    Word x(n);
    std::size_t c = code;
    for (std::size_t i = n; i-- > 0;) {
      x[i] = a.symbols()[c % k];
      c /= k;
    }
    out.push_back(std::move(x));
  }
  return out;
}

/// Subset simulation straight from the edge lists.
inline bool sim_accepts(const SynchronousTransducer& r, const Word& u, const Word& v) {
  if (u.size() != v.size() || r.state_count() == 0) return false;
  std::set<StateId> cur{r.initial()};
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto a = r.alphabet().index(u[i]), b = r.alphabet().index(v[i]);
    if (!a || !b) return false;
    std::set<StateId> next;
    for (StateId s : cur)
      for (const auto& e : r.edges(s))
        if (e.in == *a && e.out == *b) next.insert(e.to);
    cur = std::move(next);
  }
  return std::any_of(cur.begin(), cur.end(), [&](StateId s) { return r.is_final(s); });
}

inline bool sim_accepts(const WordAutomaton& m, const Word& u) {
  if (m.state_count() == 0) return false;
  std::set<StateId> cur{m.initial()};
  for (const auto& x : u) {
    auto a = m.alphabet().index(x);
    if (!a) return false;
    std::set<StateId> next;
    for (StateId s : cur)
      for (const auto& e : m.edges(s))
        if (e.letter == *a) next.insert(e.to);
    cur = std::move(next);
  }
  return std::any_of(cur.begin(), cur.end(), [&](StateId s) { return m.is_final(s); });
}

/// Accepted pairs of length n by depth-first search over runs.
inline std::set<std::pair<Word, Word>> brute_pairs(const SynchronousTransducer& r, std::size_t n) {
  std::set<std::pair<Word, Word>> out;
  if (r.state_count() == 0) return out;
  Word u, v;
  auto rec = [&](auto&& self, StateId s) -> void {
    if (u.size() == n) {
      if (r.is_final(s)) out.emplace(u, v);
      return;
    }
    for (const auto& e : r.edges(s)) {
      u.push_back(r.alphabet().symbols()[e.in]);
      v.push_back(r.alphabet().symbols()[e.out]);
      self(self, e.to);
      u.pop_back();
      v.pop_back();
    }
  };
  rec(rec, r.initial());
  return out;
}

/// Accepted words of length n by depth-first search over runs.
inline std::set<Word> brute_language(const WordAutomaton& m, std::size_t n) {
  std::set<Word> out;
  if (m.state_count() == 0) return out;
  Word u;
  auto rec = [&](auto&& self, StateId s) -> void {
    if (u.size() == n) {
      if (m.is_final(s)) out.insert(u);
      return;
    }
    for (const auto& e : m.edges(s)) {
      u.push_back(m.alphabet().symbols()[e.letter]);
      self(self, e.to);
      u.pop_back();
    }
  };
  rec(rec, m.initial());
  return out;
}

/// Components of the graph joining two input words whenever they share an
/// output word, over the words of length n on the input tape.
struct BruteClosure {
  std::map<Word, std::size_t> component;
  std::vector<std::set<Word>> members;
};

inline BruteClosure brute_components(const SynchronousTransducer& r, std::size_t n) {
  std::map<Word, std::vector<Word>> by_out;
  std::set<Word> inputs;
  for (const auto& [u, v] : brute_pairs(r, n)) {
    by_out[v].push_back(u);
    inputs.insert(u);
  }
  std::map<Word, std::set<Word>> adj;
  for (const auto& [v, us] : by_out)
    for (const auto& a : us)
      for (const auto& b : us) adj[a].insert(b);
  BruteClosure bc;
  for (const auto& start : inputs) {
    if (bc.component.count(start)) continue;
    std::size_t id = bc.members.size();
    bc.members.emplace_back();
    std::deque<Word> q{start};
    bc.component[start] = id;
    while (!q.empty()) {
      Word x = q.front();
      q.pop_front();
      bc.members[id].insert(x);
      for (const auto& y : adj[x])
        if (bc.component.emplace(y, id).second) q.push_back(y);
    }
  }
  return bc;
}

/// Words of length n reachable from L(m) by the reflection, plus L(m) itself.
inline std::set<Word> brute_closure(const SynchronousTransducer& r, const WordAutomaton& m, std::size_t n) {
  auto bc = brute_components(r, n);
  std::set<Word> seeds = brute_language(m, n);
  std::set<Word> out = seeds;
  for (const auto& x : seeds) {
    auto it = bc.component.find(x);
    if (it != bc.component.end()) out.insert(bc.members[it->second].begin(), bc.members[it->second].end());
  }
  return out;
}

inline bool is_anbn(const Word& x) {
  std::size_t n = x.size();
  if (n == 0 || n % 2) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] != (i < n / 2 ? "a" : "b")) return false;
  return true;
}

/// Stack-free bracket checker: every kind keeps a running depth.
inline bool excess_ok(const Word& x, const std::map<Symbol, std::pair<int, int>>& role, int kinds) {
  std::vector<int> depth(static_cast<std::size_t>(kinds), 0);
  for (const auto& s : x) {
    auto [k, d] = role.at(s);
    if (d == 0) continue;
    depth[static_cast<std::size_t>(k)] += d;
    if (depth[static_cast<std::size_t>(k)] < 0) return false;
  }
  return std::all_of(depth.begin(), depth.end(), [](int v) { return v == 0; });
}

/// Repeatedly deletes adjacent matching pairs and neutrals; nested discipline.
inline bool reduces_to_empty(Word x, const std::map<Symbol, Symbol>& close_of, const std::set<Symbol>& neutral) {
  x.erase(std::remove_if(x.begin(), x.end(), [&](const Symbol& s) { return neutral.count(s) != 0; }), x.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
      auto it = close_of.find(x[i]);
      if (it != close_of.end() && x[i + 1] == it->second) {
        x.erase(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
    }
  }
  return x.empty();
}

inline Alphabet small_alphabet(std::size_t k) {
  static const std::vector<Symbol> pool{"a", "b", "c", "d"};
  return Alphabet(std::vector<Symbol>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k)));
}

inline SynchronousTransducer random_transducer(std::mt19937& rng, const Alphabet& a, std::size_t states,
                                               double density = 0.3) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  SynchronousTransducer r(a);
  for (std::size_t i = 0; i < states; ++i) r.set_final(r.add_state(), coin(rng) < 0.5);
  r.set_initial(0);
  for (StateId s = 0; s < states; ++s)
    for (Letter x = 0; x < a.size(); ++x)
      for (Letter y = 0; y < a.size(); ++y)
        for (StateId t = 0; t < states; ++t)
          if (coin(rng) < density / static_cast<double>(states)) r.add_transition(s, x, y, t);
  return r;
}

inline WordAutomaton random_automaton(std::mt19937& rng, const Alphabet& a, std::size_t states, double density = 0.5) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  WordAutomaton m(a);
  for (std::size_t i = 0; i < states; ++i) m.set_final(m.add_state(), coin(rng) < 0.4);
  m.set_initial(0);
  for (StateId s = 0; s < states; ++s)
    for (Letter x = 0; x < a.size(); ++x)
      for (StateId t = 0; t < states; ++t)
        if (coin(rng) < density / static_cast<double>(states)) m.add_transition(s, x, t);
  return m;
}

/// Random valid game: v0, up to `interior` observed states, finals with
/// random admissible sets. Retries until the game validates and has plays.
struct RandomGameParams {
  std::size_t max_states = 8;
  std::size_t max_symbols = 4;  // |Γ| including the border symbol
  double edge_prob = 0.35;
};

inline GameGraph random_game(std::mt19937& rng, const RandomGameParams& p = {}) {
  static const std::vector<Symbol> pool{"a", "b", "c"};
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (;;) {
    std::size_t nsym = std::uniform_int_distribution<std::size_t>(2, p.max_symbols)(rng);
    std::vector<Symbol> syms{kBorder};
    syms.insert(syms.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(nsym - 1));
    Alphabet gamma(syms);
    std::size_t total = std::uniform_int_distribution<std::size_t>(4, p.max_states)(rng);
    std::size_t nfinal = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(2, total - 3))(rng);
    std::size_t ninner = total - 1 - nfinal;
    GameGraph g(gamma);
    g.set_initial(g.add_state("v0", kBorder));
    auto pick = [&] { return syms[std::uniform_int_distribution<std::size_t>(1, syms.size() - 1)(rng)]; };
    std::vector<StateId> inner, fin;
    for (std::size_t i = 0; i < ninner; ++i) inner.push_back(g.add_state("s" + std::to_string(i), pick(), pick()));
    static const DecisionSet choices[] = {DecisionSet::only(Decision::zero), DecisionSet::only(Decision::one),
                                          DecisionSet::both()};
    for (std::size_t i = 0; i < nfinal; ++i) {
      StateId f = g.add_state("f" + std::to_string(i), kBorder);
      g.set_admissible(f, choices[std::uniform_int_distribution<int>(0, 2)(rng)]);
      fin.push_back(f);
    }
    for (StateId t : inner)
      if (coin(rng) < 0.6) g.add_edge(g.initial(), t);
    for (StateId s : inner) {
      for (StateId t : inner)
        if (coin(rng) < p.edge_prob) g.add_edge(s, t);
      for (StateId f : fin)
        if (coin(rng) < 0.4) g.add_edge(s, f);
    }
    g = prune_game(g);
    if (!validate_game(g).empty() || g.state_count() < 3) continue;
    return g;
  }
}

/// Random game whose extracted accepting and rejecting languages are disjoint.
inline GameGraph random_disjoint_game(std::mt19937& rng, const RandomGameParams& p = {}) {
  for (;;) {
    GameGraph g = random_game(rng, p);
    Seed s = extract_seed(g);
    if (is_empty(intersect(s.acc, s.rej))) return g;
  }
}

}  // namespace cga::test
