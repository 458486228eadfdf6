#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "cga/automaton.hpp"
#include "cga/game.hpp"
#include "cga/transducer.hpp"

namespace cga {

/// Relation of observation pairs plus the player-1 words forcing 1 and 0.
struct Seed {
  SynchronousTransducer relation;
  WordAutomaton acc;
  WordAutomaton rej;

  const Alphabet& alphabet() const { return relation.alphabet(); }
};

/// Brings the three components onto the union of their alphabets.
inline Seed make_seed(const SynchronousTransducer& r, const WordAutomaton& acc, const WordAutomaton& rej) {
  Alphabet all = unite(unite(r.alphabet(), acc.alphabet()), rej.alphabet());
  return Seed{lift(r, all), lift(acc, all), lift(rej, all)};
}

/// Proof construction: observations move onto incoming transitions.
inline Seed extract_seed(const GameGraph& g) {
  require_valid(g);
  const Alphabet& gamma = g.alphabet();
  Seed seed{SynchronousTransducer(gamma), WordAutomaton(gamma), WordAutomaton(gamma)};
  std::vector<StateId> map(g.state_count(), 0);
  for (StateId s = 0; s < g.state_count(); ++s) {
    if (g.is_final(s)) continue;
    const auto& name = g.state(s).name;
    map[s] = seed.relation.add_state(name);
    seed.acc.add_state(name);
    seed.rej.add_state(name);
  }
  seed.relation.set_initial(map[g.initial()]);
  seed.acc.set_initial(map[g.initial()]);
  seed.rej.set_initial(map[g.initial()]);
  for (StateId s = 0; s < g.state_count(); ++s) {
    if (g.is_final(s)) continue;
    for (StateId t : g.successors(s)) {
      if (g.is_final(t)) {
        seed.relation.set_final(map[s]);
        DecisionSet d = *g.state(t).admissible;
        if (d == DecisionSet::only(Decision::one)) seed.acc.set_final(map[s]);
        if (d == DecisionSet::only(Decision::zero)) seed.rej.set_final(map[s]);
        continue;
      }
      const auto& st = g.state(t);
      seed.relation.add_transition(map[s], st.obs1, st.obs2, map[t]);
      seed.acc.add_transition(map[s], st.obs1, map[t]);
      seed.rej.add_transition(map[s], st.obs1, map[t]);
    }
  }
  return seed;
}

/// Diagnostics that do not invalidate a seed.
inline std::vector<std::string> seed_warnings(const Seed& s) {
  std::vector<std::string> w;
  if (is_empty(project(s.relation, true))) w.push_back("relation is empty: the game has no plays");
  if (is_empty(s.acc)) w.push_back("accepting language is empty");
  if (is_empty(s.rej)) w.push_back("rejecting language is empty");
  return w;
}

inline void require_disjoint(const WordAutomaton& acc, const WordAutomaton& rej) {
  if (!is_empty(intersect(acc, rej)))
    throw Error(ErrorKind::nondisjoint_seed_languages, "accepting and rejecting languages intersect");
}

/// Game whose interior states carry one transducer transition together with
/// the states of complete DFAs for both languages after reading its input
/// letter. Exits lead to v_acc ({1}), v_rej ({0}) or v_eq ({0,1}).
inline GameGraph synthesize_game(const Seed& seed) {
  const auto& r = seed.relation;
  require_same_alphabet(r.alphabet(), seed.acc.alphabet(), "synthesize");
  require_same_alphabet(r.alphabet(), seed.rej.alphabet(), "synthesize");
  require_disjoint(seed.acc, seed.rej);
  const WordAutomaton da = determinize(seed.acc);
  const WordAutomaton db = determinize(seed.rej);
  auto delta = [](const WordAutomaton& d, StateId q, Letter l) { return d.edges(q)[l].to; };

  struct Tr {
    StateId from;
    SynchronousTransducer::Edge e;
  };
  std::vector<Tr> trs;
  std::vector<std::vector<std::size_t>> from_state(r.state_count());
  for (StateId p = 0; p < r.state_count(); ++p)
    for (const auto& e : r.edges(p)) {
      from_state[p].push_back(trs.size());
      trs.push_back({p, e});
    }

  using Key = std::tuple<std::size_t, StateId, StateId>;
  std::map<Key, std::size_t> index;
  std::vector<Key> keys;
  std::vector<std::vector<std::size_t>> succ;  // into keys
  std::vector<int> exit_of;                    // bitmask 1 acc, 2 rej, 4 eq
  int v0_exit = 0;

  auto exit_mask = [&](StateId qr, StateId qa, StateId qb) {
    if (!r.is_final(qr)) return 0;
    if (da.is_final(qa)) return 1;
    if (db.is_final(qb)) return 2;
    return 4;
  };
  std::deque<std::size_t> todo;
  auto get = [&](std::size_t t, StateId qa, StateId qb) {
    Key k{t, qa, qb};
    auto [it, fresh] = index.try_emplace(k, keys.size());
    if (fresh) {
      keys.push_back(k);
      succ.emplace_back();
      exit_of.push_back(exit_mask(trs[t].e.to, qa, qb));
      todo.push_back(it->second);
    }
    return it->second;
  };
  std::vector<std::size_t> initial_succ;
  if (r.state_count() > 0) {
    v0_exit = exit_mask(r.initial(), da.initial(), db.initial());
    for (std::size_t t : from_state[r.initial()]) {
      Letter a = trs[t].e.in;
      initial_succ.push_back(get(t, delta(da, da.initial(), a), delta(db, db.initial(), a)));
    }
  }
  while (!todo.empty()) {
    std::size_t k = todo.front();
    todo.pop_front();
    auto [t, qa, qb] = keys[k];
    for (std::size_t t2 : from_state[trs[t].e.to]) {
      Letter a = trs[t2].e.in;
      std::size_t nk = get(t2, delta(da, qa, a), delta(db, qb, a));
      succ[k].push_back(nk);
    }
  }

  // keep only product states from which some exit is reachable
  std::vector<char> live(keys.size(), 0);
  for (std::size_t k = 0; k < keys.size(); ++k) live[k] = exit_of[k] != 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < keys.size(); ++k) {
      if (live[k]) continue;
      for (std::size_t n : succ[k])
        if (live[n]) {
          live[k] = changed = true;
          break;
        }
    }
  }

  GameGraph g(with_symbol(r.alphabet(), kBorder));
  StateId v0 = g.add_state("v0", kBorder);
  g.set_initial(v0);
  int used_exits = v0_exit;
  for (std::size_t k = 0; k < keys.size(); ++k)
    if (live[k]) used_exits |= exit_of[k];
  std::map<int, StateId> exits;
  if (used_exits & 1) {
    exits[1] = g.add_state("v_acc", kBorder);
    g.set_admissible(exits[1], DecisionSet::only(Decision::one));
  }
  if (used_exits & 2) {
    exits[2] = g.add_state("v_rej", kBorder);
    g.set_admissible(exits[2], DecisionSet::only(Decision::zero));
  }
  if (used_exits & 4) {
    exits[4] = g.add_state("v_eq", kBorder);
    g.set_admissible(exits[4], DecisionSet::both());
  }
  std::vector<StateId> ids(keys.size(), 0);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!live[k]) continue;
    auto [t, qa, qb] = keys[k];
    const auto& tr = trs[t];
    std::string name = r.name(tr.from) + ">" + r.alphabet().at(tr.e.in) + "|" + r.alphabet().at(tr.e.out) + ">" +
                       r.name(tr.e.to) + "@" + std::to_string(qa) + "," + std::to_string(qb);
    ids[k] = g.add_state(name, r.alphabet().at(tr.e.in), r.alphabet().at(tr.e.out));
  }
  if (v0_exit) g.add_edge(v0, exits.at(v0_exit));
  for (std::size_t k : initial_succ)
    if (live[k]) g.add_edge(v0, ids[k]);
  for (std::size_t k = 0; k < keys.size(); ++k) {
    if (!live[k]) continue;
    if (exit_of[k]) g.add_edge(ids[k], exits.at(exit_of[k]));
    for (std::size_t n : succ[k])
      if (live[n]) g.add_edge(ids[k], ids[n]);
  }
  return g;
}

/// Seed of the identity relation over Σ with the given languages.
inline Seed identity_seed(const WordAutomaton& acc, const WordAutomaton& rej) {
  require_same_alphabet(acc.alphabet(), rej.alphabet(), "identity_seed");
  require_disjoint(acc, rej);
  return Seed{identity(acc.alphabet()), acc, rej};
}

}  // namespace cga
