#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/automaton.hpp"
#include "cga/dyck.hpp"
#include "cga/grammar.hpp"
#include "cga/seed.hpp"
#include "cga/transducer.hpp"

namespace cga {

/// Brackets and neutrals Λ, terminals Σ, coding h: Λ -> Σ and a regular
/// language M over the neutralised copy Λ'.
struct FlowerSpec {
  DyckSpec dyck;
  Alphabet sigma;
  Homomorphism h;
  WordAutomaton m;
};

inline void require_valid(const FlowerSpec& fs) {
  require_valid(fs.dyck);
  const Alphabet lambda = fs.dyck.lambda();
  const Alphabet primed = fs.dyck.neutral_copy();
  if (fs.sigma.empty()) throw Error(ErrorKind::invalid_spec, "terminal alphabet is empty");
  if (!(fs.h.source() == lambda)) throw Error(ErrorKind::invalid_spec, "homomorphism must be defined on the brackets and neutrals");
  if (!fs.h.target().is_subset_of(fs.sigma)) throw Error(ErrorKind::invalid_spec, "homomorphism leaves the terminal alphabet");
  for (const auto& s : fs.sigma.symbols())
    if (lambda.contains(s) || primed.contains(s) || s == kBottom)
      throw Error(ErrorKind::invalid_spec, "terminal '" + s + "' clashes with a bracket, neutral or erased symbol");
  if (!fs.m.alphabet().is_subset_of(primed))
    throw Error(ErrorKind::invalid_spec, "M must be over neutralised symbols only");
  if (fs.m.state_count() == 0) throw Error(ErrorKind::invalid_spec, "M has no states");
}

inline Symbol pair_symbol(const Symbol& a, const Symbol& x) { return a + "|" + x; }

namespace detail {

/// Terminal names after forcing them apart from the transducer alphabet.
inline std::map<Symbol, Symbol> coding_names(const Alphabet& gamma, const Alphabet& sigma) {
  std::map<Symbol, Symbol> names;
  for (const auto& s : sigma.symbols()) {
    Symbol n = gamma.contains(s) ? "t:" + s : s;
    if (gamma.contains(n)) throw Error(ErrorKind::alphabet_overlap, "cannot separate terminal '" + s + "'");
    names.emplace(s, n);
  }
  return names;
}

}  // namespace detail

/// Adds the coding cycle q_h for h and duplicates every original track so
/// that the second component remembers a letter of Λ.
inline SynchronousTransducer add_coding_cycle(const SynchronousTransducer& r, const Homomorphism& h) {
  const Alphabet& gamma = r.alphabet();
  const Alphabet& lambda = h.source();
  if (!lambda.is_subset_of(gamma)) throw Error(ErrorKind::invalid_spec, "coded letters must belong to the transducer");
  auto names = detail::coding_names(gamma, h.target());
  std::vector<Symbol> symbols;
  for (const auto& [_, n] : names) symbols.push_back(n);
  for (const auto& a : gamma.symbols())
    for (const auto& x : lambda.symbols()) {
      Symbol p = pair_symbol(a, x);
      if (std::find(symbols.begin(), symbols.end(), p) != symbols.end())
        throw Error(ErrorKind::alphabet_overlap, "pair symbol '" + p + "' collides with a terminal");
      symbols.push_back(p);
    }
  SynchronousTransducer out{Alphabet(symbols)};
  for (StateId s = 0; s < r.state_count(); ++s) {
    out.add_state(r.name(s));
    out.set_final(s, r.is_final(s));
  }
  std::string qh_name = "qh";
  while (r.state_named(qh_name)) qh_name += "'";
  StateId qh = out.add_state(qh_name);
  out.set_final(qh);
  out.set_initial(r.initial());
  for (StateId s = 0; s < r.state_count(); ++s)
    for (const auto& e : r.edges(s))
      for (const auto& x : lambda.symbols())
        out.add_transition(s, pair_symbol(gamma.at(e.in), x), pair_symbol(gamma.at(e.out), x), e.to);
  for (const auto& a : lambda.symbols()) {
    const Symbol& t = names.at(h(a));
    out.add_transition(r.initial(), t, pair_symbol(a, a), qh);
    out.add_transition(qh, t, pair_symbol(a, a), qh);
  }
  return out;
}

/// Keeps Σ ∪ {(x,x)} ∪ {(□,x)} and renames (x,x) to x and (□,x) to its
/// neutralised copy.
inline SynchronousTransducer reduce_flower(const SynchronousTransducer& rh, const Homomorphism& h) {
  const Alphabet& ga = rh.alphabet();
  const Alphabet& lambda = h.source();
  std::map<Symbol, Symbol> rename;
  for (const auto& s : h.target().symbols()) {
    if (ga.contains(s))
      rename.emplace(s, s);
    else if (ga.contains("t:" + s))
      rename.emplace("t:" + s, "t:" + s);
    else
      throw Error(ErrorKind::not_a_coded_dyck_transducer, "terminal '" + s + "' does not occur");
  }
  for (const auto& x : lambda.symbols()) {
    for (const auto& [from, to] : {std::pair{pair_symbol(x, x), x}, std::pair{pair_symbol(kBottom, x), neutralised(x)}}) {
      if (!ga.contains(from)) throw Error(ErrorKind::not_a_coded_dyck_transducer, "missing symbol '" + from + "'");
      rename.emplace(from, to);
    }
  }
  std::vector<Symbol> symbols;
  for (const auto& [_, to] : rename) symbols.push_back(to);
  std::sort(symbols.begin(), symbols.end());
  if (std::adjacent_find(symbols.begin(), symbols.end()) != symbols.end())
    throw Error(ErrorKind::not_a_coded_dyck_transducer, "reduced alphabet is not disjoint");
  SynchronousTransducer out{Alphabet(symbols)};
  std::vector<std::optional<Letter>> map(ga.size());
  for (Letter l = 0; l < ga.size(); ++l) {
    auto it = rename.find(ga.at(l));
    if (it != rename.end()) map[l] = out.alphabet().letter(it->second);
  }
  for (StateId s = 0; s < rh.state_count(); ++s) {
    out.add_state(rh.name(s));
    out.set_final(s, rh.is_final(s));
  }
  out.set_initial(rh.initial());
  for (StateId s = 0; s < rh.state_count(); ++s)
    for (const auto& e : rh.edges(s))
      if (map[e.in] && map[e.out]) out.add_transition(s, *map[e.in], *map[e.out], e.to);
  return out;
}

/// n-flower seed (R̂, M, ∅) over Σ ∪ Λ ∪ Λ'.
inline Seed build_flower(const FlowerSpec& fs) {
  require_valid(fs);
  auto r = reduce_flower(add_coding_cycle(dyck_transducer(fs.dyck), fs.h), fs.h);
  return Seed{r, relabel(fs.m, r.alphabet()), empty_automaton(r.alphabet())};
}

namespace detail {

using RoleEdge = std::tuple<std::size_t, Symbol, Symbol, std::size_t>;

/// Transitions of the reduced flower by state role: 0 = q0, k = qk,
/// n+1 = qh.
inline std::set<RoleEdge> flower_edges(const DyckSpec& d, const std::map<Symbol, Symbol>& h) {
  std::set<RoleEdge> out;
  const std::size_t n = d.pairs();
  const auto lambda = d.lambda().symbols();
  for (const auto& a : lambda) {
    out.emplace(0, a, a, 0);
    out.emplace(0, neutralised(a), neutralised(a), 0);
    for (std::size_t k = 1; k <= n; ++k) out.emplace(k, neutralised(a), neutralised(a), k);
    out.emplace(0, h.at(a), a, n + 1);
    out.emplace(n + 1, h.at(a), a, n + 1);
  }
  for (const auto& c : d.neutrals) out.emplace(0, c, neutralised(c), 0);
  for (std::size_t k = 1; k <= n; ++k) {
    const auto& [o, c] = d.brackets[k - 1];
    out.emplace(0, o, neutralised(o), k);
    out.emplace(k, c, neutralised(c), 0);
  }
  return out;
}

}  // namespace detail

/// Matches the transducer against the flower template. On success the
/// returned spec has M = Λ'*.
inline std::optional<FlowerSpec> flower_structure(const SynchronousTransducer& r) {
  const Alphabet& gamma = r.alphabet();
  if (r.state_count() < 3) return std::nullopt;
  std::vector<Symbol> lambda, primed, sigma;
  for (const auto& s : gamma.symbols()) {
    if (is_neutralised(s) && gamma.contains(unneutralised(s)))
      primed.push_back(s);
    else if (gamma.contains(neutralised(s)))
      lambda.push_back(s);
    else
      sigma.push_back(s);
  }
  if (lambda.empty() || sigma.empty()) return std::nullopt;

  const StateId q0 = r.initial();
  auto finals = r.finals();
  if (finals.size() != 2 || std::find(finals.begin(), finals.end(), q0) == finals.end()) return std::nullopt;
  const StateId qh = finals[0] == q0 ? finals[1] : finals[0];

  // erasing transitions out of q0 reveal neutrals and opening brackets
  std::vector<Symbol> neutrals;
  std::map<StateId, Symbol> open;
  std::map<Symbol, Symbol> h;
  for (const auto& e : r.edges(q0)) {
    const Symbol& in = gamma.at(e.in);
    const Symbol& out = gamma.at(e.out);
    if (e.to == qh) {
      if (std::find(sigma.begin(), sigma.end(), in) == sigma.end()) return std::nullopt;
      if (!h.emplace(out, in).second) return std::nullopt;
      continue;
    }
    if (out != neutralised(in) || is_neutralised(in)) continue;
    if (e.to == q0)
      neutrals.push_back(in);
    else if (!open.emplace(e.to, in).second)
      return std::nullopt;
  }
  DyckSpec d;
  d.neutrals = neutrals;
  std::map<StateId, std::size_t> role{{q0, 0}};
  for (const auto& [qk, o] : open) {
    std::optional<Symbol> close;
    for (const auto& e : r.edges(qk)) {
      if (e.to != q0) continue;
      const Symbol& in = gamma.at(e.in);
      if (gamma.at(e.out) != neutralised(in) || close) return std::nullopt;
      close = in;
    }
    if (!close) return std::nullopt;
    d.brackets.emplace_back(o, *close);
    role.emplace(qk, d.brackets.size());
  }
  if (d.brackets.empty() || r.state_count() != d.pairs() + 2 || role.count(qh)) return std::nullopt;
  role.emplace(qh, d.pairs() + 1);
  try {
    require_valid(d);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto lam = d.lambda();
  if (lam.symbols() != Alphabet(lambda).symbols()) return std::nullopt;
  for (const auto& a : lam.symbols())
    if (!h.count(a)) return std::nullopt;

  std::set<detail::RoleEdge> actual;
  for (StateId s = 0; s < r.state_count(); ++s)
    for (const auto& e : r.edges(s)) actual.emplace(role.at(s), gamma.at(e.in), gamma.at(e.out), role.at(e.to));
  if (actual != detail::flower_edges(d, h)) return std::nullopt;

  Alphabet sig(sigma);
  Alphabet primed_alpha = d.neutral_copy();
  return FlowerSpec{d, sig, Homomorphism(lam, sig, h), universal_automaton(primed_alpha)};
}

/// Flower transducer plus an accepting language over neutralised symbols.
inline std::optional<FlowerSpec> is_flower(const Seed& seed) {
  auto fs = flower_structure(seed.relation);
  if (!fs) return std::nullopt;
  const auto primed = fs->dyck.neutral_copy();
  for (Letter l : live_letters(seed.acc))
    if (!primed.contains(seed.acc.alphabet().at(l))) return std::nullopt;
  fs->m = relabel(seed.acc, primed);
  return fs;
}

/// CNF grammar for h(D ∩ M'), where D is the (properly nested) Dyck
/// language over Λ and M' reads each letter of Λ as its neutralised copy in M.
inline Grammar flower_cfg(const FlowerSpec& fs) {
  require_valid(fs);
  const auto& m = fs.m;
  const Alphabet& ma = m.alphabet();
  auto reach = reachable_states(m);
  auto co = coreachable_states(m);
  std::vector<StateId> states;
  for (StateId s = 0; s < m.state_count(); ++s)
    if (reach[s] && co[s]) states.push_back(s);

  Grammar g;
  g.terminals = fs.sigma;
  g.start = "$S";
  g.nonterminals.insert(g.start);
  for (const auto& s : fs.sigma.symbols())
    if (s.rfind('$', 0) == 0) throw Error(ErrorKind::invalid_spec, "terminal names must not start with '$'");

  auto st = [](StateId s) { return std::to_string(s); };
  auto D = [&](StateId p, StateId q) { return "$D." + st(p) + "." + st(q); };
  auto A = [&](std::size_t k, StateId p, StateId q) { return "$A" + std::to_string(k) + "." + st(p) + "." + st(q); };
  auto B = [&](std::size_t k, StateId p, StateId q) { return "$B" + std::to_string(k) + "." + st(p) + "." + st(q); };
  auto E = [&](std::size_t k, StateId p, StateId q) { return "$E" + std::to_string(k) + "." + st(p) + "." + st(q); };
  auto add = [&](const std::string& lhs, std::vector<std::string> rhs) {
    g.nonterminals.insert(lhs);
    for (const auto& s : rhs)
      if (!g.is_terminal(s)) g.nonterminals.insert(s);
    g.productions.insert(Production{lhs, std::move(rhs)});
  };
  // p -x-> q inside the trimmed M, for x in Λ read as its neutralised copy
  auto moves = [&](StateId p, const Symbol& x) {
    std::vector<StateId> out;
    auto l = ma.index(neutralised(x));
    if (!l) return out;
    for (const auto& e : m.edges(p))
      if (e.letter == *l && reach[e.to] && co[e.to]) out.push_back(e.to);
    return out;
  };

  for (StateId p : states) {
    for (StateId q : states)
      for (StateId r : states) add(D(p, q), {D(p, r), D(r, q)});
    for (const auto& c : fs.dyck.neutrals)
      for (StateId q : moves(p, c)) add(D(p, q), {fs.h(c)});
    for (std::size_t k = 0; k < fs.dyck.pairs(); ++k) {
      const auto& [o, c] = fs.dyck.brackets[k];
      for (StateId p2 : moves(p, o)) {
        add(A(k, p, p2), {fs.h(o)});
        for (StateId q : states) {
          add(D(p, q), {A(k, p, p2), E(k, p2, q)});
          for (StateId q2 : states) add(E(k, p2, q), {D(p2, q2), B(k, q2, q)});
        }
      }
      for (StateId q : moves(p, c)) add(B(k, p, q), {fs.h(c)});
      for (StateId p2 : moves(p, o))
        for (StateId q : states) add(D(p, q), {A(k, p, p2), B(k, p2, q)});
    }
  }
  if (reach[m.initial()] && co[m.initial()]) {
    std::vector<Production> from_start;
    for (const auto& p : g.productions)
      for (StateId f : states)
        if (m.is_final(f) && p.lhs == D(m.initial(), f)) from_start.push_back(p);
    for (auto& p : from_start) add(g.start, p.rhs);
  }
  require_well_formed(g);
  return prune_grammar(g);
}

}  // namespace cga
