#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/automaton.hpp"
#include "cga/domino.hpp"
#include "cga/error.hpp"
#include "cga/seed.hpp"
#include "cga/transducer.hpp"

namespace cga {

inline const std::string kNeutralPrefix = "n:";

/// Marked copy of a letter, produced by erasing transitions.
inline Symbol neutralised(const Symbol& x) { return kNeutralPrefix + x; }
inline bool is_neutralised(const Symbol& x) { return x.rfind(kNeutralPrefix, 0) == 0 && x.size() > kNeutralPrefix.size(); }
inline Symbol unneutralised(const Symbol& x) { return x.substr(kNeutralPrefix.size()); }

using BracketPair = std::pair<Symbol, Symbol>;

struct DyckSpec {
  std::vector<BracketPair> brackets;  // (opening, closing) per kind
  std::vector<Symbol> neutrals;

  std::size_t pairs() const { return brackets.size(); }

  /// Λ = brackets ∪ neutrals.
  Alphabet lambda() const {
    std::vector<Symbol> all(neutrals);
    for (const auto& [o, c] : brackets) {
      all.push_back(o);
      all.push_back(c);
    }
    return Alphabet(std::move(all));
  }

  /// Λ' = neutralised copy of Λ.
  Alphabet neutral_copy() const {
    std::vector<Symbol> all;
    Alphabet base = lambda();
    for (const auto& s : base.symbols()) all.push_back(neutralised(s));
    return Alphabet(std::move(all));
  }
};

inline void require_valid(const DyckSpec& spec) {
  if (spec.brackets.empty()) throw Error(ErrorKind::invalid_spec, "a Dyck spec needs at least one bracket pair");
  std::set<Symbol> seen;
  auto add = [&](const Symbol& s) {
    if (!valid_symbol_name(s)) throw Error(ErrorKind::invalid_spec, "bad symbol '" + s + "'");
    if (s == kBottom) throw Error(ErrorKind::invalid_spec, "'" + s + "' is reserved for erased positions");
    if (is_neutralised(s)) throw Error(ErrorKind::invalid_spec, "'" + s + "' uses the neutralised prefix");
    if (!seen.insert(s).second) throw Error(ErrorKind::invalid_spec, "symbol '" + s + "' used twice");
  };
  for (const auto& [o, c] : spec.brackets) {
    add(o);
    add(c);
  }
  for (const auto& c : spec.neutrals) add(c);
}

/// Default bracket names for n kinds.
inline DyckSpec make_dyck_spec(std::size_t n, std::vector<Symbol> neutrals = {}) {
  static const BracketPair defaults[] = {{"[", "]"}, {"(", ")"}, {"{", "}"}, {"<", ">"}};
  DyckSpec spec;
  for (std::size_t k = 0; k < n; ++k)
    spec.brackets.push_back(k < 4 ? defaults[k] : BracketPair{"[" + std::to_string(k + 1), "]" + std::to_string(k + 1)});
  spec.neutrals = std::move(neutrals);
  require_valid(spec);
  return spec;
}

/// Copying transitions plus erasure of neutrals and of innermost bracket
/// pairs onto □. States q0 (initial, sole final) and q1..qn.
inline SynchronousTransducer dyck_transducer(const DyckSpec& spec) {
  require_valid(spec);
  SynchronousTransducer r(with_symbol(spec.lambda(), kBottom));
  StateId q0 = r.add_state("q0");
  r.set_initial(q0);
  r.set_final(q0);
  for (Letter l = 0; l < r.alphabet().size(); ++l) r.add_transition(q0, l, l, q0);
  for (const auto& c : spec.neutrals) r.add_transition(q0, c, kBottom, q0);
  for (std::size_t k = 0; k < spec.pairs(); ++k) {
    StateId qk = r.add_state("q" + std::to_string(k + 1));
    r.add_transition(qk, kBottom, kBottom, qk);
    r.add_transition(q0, spec.brackets[k].first, kBottom, qk);
    r.add_transition(qk, spec.brackets[k].second, kBottom, q0);
  }
  return r;
}

/// Per-kind excess: every kind balances and no prefix closes more than it opened.
inline bool dyck_membership(const DyckSpec& spec, const Word& w) {
  std::map<Symbol, std::pair<std::size_t, int>> role;  // symbol -> (kind, +1/-1/0)
  for (std::size_t k = 0; k < spec.pairs(); ++k) {
    role[spec.brackets[k].first] = {k, 1};
    role[spec.brackets[k].second] = {k, -1};
  }
  for (const auto& c : spec.neutrals) role[c] = {0, 0};
  std::vector<long> excess(spec.pairs(), 0);
  for (const auto& s : w) {
    auto it = role.find(s);
    if (it == role.end()) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + s + "'");
    auto [k, delta] = it->second;
    if (delta == 0) continue;
    excess[k] += delta;
    if (excess[k] < 0) return false;
  }
  for (long e : excess)
    if (e != 0) return false;
  return true;
}

/// Stack discipline across kinds: brackets must also nest properly.
inline bool nested_dyck_membership(const DyckSpec& spec, const Word& w) {
  std::map<Symbol, std::pair<std::size_t, int>> role;
  for (std::size_t k = 0; k < spec.pairs(); ++k) {
    role[spec.brackets[k].first] = {k, 1};
    role[spec.brackets[k].second] = {k, -1};
  }
  for (const auto& c : spec.neutrals) role[c] = {0, 0};
  std::vector<std::size_t> stack;
  for (const auto& s : w) {
    auto it = role.find(s);
    if (it == role.end()) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + s + "'");
    auto [k, delta] = it->second;
    if (delta > 0) stack.push_back(k);
    if (delta < 0) {
      if (stack.empty() || stack.back() != k) return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

/// (R_{n,C}, □*, ∅).
inline Seed dyck_seed(const DyckSpec& spec) {
  auto r = dyck_transducer(spec);
  return Seed{r, star_automaton(r.alphabet(), {kBottom}), empty_automaton(r.alphabet())};
}

}  // namespace cga
