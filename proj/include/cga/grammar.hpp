#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/error.hpp"

namespace cga {

struct Production {
  std::string lhs;
  std::vector<std::string> rhs;  // terminals and nonterminals share one namespace
  friend auto operator<=>(const Production&, const Production&) = default;
};

/// Context-free grammar without ε-productions.
struct Grammar {
  Alphabet terminals;
  std::set<std::string> nonterminals;
  std::string start;
  std::set<Production> productions;

  bool is_terminal(const std::string& s) const { return terminals.contains(s); }

  /// Every production is A -> B C over nonterminals or A -> a.
  bool is_cnf() const {
    return std::all_of(productions.begin(), productions.end(), [&](const Production& p) {
      if (p.rhs.size() == 1) return is_terminal(p.rhs[0]);
      return p.rhs.size() == 2 && nonterminals.count(p.rhs[0]) && nonterminals.count(p.rhs[1]);
    });
  }
};

inline void require_well_formed(const Grammar& g) {
  for (const auto& n : g.nonterminals)
    if (g.terminals.contains(n)) throw Error(ErrorKind::invalid_spec, "'" + n + "' is both terminal and nonterminal");
  if (!g.nonterminals.count(g.start)) throw Error(ErrorKind::invalid_spec, "start symbol is not a nonterminal");
  for (const auto& p : g.productions) {
    if (!g.nonterminals.count(p.lhs)) throw Error(ErrorKind::invalid_spec, "unknown nonterminal '" + p.lhs + "'");
    if (p.rhs.empty()) throw Error(ErrorKind::invalid_spec, "empty production for '" + p.lhs + "'");
    for (const auto& s : p.rhs)
      if (!g.nonterminals.count(s) && !g.is_terminal(s))
        throw Error(ErrorKind::invalid_spec, "unknown symbol '" + s + "' in production for '" + p.lhs + "'");
  }
}

/// Removes nonterminals that derive no terminal word or are unreachable
/// from the start symbol. The start symbol itself is always kept.
inline Grammar prune_grammar(const Grammar& g) {
  std::set<std::string> productive;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& p : g.productions) {
      if (productive.count(p.lhs)) continue;
      bool ok = std::all_of(p.rhs.begin(), p.rhs.end(),
                            [&](const std::string& s) { return g.is_terminal(s) || productive.count(s); });
      if (ok) changed = productive.insert(p.lhs).second;
    }
  }
  std::map<std::string, std::vector<const Production*>> by_lhs;
  for (const auto& p : g.productions) {
    bool ok = productive.count(p.lhs) && std::all_of(p.rhs.begin(), p.rhs.end(), [&](const std::string& s) {
                return g.is_terminal(s) || productive.count(s);
              });
    if (ok) by_lhs[p.lhs].push_back(&p);
  }
  std::set<std::string> reach{g.start};
  std::vector<std::string> stack{g.start};
  while (!stack.empty()) {
    auto n = stack.back();
    stack.pop_back();
    for (const auto* p : by_lhs[n])
      for (const auto& s : p->rhs)
        if (!g.is_terminal(s) && reach.insert(s).second) stack.push_back(s);
  }
  Grammar out{g.terminals, {g.start}, g.start, {}};
  for (const auto& n : reach) {
    out.nonterminals.insert(n);
    for (const auto* p : by_lhs[n]) out.productions.insert(*p);
  }
  return out;
}

/// CYK over a grammar in Chomsky normal form. The empty word is never a member.
inline bool cyk_membership(const Grammar& g, const Word& w) {
  if (!g.is_cnf()) throw Error(ErrorKind::not_cnf, "grammar is not in Chomsky normal form");
  for (const auto& s : w)
    if (!g.is_terminal(s)) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + s + "'");
  const std::size_t n = w.size();
  if (n == 0) return false;
  std::map<std::string, std::size_t> id;
  for (const auto& nt : g.nonterminals) id.emplace(nt, id.size());
  const std::size_t k = id.size();
  struct Bin {
    std::size_t lhs, left, right;
  };
  std::vector<Bin> binary;
  std::map<std::string, std::vector<std::size_t>> unit;
  for (const auto& p : g.productions) {
    if (p.rhs.size() == 1)
      unit[p.rhs[0]].push_back(id.at(p.lhs));
    else
      binary.push_back({id.at(p.lhs), id.at(p.rhs[0]), id.at(p.rhs[1])});
  }
  // table[i][len-1][A]: A derives w[i .. i+len)
  std::vector<std::vector<std::vector<char>>> table(n, std::vector<std::vector<char>>(n, std::vector<char>(k, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t a : unit[w[i]]) table[i][0][a] = 1;
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i)
      for (std::size_t split = 1; split < len; ++split)
        for (const auto& b : binary)
          if (table[i][split - 1][b.left] && table[i + split][len - split - 1][b.right]) table[i][len - 1][b.lhs] = 1;
  return table[0][n - 1][id.at(g.start)];
}

}  // namespace cga
