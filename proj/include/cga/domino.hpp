#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/error.hpp"
#include "cga/game.hpp"

namespace cga {

inline const Symbol kBottom = "□";

using DominoPair = std::pair<Symbol, Symbol>;

struct DominoSystem {
  std::vector<Symbol> dominoes;
  std::set<DominoPair> horizontal;
  std::set<DominoPair> vertical;
  Symbol side = kBorder;
  Symbol bottom = kBottom;

  bool h(const Symbol& a, const Symbol& b) const { return horizontal.count({a, b}) != 0; }
  bool v(const Symbol& a, const Symbol& b) const { return vertical.count({a, b}) != 0; }
};

inline std::vector<Violation> validate_domino(const DominoSystem& d) {
  std::vector<Violation> out;
  std::set<Symbol> known;
  for (const auto& x : d.dominoes) {
    if (!valid_symbol_name(x)) out.push_back({"bad-domino-name", "'" + x + "'"});
    if (!known.insert(x).second) out.push_back({"duplicate-domino", x});
  }
  if (d.side == d.bottom) out.push_back({"border-equals-bottom", d.side});
  if (!known.count(d.side)) out.push_back({"missing-side-border", d.side});
  if (!known.count(d.bottom)) out.push_back({"missing-bottom-border", d.bottom});
  auto check = [&](const std::set<DominoPair>& rel, const char* which) {
    for (const auto& [a, b] : rel)
      for (const auto* x : {&a, &b})
        if (!known.count(*x)) out.push_back({"unknown-domino", std::string(which) + " (" + a + "," + b + ") uses " + *x});
  };
  check(d.horizontal, "horizontal");
  check(d.vertical, "vertical");
  return out;
}

inline void require_valid(const DominoSystem& d) {
  auto v = validate_domino(d);
  if (!v.empty()) throw Error(ErrorKind::invalid_domino, v.front().code + ": " + v.front().detail);
}

/// Rows top to bottom; every row includes both side columns.
struct Tiling {
  std::size_t width = 0;
  std::vector<Word> rows;
  std::size_t height() const { return rows.size(); }
  friend bool operator==(const Tiling&, const Tiling&) = default;
};

/// Checks a tiling against the corridor constraints for top row w.
inline std::vector<Violation> validate_tiling(const DominoSystem& d, const Tiling& t, const Word& w) {
  std::vector<Violation> out;
  const std::size_t l = t.width;
  auto at = [](std::size_t x, std::size_t y) { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; };
  if (t.rows.empty()) return {{"empty-tiling", "no rows"}};
  if (w.size() != l) out.push_back({"top-row", "width differs from the word"});
  for (std::size_t y = 0; y < t.rows.size(); ++y) {
    const auto& row = t.rows[y];
    if (row.size() != l + 2) {
      out.push_back({"row-width", "row " + std::to_string(y)});
      return out;
    }
    bool last = y + 1 == t.rows.size();
    if (!last && (row.front() != d.side || row.back() != d.side)) out.push_back({"side-column", "row " + std::to_string(y)});
    for (std::size_t x = 1; x <= l; ++x) {
      if (y == 0 && x - 1 < w.size() && row[x] != w[x - 1]) out.push_back({"top-row", at(x, y)});
      if (last && row[x] != d.bottom) out.push_back({"bottom-row", at(x, y)});
    }
    for (std::size_t x = 0; x + 1 < row.size(); ++x)
      if (!d.h(row[x], row[x + 1])) out.push_back({"horizontal", at(x, y) + " " + row[x] + " " + row[x + 1]});
    if (!last)
      for (std::size_t x = 0; x < row.size(); ++x)
        if (!d.v(row[x], t.rows[y + 1][x]))
          out.push_back({"vertical", at(x, y) + " " + row[x] + " over " + t.rows[y + 1][x]});
  }
  return out;
}

namespace detail {

/// Interior rows of width l that fit between two side borders, optionally
/// restricted cellwise to vertical successors of `above`.
inline std::vector<Word> side_rows(const DominoSystem& d, std::size_t l, const Word* above) {
  std::vector<Word> out;
  Word cur;
  std::function<void()> rec = [&] {
    if (cur.size() == l) {
      if (d.h(cur.empty() ? d.side : cur.back(), d.side)) out.push_back(cur);
      return;
    }
    const Symbol left = cur.empty() ? d.side : cur.back();
    for (const auto& x : d.dominoes) {
      if (x == d.side) continue;
      if (!d.h(left, x)) continue;
      if (above && !d.v((*above)[cur.size()], x)) continue;
      cur.push_back(x);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

/// Bottom row □^l under `above` (nullptr when the bottom is the top row);
/// corner cells are chosen as the first compatible dominoes.
inline std::optional<Word> bottom_row(const DominoSystem& d, std::size_t l, const Word* above) {
  if (above) {
    for (std::size_t i = 0; i < l; ++i)
      if (!d.v((*above)[i], d.bottom)) return std::nullopt;
  }
  if (l >= 2 && !d.h(d.bottom, d.bottom)) return std::nullopt;
  std::optional<Symbol> left, right;
  for (const auto& c : d.dominoes) {
    bool fits = !above || d.v(d.side, c);
    if (!left && fits && d.h(c, d.bottom)) left = c;
    if (!right && fits && d.h(d.bottom, c)) right = c;
  }
  if (!left || !right) return std::nullopt;
  Word row{*left};
  row.insert(row.end(), l, d.bottom);
  row.push_back(*right);
  return row;
}

inline Word with_sides(const DominoSystem& d, const Word& interior) {
  Word row{d.side};
  row.insert(row.end(), interior.begin(), interior.end());
  row.push_back(d.side);
  return row;
}

}  // namespace detail

/// Shortest corridor tiling with w on top and at most max_height rows.
/// Breadth-first over rows, successors in lexicographic order.
inline std::optional<Tiling> corridor_tiling(const DominoSystem& d, const Word& w, std::size_t max_height,
                                             const Limits& limits = {}) {
  require_valid(d);
  if (w.empty()) throw Error(ErrorKind::invalid_argument, "corridor tiling needs a non-empty top row");
  if (max_height < 1) throw Error(ErrorKind::invalid_argument, "max_height must be at least 1");
  std::set<Symbol> known(d.dominoes.begin(), d.dominoes.end());
  for (const auto& x : w)
    if (!known.count(x)) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + x + "' is not a domino");
  const std::size_t l = w.size();

  if (std::all_of(w.begin(), w.end(), [&](const Symbol& s) { return s == d.bottom; }))
    if (auto b = detail::bottom_row(d, l, nullptr)) return Tiling{l, {*b}};
  if (max_height < 2) return std::nullopt;

  Word top = w;
  bool top_ok = d.h(d.side, top.front()) && d.h(top.back(), d.side);
  for (std::size_t i = 0; i + 1 < l; ++i) top_ok = top_ok && d.h(top[i], top[i + 1]);
  if (!top_ok) return std::nullopt;
  bool side_stack = d.v(d.side, d.side);

  std::map<Word, std::pair<Word, std::size_t>> parent;  // row -> (row above, depth)
  parent.emplace(top, std::make_pair(top, 1));
  std::deque<Word> queue{top};
  while (!queue.empty()) {
    Word cur = queue.front();
    queue.pop_front();
    std::size_t depth = parent.at(cur).second;
    if (auto b = detail::bottom_row(d, l, &cur)) {
      Tiling t{l, {}};
      t.rows.push_back(*b);
      for (Word r = cur;; r = parent.at(r).first) {
        t.rows.push_back(detail::with_sides(d, r));
        if (r == top) break;
      }
      std::reverse(t.rows.begin(), t.rows.end());
      return t;
    }
    if (depth + 2 > max_height || !side_stack) continue;
    for (auto& next : detail::side_rows(d, l, &cur)) {
      if (parent.try_emplace(next, std::make_pair(cur, depth + 1)).second) {
        check_cap(parent.size(), limits, "corridor tiling rows");
        queue.push_back(std::move(next));
      }
    }
  }
  return std::nullopt;
}

inline bool frontier_membership(const DominoSystem& d, const Word& w, std::size_t max_height,
                                const Limits& limits = {}) {
  return corridor_tiling(d, w, max_height, limits).has_value();
}

inline std::string singleton_state(const Symbol& d) { return "s:" + d; }
inline std::string pair_state(const Symbol& d, const Symbol& b) { return "p:" + d + "|" + b; }

/// Covering game of a domino system: singleton states for single rows, pair
/// states for two stacked rows, z ({0,1}) and zhat ({1}, only after □).
inline GameGraph compile_domino_game(const DominoSystem& d, bool prune = true) {
  require_valid(d);
  GameGraph g{Alphabet(d.dominoes)};
  StateId v0 = g.add_state("v0", d.side);
  g.set_initial(v0);
  StateId z = g.add_state("z", d.side);
  g.set_admissible(z, DecisionSet::both());
  StateId zhat = g.add_state("zhat", d.side);
  g.set_admissible(zhat, DecisionSet::only(Decision::one));

  std::vector<std::pair<Symbol, StateId>> singles;
  for (const auto& x : d.dominoes) {
    if (x == d.side) continue;
    singles.emplace_back(x, g.add_state(singleton_state(x), x));
  }
  std::vector<std::pair<DominoPair, StateId>> pairs;
  for (const auto& [a, b] : d.vertical) pairs.push_back({{a, b}, g.add_state(pair_state(a, b), a, b)});

  for (const auto& [x, s] : singles) {
    if (d.h(d.side, x)) g.add_edge(v0, s);
    if (d.h(x, d.side)) g.add_edge(s, z);
    if (x == d.bottom) g.add_edge(s, zhat);
    for (const auto& [y, t] : singles)
      if (d.h(x, y)) g.add_edge(s, t);
  }
  for (const auto& [p, s] : pairs) {
    if (d.h(d.side, p.first) && d.h(d.side, p.second)) g.add_edge(v0, s);
    if (d.h(p.first, d.side) && d.h(p.second, d.side)) g.add_edge(s, z);
    for (const auto& [q, t] : pairs)
      if (d.h(p.first, q.first) && d.h(p.second, q.second)) g.add_edge(s, t);
  }
  return prune ? prune_game(g) : g;
}

}  // namespace cga
