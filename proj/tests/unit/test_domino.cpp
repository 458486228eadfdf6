#include <catch_amalgamated.hpp>

#include "../support.hpp"

using namespace cga;
using namespace cga::test;

namespace {

/// Tiling search by brute force over whole grids of the given height.
bool brute_tileable(const DominoSystem& d, const Word& top, std::size_t max_height) {
  const std::size_t l = top.size();
  std::vector<Word> interior;
  std::vector<Symbol> pieces;
  for (const auto& x : d.dominoes)
    if (x != d.side) pieces.push_back(x);
  // rows of the interior, no side constraint yet
  std::vector<Word> rows;
  Word cur;
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == l) {
      rows.push_back(cur);
      return;
    }
    for (const auto& p : pieces) {
      cur.push_back(p);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  auto h_ok = [&](const Word& row) {
    if (!d.h(d.side, row.front()) || !d.h(row.back(), d.side)) return false;
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      if (!d.h(row[i], row[i + 1])) return false;
    return true;
  };
  auto v_ok = [&](const Word& a, const Word& b) {
    for (std::size_t i = 0; i < l; ++i)
      if (!d.v(a[i], b[i])) return false;
    return true;
  };
  Word bottom(l, d.bottom);
  bool corners = false;
  for (const auto& c : d.dominoes)
    for (const auto& e : d.dominoes)
      if (d.v(d.side, c) && d.v(d.side, e) && d.h(c, d.bottom) && d.h(d.bottom, e)) corners = true;
  bool bottom_row_ok = corners && (l < 2 || d.h(d.bottom, d.bottom));
  if (!h_ok(top)) return false;
  std::set<Word> layer{top};
  for (std::size_t h = 2; h <= max_height; ++h) {
    for (const auto& r : layer)
      if (bottom_row_ok && v_ok(r, bottom)) return true;
    std::set<Word> next;
    for (const auto& r : layer)
      for (const auto& s : rows)
        if (h_ok(s) && v_ok(r, s)) next.insert(s);
    layer = std::move(next);
  }
  return false;
}

}  // namespace

TEST_CASE("the shipped fig2a system validates") {
  auto d = fig2a_domino();
  REQUIRE(validate_domino(d).empty());
  auto bad = d;
  bad.bottom = bad.side;
  REQUIRE_FALSE(validate_domino(bad).empty());
  auto unknown = d;
  unknown.horizontal.insert({"a", "zz"});
  REQUIRE(validate_domino(unknown).front().code == "unknown-domino");
}

TEST_CASE("five-row tiling of aaabbb") {
  auto d = fig2a_domino();
  Word top{"a", "a", "a", "b", "b", "b"};
  auto t = corridor_tiling(d, top, 6);
  REQUIRE(t.has_value());
  REQUIRE(t->height() == 5);
  REQUIRE(validate_tiling(d, *t, top).empty());
  REQUIRE(t->rows.back() == Word{"#", "□", "□", "□", "□", "□", "□", "#"});
  REQUIRE_FALSE(corridor_tiling(d, top, 4).has_value());
}

TEST_CASE("small tilings by hand") {
  auto d = fig2a_domino();
  auto ab = corridor_tiling(d, {"a", "b"}, 3);
  REQUIRE(ab.has_value());
  REQUIRE(ab->rows[1] == Word{"#", "◁", "▷", "#"});
  REQUIRE_FALSE(corridor_tiling(d, {"b", "a"}, 8).has_value());
  REQUIRE(frontier_membership(d, {"a", "a", "b", "b"}, 4));
  REQUIRE_FALSE(frontier_membership(d, {"a", "a", "b"}, 7));
  REQUIRE_THROWS_AS(corridor_tiling(d, {}, 3), Error);
  REQUIRE_THROWS_AS(corridor_tiling(d, {"z"}, 3), Error);
}

TEST_CASE("row search agrees with whole-grid search") {
  auto d = fig2a_domino();
  Alphabet all(d.dominoes);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& x : brute_words(all, n)) {
      if (std::find(x.begin(), x.end(), "#") != x.end()) continue;
      bool all_bottom = std::all_of(x.begin(), x.end(), [](const Symbol& s) { return s == "□"; });
      if (all_bottom) continue;
      REQUIRE(frontier_membership(d, x, 6) == brute_tileable(d, x, 6));
    }
}

TEST_CASE("frontier language over {a,b} is a^n b^n") {
  auto d = fig2a_domino();
  Alphabet ab{"a", "b"};
  for (std::size_t n = 1; n <= 8; ++n)
    for (const auto& x : brute_words(ab, n)) REQUIRE(frontier_membership(d, x, n + 2) == is_anbn(x));
}

TEST_CASE("compiled game shape") {
  auto d = fig2a_domino();
  auto g = compile_domino_game(d, false);
  std::size_t expect = (d.dominoes.size() - 1) + d.vertical.size() + 3;
  REQUIRE(g.state_count() == expect);
  REQUIRE(validate_game(compile_domino_game(d)).empty());
  REQUIRE(*g.state(g.id("zhat")).admissible == DecisionSet::only(Decision::one));
  REQUIRE(*g.state(g.id("z")).admissible == DecisionSet::both());
  REQUIRE(g.successors(g.id(singleton_state("□"))).size() >= 1);
  for (StateId s = 0; s < g.state_count(); ++s)
    for (StateId t : g.successors(s))
      if (t == g.id("zhat")) REQUIRE(s == g.id(singleton_state("□")));
}

TEST_CASE("plays of the compiled game are rows or stacked row pairs") {
  auto d = fig2a_domino();
  auto g = compile_domino_game(d);
  auto h_row = [&](const Word& r) {
    if (!d.h("#", r.front()) || !d.h(r.back(), "#")) return false;
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      if (!d.h(r[i], r[i + 1])) return false;
    return true;
  };
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_plays(g, n)) {
      Word top = observation(g, p, 1), low = observation(g, p, 2);
      if (g.state(p.states.back()).name == "zhat") {
        REQUIRE(std::all_of(top.begin(), top.end(), [](const Symbol& s) { return s == "□"; }));
        continue;
      }
      REQUIRE(h_row(top));
      bool pair = g.state(p.states[1]).name.rfind("p:", 0) == 0;
      if (!pair) {
        REQUIRE(top == low);
        continue;
      }
      REQUIRE(h_row(low));
      for (std::size_t i = 0; i < n; ++i) REQUIRE(d.v(top[i], low[i]));
    }
}
