#include <catch_amalgamated.hpp>

#include <random>

#include "../support.hpp"

using namespace cga;
using namespace cga::test;

namespace {

GameGraph fig1() { return expect<GameGraph>(load_document(corpus("fig1.game")), "game"); }

/// Plays with n interior states, by unrestricted path search.
std::vector<Play> brute_plays(const GameGraph& g, std::size_t n) {
  std::vector<Play> out;
  std::vector<StateId> path{g.initial()};
  auto rec = [&](auto&& self) -> void {
    StateId cur = path.back();
    for (StateId t : g.successors(cur)) {
      if (g.is_final(t)) {
        if (path.size() - 1 == n) {
          out.push_back(Play{path});
          out.back().states.push_back(t);
        }
        continue;
      }
      if (path.size() - 1 == n) continue;
      path.push_back(t);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end(), [](const Play& a, const Play& b) { return a.states < b.states; });
  return out;
}

std::optional<Play> play_with(const GameGraph& g, std::size_t n, const std::string& b1, const std::string& b2 = {}) {
  for (const auto& p : enumerate_plays(g, n)) {
    if (format_word(observation(g, p, 1)) != b1) continue;
    if (!b2.empty() && format_word(observation(g, p, 2)) != b2) continue;
    return p;
  }
  return std::nullopt;
}

GameGraph tiny(const DecisionSet& omega) {
  GameGraph g(Alphabet{"#", "a"});
  StateId v0 = g.add_state("v0", "#"), x = g.add_state("x", "a"), f = g.add_state("f", "#");
  g.set_initial(v0);
  g.set_admissible(f, omega);
  g.add_edge(v0, x);
  g.add_edge(x, f);
  return g;
}

}  // namespace

TEST_CASE("decision sets") {
  auto b = DecisionSet::both();
  REQUIRE(b.contains(Decision::zero));
  REQUIRE(b.contains(Decision::one));
  REQUIRE((b & DecisionSet::only(Decision::one)) == DecisionSet::only(Decision::one));
  REQUIRE(DecisionSet::none().empty());
  REQUIRE(flip(Decision::zero) == Decision::one);
  REQUIRE_THROWS_AS(decision_from_int(2), Error);
}

TEST_CASE("the shipped fig1 game validates") { REQUIRE(validate_game(fig1()).empty()); }

TEST_CASE("structural violations are reported") {
  auto g = tiny(DecisionSet::both());
  g.add_edge(g.id("x"), g.initial());
  auto v = validate_game(g);
  REQUIRE(std::any_of(v.begin(), v.end(), [](const Violation& x) { return x.code == "initial-has-incoming"; }));

  auto e = tiny(DecisionSet::none());
  auto ve = validate_game(e);
  REQUIRE(std::any_of(ve.begin(), ve.end(), [](const Violation& x) { return x.code == "empty-admissible-set"; }));

  GameGraph m(Alphabet{"#", "a"});
  m.set_initial(m.add_state("v0", "#"));
  StateId f = m.add_state("f", "#");
  m.add_edge(m.initial(), f);
  auto vm = validate_game(m);
  REQUIRE(std::any_of(vm.begin(), vm.end(), [](const Violation& x) { return x.code == "missing-admissible-set"; }));
  REQUIRE_THROWS_AS(require_valid(m), Error);
}

TEST_CASE("play enumeration agrees with path search") {
  auto g = fig1();
  for (std::size_t n = 0; n <= 5; ++n) {
    auto got = enumerate_plays(g, n);
    auto expect = brute_plays(g, n);
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i].states == expect[i].states);
  }
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto r = random_game(rng);
    for (std::size_t n = 0; n <= 4; ++n) REQUIRE(enumerate_plays(r, n).size() == brute_plays(r, n).size());
  }
}

TEST_CASE("fig1 observations along the displayed chain") {
  auto g = fig1();
  auto p = play_with(g, 4, "aabb", "a◁▷b");
  REQUIRE(p.has_value());
  REQUIRE(observation(g, *p, 1).size() == observation(g, *p, 2).size());
  auto q = play_with(g, 4, "◁▷◁▷", "□□□□");
  REQUIRE(q.has_value());
  auto classes = classify_plays(g, 4);
  auto idx = [&](const Play& x) {
    return static_cast<std::size_t>(std::find(classes.plays.begin(), classes.plays.end(), x) - classes.plays.begin());
  };
  REQUIRE(classes.class_of[idx(*p)] == classes.class_of[idx(*q)]);
  REQUIRE(indistinguishable(g, *p, *p, 1));
  auto r = play_with(g, 4, "a◁▷b");
  REQUIRE(r.has_value());
  // some play observed a◁▷b by player 1 is ∼² to the aabb play
  bool linked = false;
  for (const auto& x : enumerate_plays(g, 4))
    if (format_word(observation(g, x, 1)) == "a◁▷b" && indistinguishable(g, *p, x, 2)) linked = true;
  REQUIRE(linked);
  REQUIRE_FALSE(indistinguishable(g, *p, *play_with(g, 2, "ab"), 1));
}

TEST_CASE("connected classes are the join of both indistinguishability relations") {
  std::mt19937 rng(9);
  std::vector<GameGraph> games{fig1()};
  for (int i = 0; i < 10; ++i) games.push_back(random_game(rng));
  for (const auto& g : games)
    for (std::size_t n = 1; n <= 4; ++n) {
      auto plays = enumerate_plays(g, n);
      // fixpoint of pairwise merging as the oracle
      std::vector<std::size_t> label(plays.size());
      std::iota(label.begin(), label.end(), 0);
      for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < plays.size(); ++i)
          for (std::size_t j = 0; j < plays.size(); ++j)
            if ((indistinguishable(g, plays[i], plays[j], 1) || indistinguishable(g, plays[i], plays[j], 2)) &&
                label[j] > label[i]) {
              label[j] = label[i];
              changed = true;
            }
      }
      auto pc = classify_plays(g, n);
      for (std::size_t i = 0; i < plays.size(); ++i)
        for (std::size_t j = 0; j < plays.size(); ++j)
          REQUIRE((label[i] == label[j]) == (pc.class_of[i] == pc.class_of[j]));
    }
}

TEST_CASE("safe decisions in the fig1 game") {
  auto g = fig1();
  auto forced = safe_decisions(g, *play_with(g, 4, "aabb"));
  REQUIRE(forced.safe == DecisionSet::only(Decision::one));
  REQUIRE(forced.excluded_by[0].has_value());
  auto free = safe_decisions(g, *play_with(g, 5, "aaabb"));
  REQUIRE(free.safe.contains(Decision::zero));
  auto single = safe_decisions(tiny(DecisionSet::both()), Play{{0, 1, 2}});
  REQUIRE(single.safe == DecisionSet::both());
}

TEST_CASE("exclusion chains alternate between the two players") {
  auto g = fig1();
  auto rep = safe_decisions(g, *play_with(g, 4, "aabb"));
  const auto& chain = *rep.excluded_by[0];
  REQUIRE(chain.front() == *play_with(g, 4, "aabb"));
  REQUIRE_FALSE(admissible(g, chain.back()).contains(Decision::zero));
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    REQUIRE((indistinguishable(g, chain[i], chain[i + 1], 1) || indistinguishable(g, chain[i], chain[i + 1], 2)));
}

TEST_CASE("union keeps the plays of both games") {
  std::mt19937 rng(12);
  for (int i = 0; i < 10; ++i) {
    auto a = random_game(rng), b = random_game(rng);
    auto u = union_games(a, b);
    REQUIRE(validate_game(u).empty());
    for (std::size_t n = 0; n <= 4; ++n) {
      std::multiset<std::pair<Word, Word>> expect, got;
      for (const auto* g : {&a, &b})
        for (const auto& p : enumerate_plays(*g, n)) expect.emplace(observation(*g, p, 1), observation(*g, p, 2));
      for (const auto& p : enumerate_plays(u, n)) got.emplace(observation(u, p, 1), observation(u, p, 2));
      REQUIRE(got == expect);
    }
  }
}

TEST_CASE("inverting a game is an involution that swaps forced decisions") {
  auto g = fig1();
  auto inv = invert_game(g);
  REQUIRE(*inv.state(inv.id("B00")).admissible == DecisionSet::only(Decision::zero));
  REQUIRE(*inv.state(inv.id("BB")).admissible == DecisionSet::both());
  auto back = invert_game(inv);
  for (StateId s = 0; s < g.state_count(); ++s) REQUIRE(back.state(s).admissible == g.state(s).admissible);
}

TEST_CASE("the empty-language gadget forces 0") {
  Alphabet ab{"a", "b"};
  auto e = empty_language_game(ab);
  REQUIRE(validate_game(e).empty());
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& p : enumerate_plays(e, n)) REQUIRE(safe_decisions(e, p).safe == DecisionSet::only(Decision::zero));
  REQUIRE_THROWS_AS(empty_language_game(Alphabet{}), Error);
}

TEST_CASE("characterizer rejects observation overlap outside the terminals") {
  auto g = fig1();
  REQUIRE_THROWS_AS(characterizer(g, g, Alphabet{"a", "b"}), Error);
  Alphabet ab{"a", "b"};
  auto c = characterizer(empty_language_game(ab), empty_language_game(ab), ab);
  REQUIRE(validate_game(c).empty());
}

TEST_CASE("strategy verification on the fig1 game") {
  auto g = fig1();
  auto seed = extract_seed(g);
  auto table = strategy_table(seed, 8);
  REQUIRE(verify_strategy(g, table, 8).ok);
  for (const auto& [word, d] : table.entries) {
    bool on_sigma = std::all_of(word.begin(), word.end(), [](const Symbol& s) { return s == "a" || s == "b"; });
    if (on_sigma && !word.empty()) REQUIRE((d == Decision::one) == is_anbn(word));
  }
  StrategyTable zero = table;
  for (auto& [_, d] : zero.entries) d = Decision::zero;
  auto r = verify_strategy(g, zero, 4);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.counterexample.has_value());
  REQUIRE_FALSE(admissible(g, r.counterexample->play).contains(Decision::zero));
  StrategyTable partial;
  REQUIRE_THROWS_AS(verify_strategy(g, partial, 2), Error);
}

TEST_CASE("constant strategies win where every final allows them") {
  auto g = tiny(DecisionSet::both());
  StrategyTable t;
  t.entries[{}] = Decision::one;
  t.entries[{"a"}] = Decision::one;
  REQUIRE(verify_strategy(g, t, 3).ok);
}

TEST_CASE("pruning drops states off every play") {
  auto g = tiny(DecisionSet::both());
  GameGraph h(g.alphabet());
  h.set_initial(h.add_state("v0", "#"));
  StateId x = h.add_state("x", "a"), f = h.add_state("f", "#"), dead = h.add_state("dead", "a");
  h.set_admissible(f, DecisionSet::both());
  h.add_edge(0, x);
  h.add_edge(x, f);
  h.add_edge(0, dead);
  h.add_edge(dead, dead);  // loops forever, never reaches a final state
  REQUIRE_FALSE(validate_game(h).empty());
  auto p = prune_game(h);
  REQUIRE(p.state_count() == 3);
  REQUIRE(validate_game(p).empty());
}
