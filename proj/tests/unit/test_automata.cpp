#include <catch_amalgamated.hpp>

#include <random>

#include "../support.hpp"

using namespace cga;
using namespace cga::test;

namespace {

WordAutomaton ends_with_ab() {
  WordAutomaton m(small_alphabet(2));
  StateId s0 = m.add_state(), s1 = m.add_state(), s2 = m.add_state();
  m.set_initial(s0);
  m.set_final(s2);
  for (const char* x : {"a", "b"}) m.add_transition(s0, x, s0);
  m.add_transition(s0, "a", s1);
  m.add_transition(s1, "b", s2);
  return m;
}

}  // namespace

TEST_CASE("nfa acceptance matches a direct definition") {
  auto m = ends_with_ab();
  for (std::size_t n = 0; n <= 6; ++n)
    for (const auto& x : brute_words(m.alphabet(), n)) {
      bool expect = n >= 2 && x[n - 2] == "a" && x[n - 1] == "b";
      REQUIRE(nfa_accepts(m, x) == expect);
    }
}

TEST_CASE("words_of_length agrees with run search on random automata") {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto a = small_alphabet(2 + i % 2);
    auto m = random_automaton(rng, a, 1 + i % 4);
    for (std::size_t n = 0; n <= 5; ++n) {
      std::set<Word> got;
      for (const auto& x : words_of_length(m, n)) got.insert(a.decode(x));
      REQUIRE(got == brute_language(m, n));
    }
  }
}

TEST_CASE("boolean operations on random automata") {
  std::mt19937 rng(6);
  for (int i = 0; i < 30; ++i) {
    auto a = small_alphabet(2);
    auto m1 = random_automaton(rng, a, 3), m2 = random_automaton(rng, a, 3);
    auto both = intersect(m1, m2), either = unite(m1, m2), det = determinize(m1), comp = complement(m1);
    REQUIRE(det.deterministic());
    for (std::size_t n = 0; n <= 5; ++n)
      for (const auto& x : brute_words(a, n)) {
        bool p = sim_accepts(m1, x), q = sim_accepts(m2, x);
        REQUIRE(nfa_accepts(both, x) == (p && q));
        REQUIRE(nfa_accepts(either, x) == (p || q));
        REQUIRE(nfa_accepts(det, x) == p);
        REQUIRE(nfa_accepts(comp, x) == !p);
      }
    bool empty = true;
    for (std::size_t n = 0; n <= 6 && empty; ++n) empty = brute_language(both, n).empty();
    if (!empty) REQUIRE_FALSE(is_empty(both));
    if (is_empty(both))
      for (std::size_t n = 0; n <= 6; ++n) REQUIRE(brute_language(both, n).empty());
  }
}

TEST_CASE("star, universal, empty and finite languages") {
  Alphabet a{"a", "b", "□"};
  auto star = star_automaton(a, {"□"});
  REQUIRE(nfa_accepts(star, {}));
  REQUIRE(nfa_accepts(star, {"□", "□"}));
  REQUIRE_FALSE(nfa_accepts(star, {"□", "a"}));
  REQUIRE(nfa_accepts(universal_automaton(a), {"a", "□"}));
  REQUIRE(is_empty(empty_automaton(a)));
  auto fin = finite_language(a, {{"a", "b"}, {"b"}});
  REQUIRE(brute_language(fin, 2) == std::set<Word>{{"a", "b"}});
  REQUIRE(brute_language(fin, 1) == std::set<Word>{{"b"}});
  REQUIRE(brute_language(fin, 3).empty());
}

TEST_CASE("live letters ignore dead branches") {
  WordAutomaton m(Alphabet{"a", "b", "c"});
  StateId s0 = m.add_state(), s1 = m.add_state(), dead = m.add_state();
  m.set_initial(s0);
  m.set_final(s1);
  m.add_transition(s0, "a", s1);
  m.add_transition(s0, "c", dead);
  auto live = live_letters(m);
  REQUIRE(live == std::vector<Letter>{0});
}

TEST_CASE("lifting and relabelling preserve the language") {
  auto m = ends_with_ab();
  Alphabet big{"a", "b", "z"};
  auto l = lift(m, big);
  REQUIRE(l.alphabet() == big);
  for (std::size_t n = 0; n <= 4; ++n) REQUIRE(brute_language(l, n) == brute_language(m, n));
  REQUIRE_THROWS_AS(lift(m, Alphabet{"a"}), Error);
  REQUIRE_THROWS_AS(intersect(m, l), Error);
}
