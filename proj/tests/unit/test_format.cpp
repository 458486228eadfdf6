#include <catch_amalgamated.hpp>

#include <cstdio>
#include <random>

#include "../support.hpp"

using namespace cga;
using namespace cga::test;

namespace {

std::string parse_error(const std::string& text) {
  try {
    parse_document(text);
  } catch (const Error& e) {
    REQUIRE(e.kind() == ErrorKind::parse);
    return e.what();
  }
  return "";
}

bool mentions(const std::string& msg, const std::string& part) { return msg.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("corpus files render back byte for byte") {
  for (const char* name : {"fig1.game", "fig2a.domino", "anbn.flower", "fig3a.flower", "flip.rel", "flip.acc", "flip.rej"}) {
    INFO(name);
    std::string text = read_file(corpus(name));
    REQUIRE(render_document(parse_document(text)) == text);
  }
}

TEST_CASE("rendered documents parse back to equal payloads") {
  auto g = fig2a_game();
  auto g2 = expect<GameGraph>(parse_document(render_document(g)), "game");
  REQUIRE(render_document(g2) == render_document(g));
  REQUIRE(g2.state_count() == g.state_count());

  auto s = fig2a_seed();
  for (const auto& doc : {render_document(s.relation), render_document(s.acc), render_document(s.rej)})
    REQUIRE(render_document(parse_document(doc)) == doc);

  auto table = strategy_table(extract_seed(expect<GameGraph>(load_document(corpus("fig1.game")), "game")), 3);
  auto t2 = expect<StrategyTable>(parse_document(render_document(table)), "strategy-table");
  REQUIRE(t2 == table);
  REQUIRE_FALSE(t2.entries.empty());
  for (const auto& [x, d] : table.entries) REQUIRE(t2.lookup(x) == d);

  auto cfg = flower_cfg(corpus_flower("anbn.flower"));
  auto c2 = expect<Grammar>(parse_document(render_document(cfg)), "grammar");
  REQUIRE(c2.productions == cfg.productions);
  REQUIRE(c2.start == cfg.start);
  REQUIRE(c2.terminals == cfg.terminals);
}

TEST_CASE("random transducers and automata survive a round trip") {
  std::mt19937 rng(5);
  for (int i = 0; i < 25; ++i) {
    auto a = small_alphabet(3);
    auto r = random_transducer(rng, a, 4);
    auto r2 = expect<SynchronousTransducer>(parse_document(render_document(r)), "transducer");
    for (std::size_t n = 0; n <= 3; ++n) REQUIRE(brute_pairs(r2, n) == brute_pairs(r, n));
    auto m = random_automaton(rng, a, 4);
    auto m2 = expect<WordAutomaton>(parse_document(render_document(m)), "automaton");
    for (std::size_t n = 0; n <= 4; ++n) REQUIRE(brute_language(m2, n) == brute_language(m, n));
  }
}

TEST_CASE("parse errors name the offending line") {
  std::string base = "kind: game\nversion: 1\nalphabet: # a\ninitial: v0\n[states]\nv0 #\n";
  REQUIRE(parse_document(base).kind == "game");

  auto msg = parse_error(base + "x b\n");
  REQUIRE(mentions(msg, "line 7"));

  msg = parse_error("kind: game\nversion: 1\nalphabet: # a a\ninitial: v0\n[states]\nv0 #\n");
  REQUIRE(mentions(msg, "line 3"));

  msg = parse_error(base + "[edges]\nv0 nowhere\n");
  REQUIRE(mentions(msg, "line 8"));

  msg = parse_error(base + "[admissible]\nv0 2\n");
  REQUIRE(mentions(msg, "line 8"));
}

TEST_CASE("envelope problems are rejected") {
  REQUIRE(mentions(parse_error("kind: teapot\nversion: 1\n"), "unknown kind"));
  REQUIRE(mentions(parse_error("kind: game\nversion: 7\nalphabet: #\ninitial: v0\n"), "version"));
  REQUIRE(mentions(parse_error("version: 1\n"), "kind"));
  REQUIRE(mentions(parse_error("kind: game\nversion: 1\nalphabet: # a\ninitial: v0\ncolour: red\n[states]\nv0 #\n"),
                   "colour"));
  REQUIRE(mentions(parse_error("kind: game\nversion: 1\nalphabet: # a\ninitial: v0\n[states]\nv0 #\n[extras]\nq\n"),
                   "extras"));
}

TEST_CASE("documents of the wrong kind are refused by expect") {
  auto env = load_document(corpus("fig1.game"));
  REQUIRE_THROWS_AS(expect<DominoSystem>(env, "domino"), Error);
  REQUIRE_NOTHROW(expect<GameGraph>(env, "game"));
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = "; a comment\nkind: automaton\nversion: 1\n\nalphabet: a b\ninitial: s\nfinals: s\n"
                     "[transitions]\n; loop\ns a s\n";
  auto m = expect<WordAutomaton>(parse_document(text), "automaton");
  REQUIRE(sim_accepts(m, Word{"a", "a"}));
  REQUIRE_FALSE(sim_accepts(m, Word{"b"}));
}

TEST_CASE("strategy tables reject malformed entries") {
  std::string head = "kind: strategy-table\nversion: 1\nmaxlen: 1\nalphabet: a\n[entries]\n";
  REQUIRE(expect<StrategyTable>(parse_document(head + "0 ε\n1 a\n"), "strategy-table").entries.size() == 2);
  REQUIRE(mentions(parse_error(head + "2 a\n"), "line 6"));
  REQUIRE(mentions(parse_error(head + "0 a a\n"), "line 6"));
  REQUIRE(mentions(parse_error(head + "0 a\n1 a\n"), "line 7"));
  REQUIRE(mentions(parse_error(head + "0 z\n"), "line 6"));
}

TEST_CASE("seeds round trip through files") {
  auto s = fig2a_seed();
  std::string prefix = "format_seed_tmp";
  save_seed(prefix, s);
  auto back = load_seed(prefix);
  REQUIRE(render_document(back.relation) == render_document(s.relation));
  REQUIRE(render_document(back.acc) == render_document(s.acc));
  REQUIRE(render_document(back.rej) == render_document(s.rej));
  for (const char* ext : {".rel", ".acc", ".rej"}) std::remove((prefix + ext).c_str());
  REQUIRE_THROWS_AS(load_seed("no/such/prefix"), Error);
}
