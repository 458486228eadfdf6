#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cga/cga.hpp"

namespace {

using namespace cga;

enum Exit { kOk = 0, kFalse = 1, kUsage = 2, kCap = 3, kConflict = 4 };

struct Globals {
  std::size_t cap = Limits{}.cap;
  int default_decision = 0;
  std::string format = "text";

  bool machine() const { return format == "machine"; }
  Limits limits() const { return Limits{cap}; }
  ClosureOptions closure() const { return ClosureOptions{limits(), decision_from_int(default_decision)}; }
};

std::string read_stdin() {
  return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
}

DocumentEnvelope load_arg(const std::string& path) {
  if (path.empty() || path == "-") return parse_document(read_stdin());
  return load_document(path);
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_file(path, text);
}

/// A seed is a prefix of .rel/.acc/.rej files, a game, or a flower spec.
Seed resolve_seed(const std::string& arg) {
  auto from_doc = [](const DocumentEnvelope& env) -> Seed {
    if (auto g = std::get_if<GameGraph>(&env.payload)) return extract_seed(*g);
    if (auto f = std::get_if<FlowerSpec>(&env.payload)) return build_flower(*f);
    throw Error(ErrorKind::parse, "a " + env.kind + " document does not describe a seed");
  };
  if (arg.empty() || arg == "-") return from_doc(parse_document(read_stdin()));
  namespace fs = std::filesystem;
  if (fs::is_regular_file(arg)) return from_doc(load_document(arg));
  if (fs::is_regular_file(arg + ".rel")) return load_seed(arg);
  throw Error(ErrorKind::io, "no seed found at '" + arg + "'");
}

std::string play_names(const GameGraph& g, const Play& p) {
  std::string out;
  for (std::size_t i = 0; i < p.states.size(); ++i) out += (i ? " " : "") + g.state(p.states[i]).name;
  return out;
}

std::string chain_text(const std::vector<Word>& chain) {
  std::string out;
  for (std::size_t i = 0; i < chain.size(); ++i) out += (i ? " -> " : "") + format_word(chain[i]);
  return out;
}

std::string join_words(const std::vector<Word>& ws, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < ws.size(); ++i) out += (i ? sep : "") + format_word(ws[i]);
  return out;
}

std::vector<Symbol> split_list(const std::string& s) {
  std::vector<Symbol> out;
  std::stringstream in(s);
  for (std::string t; std::getline(in, t, ',');)
    if (!t.empty()) out.push_back(t);
  return out;
}

int run_validate(const Globals& G, const std::string& path) {
  auto env = load_arg(path);
  std::vector<Violation> v;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        try {
          if constexpr (std::is_same_v<T, GameGraph>) v = validate_game(x);
          else if constexpr (std::is_same_v<T, DominoSystem>) v = validate_domino(x);
          else if constexpr (std::is_same_v<T, FlowerSpec>) require_valid(x);
          else if constexpr (std::is_same_v<T, Grammar>) require_well_formed(x);
        } catch (const Error& e) {
          v.push_back({std::string(to_string(e.kind())), e.what()});
        }
      },
      env.payload);
  for (const auto& x : v) {
    if (G.machine())
      std::cout << "violation=" << x.code << " detail=" << x.detail << "\n";
    else
      std::cout << x.code << ": " << x.detail << "\n";
  }
  if (v.empty()) std::cout << (G.machine() ? "valid=true\n" : "ok\n");
  return v.empty() ? kOk : kFalse;
}

int run_tile(const Globals& G, const std::string& path, const std::string& word, std::optional<std::size_t> h) {
  auto d = expect<DominoSystem>(load_arg(path), "domino");
  Word w = parse_word(Alphabet(d.dominoes), word);
  auto t = corridor_tiling(d, w, h.value_or(w.size() + 2), G.limits());
  if (!t) {
    std::cout << (G.machine() ? "tiling=none\n" : "none\n");
    return kFalse;
  }
  if (G.machine()) {
    std::cout << "height=" << t->height() << "\nwidth=" << t->width << "\n";
    for (std::size_t y = 0; y < t->rows.size(); ++y)
      for (std::size_t x = 0; x < t->rows[y].size(); ++x)
        std::cout << "cell=" << x << "," << y << "," << t->rows[y][x] << "\n";
    return kOk;
  }
  std::vector<std::size_t> width(t->width + 2, 0);
  auto cols = [](const Symbol& s) {
    std::size_t n = 0;
    for (unsigned char c : s) n += (c & 0xC0) != 0x80;
    return n;
  };
  for (const auto& row : t->rows)
    for (std::size_t x = 0; x < row.size(); ++x) width[x] = std::max(width[x], cols(row[x]));
  for (const auto& row : t->rows) {
    std::string line;
    for (std::size_t x = 0; x < row.size(); ++x) {
      if (x) line += ' ';
      line += row[x] + std::string(width[x] - cols(row[x]), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    std::cout << line << "\n";
  }
  return kOk;
}

int run_closure(const Globals& G, const std::string& seed_arg, const std::string& word, const std::string& target) {
  Seed seed = resolve_seed(seed_arg);
  Target t = target == "rej" ? Target::rej : Target::acc;
  auto r = ClosureEngine(seed, G.closure()).membership(t, parse_word(seed.alphabet(), word));
  if (G.machine()) {
    std::cout << "target=" << to_string(t) << "\nmember=" << (r.member ? "true" : "false") << "\n";
    for (std::size_t i = 0; i < r.chain.size(); ++i) std::cout << "chain." << i << "=" << format_word(r.chain[i]) << "\n";
  } else {
    std::cout << "member: " << (r.member ? "true" : "false") << "\n";
    if (r.member) std::cout << "chain: " << chain_text(r.chain) << "\n";
  }
  return r.member ? kOk : kFalse;
}

int run_covered(const Globals& G, const std::string& seed_arg, const std::string& sigma, std::size_t n) {
  Seed seed = resolve_seed(seed_arg);
  Alphabet s(split_list(sigma));
  for (const auto& [len, ws] : ClosureEngine(seed, G.closure()).covered_language_upto(s, n)) {
    if (G.machine())
      std::cout << "length=" << len << " count=" << ws.words.size() << " words=" << join_words(ws.words, ",") << "\n";
    else
      std::cout << len << ":" << (ws.words.empty() ? "" : " ") << join_words(ws.words, " ") << "\n";
  }
  return kOk;
}

int run_solvable(const Globals& G, const std::string& seed_arg, std::size_t n) {
  Seed seed = resolve_seed(seed_arg);
  auto v = ClosureEngine(seed, G.closure()).solvable_upto(n);
  if (v.solvable_up_to) {
    if (G.machine())
      std::cout << "solvable=true\nchecked=" << v.checked_up_to << "\n";
    else
      std::cout << "solvable up to length " << v.checked_up_to << "\n";
    return kOk;
  }
  const auto& c = *v.conflict;
  if (G.machine()) {
    std::cout << "solvable=false\nlength=" << v.checked_up_to << "\nword=" << format_word(c.word) << "\n";
    for (std::size_t i = 0; i < c.chain_acc.size(); ++i) std::cout << "acc." << i << "=" << format_word(c.chain_acc[i]) << "\n";
    for (std::size_t i = 0; i < c.chain_rej.size(); ++i) std::cout << "rej." << i << "=" << format_word(c.chain_rej[i]) << "\n";
  } else {
    std::cout << "unsolvable at length " << v.checked_up_to << ", word " << format_word(c.word) << "\n";
    std::cout << "acc chain: " << chain_text(c.chain_acc) << "\n";
    std::cout << "rej chain: " << chain_text(c.chain_rej) << "\n";
  }
  return kConflict;
}

int run_decide(const Globals& G, const std::string& seed_arg, const std::string& word) {
  Seed seed = resolve_seed(seed_arg);
  Decision d = ClosureEngine(seed, G.closure()).optimal_decision(parse_word(seed.alphabet(), word));
  std::cout << (G.machine() ? "decision=" : "") << value(d) << "\n";
  return kOk;
}

int run_verify(const Globals& G, const std::string& game, const std::string& table, std::size_t n) {
  auto g = expect<GameGraph>(load_arg(game), "game");
  auto t = expect<StrategyTable>(load_document(table), "strategy-table");
  auto r = verify_strategy(g, t, n, G.limits());
  if (r.ok) {
    std::cout << (G.machine() ? "ok=true\n" : "ok\n");
    return kOk;
  }
  const auto& c = *r.counterexample;
  if (G.machine()) {
    std::cout << "ok=false\nreason=" << c.reason << "\nplay=" << play_names(g, c.play) << "\n";
    if (c.partner) std::cout << "partner=" << play_names(g, *c.partner) << "\n";
  } else {
    std::cout << "counterexample: " << c.reason << "\n  play: " << play_names(g, c.play) << "\n";
    if (c.partner) std::cout << "  partner: " << play_names(g, *c.partner) << "\n";
  }
  return kFalse;
}

int run_cfg_member(const Globals& G, const std::string& path, const std::string& word) {
  auto g = expect<Grammar>(load_arg(path), "grammar");
  bool m = cyk_membership(g, parse_word(g.terminals, word));
  std::cout << (G.machine() ? "member=" : "") << (m ? "true" : "false") << "\n";
  return m ? kOk : kFalse;
}

int exit_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::cap_exceeded: return kCap;
    case ErrorKind::conflict:
    case ErrorKind::unsolvable_seed: return kConflict;
    default: return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Globals G;
  CLI::App app{"Covering games: seeds, closures, dominoes and flowers"};
  app.require_subcommand(1);
  app.add_option("--cap", G.cap, "Enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--default-decision", G.default_decision, "Decision outside both closures")->check(CLI::IsMember({0, 1}));
  app.add_option("--format", G.format, "Output format")->check(CLI::IsMember({"text", "machine"}));

  std::string in1, in2, in3, out, word, sigma, target = "acc", neutrals;
  std::size_t max_len = 0, pairs = 1;
  std::optional<std::size_t> height;
  bool no_prune = false;
  int code = kOk;

  auto* validate = app.add_subcommand("validate", "Report invariant violations of a document");
  validate->add_option("file", in1, "Document (stdin when omitted)");

  auto* extract = app.add_subcommand("extract-seed", "Seed (.rel/.acc/.rej) of a game");
  extract->add_option("game", in1, "Game document");
  extract->add_option("-o,--output", out, "Seed prefix")->required();

  auto* synth = app.add_subcommand("synthesize", "Game from a transducer and two automata");
  synth->add_option("transducer", in1)->required();
  synth->add_option("acc", in2)->required();
  synth->add_option("rej", in3)->required();
  synth->add_option("-o,--output", out);

  auto* compile = app.add_subcommand("compile-domino", "Covering game of a domino system");
  compile->add_option("domino", in1);
  compile->add_option("-o,--output", out);
  compile->add_flag("--no-prune", no_prune, "Keep unreachable and dead states");

  auto* tile = app.add_subcommand("tile", "Shortest corridor tiling under a word");
  tile->add_option("domino", in1)->required();
  tile->add_option("word", word)->required();
  tile->add_option("--max-height", height, "Maximum number of rows (default |w|+2)");

  auto* closure = app.add_subcommand("closure", "Closure membership with a witness chain");
  closure->add_option("seed", in1);
  closure->add_option("--word", word)->required();
  closure->add_option("--target", target)->check(CLI::IsMember({"acc", "rej"}));

  auto* covered = app.add_subcommand("covered", "Covered language per length");
  covered->add_option("seed", in1);
  covered->add_option("--sigma", sigma)->required();
  covered->add_option("--max-len", max_len)->required();

  auto* solvable = app.add_subcommand("solvable", "Check that the closures stay disjoint");
  solvable->add_option("seed", in1);
  solvable->add_option("--max-len", max_len)->required();

  auto* decide = app.add_subcommand("decide", "Optimal decision for one word");
  decide->add_option("seed", in1);
  decide->add_option("--word", word)->required();

  auto* strategy = app.add_subcommand("strategy", "Strategy table up to a length");
  strategy->add_option("seed", in1);
  strategy->add_option("--max-len", max_len)->required();
  strategy->add_option("-o,--output", out);

  auto* verify = app.add_subcommand("verify", "Check a strategy table against a game");
  verify->add_option("game", in1)->required();
  verify->add_option("table", in2)->required();
  verify->add_option("--max-len", max_len)->required();

  auto* dyck = app.add_subcommand("build-dyck", "Seed of the Dyck reduction transducer");
  dyck->add_option("--pairs", pairs)->check(CLI::PositiveNumber);
  dyck->add_option("--neutrals", neutrals, "Comma-separated neutral letters");
  dyck->add_option("-o,--output", out)->required();

  auto* flower = app.add_subcommand("build-flower", "Seed of a flower spec");
  flower->add_option("flower", in1);
  flower->add_option("-o,--output", out)->required();

  auto* cfg = app.add_subcommand("flower-cfg", "Grammar for the language of a flower");
  cfg->add_option("flower", in1);
  cfg->add_option("-o,--output", out);

  auto* member = app.add_subcommand("cfg-member", "CYK membership");
  member->add_option("grammar", in1)->required();
  member->add_option("--word", word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) code = run_validate(G, in1);
    else if (*extract) save_seed(out, extract_seed(expect<GameGraph>(load_arg(in1), "game")));
    else if (*synth) {
      auto r = expect<SynchronousTransducer>(load_document(in1), "transducer");
      auto a = expect<WordAutomaton>(load_document(in2), "automaton");
      auto b = expect<WordAutomaton>(load_document(in3), "automaton");
      emit(out, render_document(synthesize_game(make_seed(r, a, b))));
    } else if (*compile)
      emit(out, render_document(compile_domino_game(expect<DominoSystem>(load_arg(in1), "domino"), !no_prune)));
    else if (*tile) code = run_tile(G, in1, word, height);
    else if (*closure) code = run_closure(G, in1, word, target);
    else if (*covered) code = run_covered(G, in1, sigma, max_len);
    else if (*solvable) code = run_solvable(G, in1, max_len);
    else if (*decide) code = run_decide(G, in1, word);
    else if (*strategy)
      emit(out, render_document(ClosureEngine(resolve_seed(in1), G.closure()).strategy_table(max_len)));
    else if (*verify) code = run_verify(G, in1, in2, max_len);
    else if (*dyck) save_seed(out, dyck_seed(make_dyck_spec(pairs, split_list(neutrals))));
    else if (*flower) save_seed(out, build_flower(expect<FlowerSpec>(load_arg(in1), "flower")));
    else if (*cfg) emit(out, render_document(flower_cfg(expect<FlowerSpec>(load_arg(in1), "flower"))));
    else if (*member) code = run_cfg_member(G, in1, word);
  } catch (const Error& e) {
    if (G.machine())
      std::cout << "error=" << to_string(e.kind()) << " message=" << std::string(e.what()).substr(to_string(e.kind()).size() + 2) << "\n";
    else
      std::cerr << "error: " << e.what() << "\n";
    return exit_for(e.kind());
  }
  return code;
}
