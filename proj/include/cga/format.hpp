#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "cga/automaton.hpp"
#include "cga/domino.hpp"
#include "cga/error.hpp"
#include "cga/flower.hpp"
#include "cga/game.hpp"
#include "cga/grammar.hpp"
#include "cga/seed.hpp"
#include "cga/transducer.hpp"

namespace cga {

// Line-oriented documents:
//
//   kind: game
//   version: 1
//   key: token token ...
//   [section]
//   token token ...
//
// Lines starting with ';' are comments. Headers precede all sections.

using Payload = std::variant<GameGraph, SynchronousTransducer, WordAutomaton, DominoSystem, FlowerSpec, StrategyTable,
                             Grammar>;

struct DocumentEnvelope {
  std::string kind;
  int version = 1;
  Payload payload;
};

inline constexpr int kFormatVersion = 1;

namespace fmt {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

struct Raw {
  std::map<std::string, Line> headers;
  std::map<std::string, std::vector<Line>> sections;
  std::map<std::string, std::size_t> section_lines;
};

[[noreturn]] inline void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool is_section(const std::vector<std::string>& t) {
  if (t.size() != 1 || t[0].size() < 3 || t[0].front() != '[' || t[0].back() != ']') return false;
  return std::all_of(t[0].begin() + 1, t[0].end() - 1, [](char c) { return (c >= 'a' && c <= 'z') || c == '-'; });
}

inline Raw read_raw(const std::string& text) {
  Raw raw;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  std::string section;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto tokens = split(line);
    if (tokens.empty() || tokens[0][0] == ';') continue;
    if (is_section(tokens)) {
      section = tokens[0].substr(1, tokens[0].size() - 2);
      if (raw.sections.count(section)) fail(number, "section [" + section + "] repeated");
      raw.sections[section];
      raw.section_lines[section] = number;
      continue;
    }
    if (section.empty()) {
      const auto& key = tokens[0];
      if (key.size() < 2 || key.back() != ':') fail(number, "expected 'key: value' before the first section");
      auto name = key.substr(0, key.size() - 1);
      if (raw.headers.count(name)) fail(number, "header '" + name + "' repeated");
      raw.headers[name] = Line{number, {tokens.begin() + 1, tokens.end()}};
      continue;
    }
    raw.sections[section].push_back(Line{number, tokens});
  }
  return raw;
}

class Reader {
 public:
  explicit Reader(Raw raw) : raw_(std::move(raw)) {}

  const Line& header(const std::string& key) const {
    auto it = raw_.headers.find(key);
    if (it == raw_.headers.end()) fail(0, "missing header '" + key + "'");
    used_.push_back(key);
    return it->second;
  }
  bool has_header(const std::string& key) const { return raw_.headers.count(key) != 0; }
  std::vector<std::string> list(const std::string& key) const { return header(key).tokens; }
  std::vector<std::string> optional_list(const std::string& key) const {
    return has_header(key) ? list(key) : std::vector<std::string>{};
  }
  std::string single(const std::string& key) const {
    const auto& l = header(key);
    if (l.tokens.size() != 1) fail(l.number, "header '" + key + "' takes exactly one value");
    return l.tokens[0];
  }
  const std::vector<Line>& section(const std::string& name, std::size_t arity_min, std::size_t arity_max) const {
    static const std::vector<Line> none;
    used_sections_.push_back(name);
    auto it = raw_.sections.find(name);
    if (it == raw_.sections.end()) return none;
    for (const auto& l : it->second)
      if (l.tokens.size() < arity_min || l.tokens.size() > arity_max)
        fail(l.number, "wrong number of fields in [" + name + "]");
    return it->second;
  }

  Alphabet alphabet(const std::string& key) const {
    const auto& l = header(key);
    try {
      return Alphabet(l.tokens);
    } catch (const Error& e) {
      fail(l.number, e.what());
    }
  }

  void finish() const {
    for (const auto& [k, l] : raw_.headers)
      if (k != "kind" && k != "version" && std::find(used_.begin(), used_.end(), k) == used_.end())
        fail(l.number, "unknown header '" + k + "'");
    for (const auto& [k, _] : raw_.sections)
      if (std::find(used_sections_.begin(), used_sections_.end(), k) == used_sections_.end())
        fail(raw_.section_lines.at(k), "unknown section [" + k + "]");
  }

 private:
  Raw raw_;
  mutable std::vector<std::string> used_;
  mutable std::vector<std::string> used_sections_;
};

/// Wraps library errors raised while building from a record with its line.
template <class F>
void at_line(std::size_t line, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::parse) fail(line, e.what());
    const std::string msg = std::string(e.what()).substr(std::string(to_string(e.kind())).size() + 2);
    if (msg.rfind("line ", 0) == 0) throw;  // already located
    fail(line, msg);
  }
}

inline std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + v[i];
  return out;
}

inline void header_line(std::string& out, const std::string& key, const std::vector<std::string>& values) {
  out += key + ":";
  if (!values.empty()) out += " " + join(values);
  out += "\n";
}

inline void section(std::string& out, const std::string& name, std::vector<std::vector<std::string>> records,
                    bool sort = true) {
  if (sort) std::sort(records.begin(), records.end());
  out += "[" + name + "]\n";
  for (const auto& r : records) out += join(r) + "\n";
}

inline std::string head(const std::string& kind) {
  return "kind: " + kind + "\nversion: " + std::to_string(kFormatVersion) + "\n";
}

template <class Machine>
std::map<std::string, StateId> declare_states(Machine& m, const Reader& r, const std::vector<std::string>& extra) {
  std::map<std::string, StateId> ids;
  auto declare = [&](const std::string& n) {
    if (!ids.count(n)) ids.emplace(n, m.add_state(n));
  };
  for (const auto& n : r.optional_list("states")) declare(n);
  for (const auto& n : extra) declare(n);
  return ids;
}

// ---- per kind -------------------------------------------------------------

inline GameGraph read_game(const Reader& r) {
  GameGraph g(r.alphabet("alphabet"));
  for (const auto& l : r.section("states", 2, 3))
    at_line(l.number, [&] { g.add_state(l.tokens[0], l.tokens[1], l.tokens.size() == 3 ? l.tokens[2] : l.tokens[1]); });
  const auto& init = r.header("initial");
  at_line(init.number, [&] {
    if (init.tokens.size() != 1) throw Error(ErrorKind::parse, "initial takes one state");
    g.set_initial(init.tokens[0]);
  });
  for (const auto& l : r.section("edges", 2, 2)) at_line(l.number, [&] { g.add_edge(l.tokens[0], l.tokens[1]); });
  for (const auto& l : r.section("admissible", 2, 3))
    at_line(l.number, [&] {
      DecisionSet d;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        if (l.tokens[i] != "0" && l.tokens[i] != "1") throw Error(ErrorKind::parse, "decisions are 0 or 1");
        d = d | DecisionSet::only(decision_from_int(l.tokens[i] == "1"));
      }
      g.set_admissible(l.tokens[0], d);
    });
  return g;
}

inline std::string render_game(const GameGraph& g) {
  std::string out = head("game");
  header_line(out, "alphabet", g.alphabet().symbols());
  header_line(out, "initial", {g.state(g.initial()).name});
  std::vector<std::vector<std::string>> states, edges, adm;
  for (StateId s = 0; s < g.state_count(); ++s) {
    const auto& st = g.state(s);
    states.push_back({st.name, g.obs(s, 1), g.obs(s, 2)});
    for (StateId t : g.successors(s)) edges.push_back({st.name, g.state(t).name});
    if (st.admissible) {
      std::vector<std::string> rec{st.name};
      if (st.admissible->contains(Decision::zero)) rec.push_back("0");
      if (st.admissible->contains(Decision::one)) rec.push_back("1");
      adm.push_back(rec);
    }
  }
  section(out, "states", states);
  section(out, "edges", edges);
  section(out, "admissible", adm);
  return out;
}

inline SynchronousTransducer read_transducer(const Reader& r) {
  SynchronousTransducer t(r.alphabet("alphabet"));
  const auto& tr = r.section("transitions", 4, 4);
  std::vector<std::string> seen{r.single("initial")};
  for (const auto& f : r.list("finals")) seen.push_back(f);
  for (const auto& l : tr) {
    seen.push_back(l.tokens[0]);
    seen.push_back(l.tokens[3]);
  }
  auto ids = declare_states(t, r, seen);
  t.set_initial(ids.at(r.single("initial")));
  for (const auto& f : r.list("finals")) t.set_final(ids.at(f));
  for (const auto& l : tr)
    at_line(l.number, [&] { t.add_transition(ids.at(l.tokens[0]), l.tokens[1], l.tokens[2], ids.at(l.tokens[3])); });
  return t;
}

template <class Machine>
std::vector<std::string> state_names(const Machine& m) {
  std::vector<std::string> v;
  for (StateId s = 0; s < m.state_count(); ++s) v.push_back(m.name(s));
  std::sort(v.begin(), v.end());
  return v;
}

template <class Machine>
std::vector<std::string> final_names(const Machine& m) {
  std::vector<std::string> v;
  for (StateId s = 0; s < m.state_count(); ++s)
    if (m.is_final(s)) v.push_back(m.name(s));
  std::sort(v.begin(), v.end());
  return v;
}

template <class Machine>
void require_unique_names(const Machine& m) {
  auto v = state_names(m);
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw Error(ErrorKind::invalid_argument, "state names must be unique to be written");
}

inline std::string render_transducer(const SynchronousTransducer& t) {
  require_unique_names(t);
  std::string out = head("transducer");
  header_line(out, "alphabet", t.alphabet().symbols());
  header_line(out, "states", state_names(t));
  header_line(out, "initial", {t.state_count() ? t.name(t.initial()) : ""});
  header_line(out, "finals", final_names(t));
  std::vector<std::vector<std::string>> tr;
  for (StateId s = 0; s < t.state_count(); ++s)
    for (const auto& e : t.edges(s))
      tr.push_back({t.name(s), t.alphabet().at(e.in), t.alphabet().at(e.out), t.name(e.to)});
  section(out, "transitions", tr);
  return out;
}

inline WordAutomaton read_automaton(const Reader& r, const std::string& prefix = "") {
  WordAutomaton a(r.alphabet(prefix.empty() ? "alphabet" : prefix + "alphabet"));
  const auto& tr = r.section(prefix + "transitions", 3, 3);
  std::vector<std::string> seen{r.single(prefix + "initial")};
  for (const auto& f : r.list(prefix + "finals")) seen.push_back(f);
  for (const auto& l : tr) {
    seen.push_back(l.tokens[0]);
    seen.push_back(l.tokens[2]);
  }
  std::map<std::string, StateId> ids;
  for (const auto& n : r.optional_list(prefix + "states"))
    if (!ids.count(n)) ids.emplace(n, a.add_state(n));
  for (const auto& n : seen)
    if (!ids.count(n)) ids.emplace(n, a.add_state(n));
  a.set_initial(ids.at(r.single(prefix + "initial")));
  for (const auto& f : r.list(prefix + "finals")) a.set_final(ids.at(f));
  for (const auto& l : tr) at_line(l.number, [&] { a.add_transition(ids.at(l.tokens[0]), l.tokens[1], ids.at(l.tokens[2])); });
  return a;
}

inline void automaton_body(std::string& out, const WordAutomaton& a, const std::string& prefix, bool with_alphabet) {
  require_unique_names(a);
  if (with_alphabet) header_line(out, prefix + "alphabet", a.alphabet().symbols());
  header_line(out, prefix + "states", state_names(a));
  header_line(out, prefix + "initial", {a.name(a.initial())});
  header_line(out, prefix + "finals", final_names(a));
}

inline std::vector<std::vector<std::string>> automaton_records(const WordAutomaton& a) {
  std::vector<std::vector<std::string>> tr;
  for (StateId s = 0; s < a.state_count(); ++s)
    for (const auto& e : a.edges(s)) tr.push_back({a.name(s), a.alphabet().at(e.letter), a.name(e.to)});
  return tr;
}

inline std::string render_automaton(const WordAutomaton& a) {
  std::string out = head("automaton");
  automaton_body(out, a, "", true);
  section(out, "transitions", automaton_records(a));
  return out;
}

inline DominoSystem read_domino(const Reader& r) {
  DominoSystem d;
  const auto& l = r.header("dominoes");
  at_line(l.number, [&] { Alphabet check(l.tokens); });
  d.dominoes = l.tokens;
  std::sort(d.dominoes.begin(), d.dominoes.end());
  d.side = r.single("side");
  d.bottom = r.single("bottom");
  for (const auto& rec : r.section("horizontal", 2, 2)) d.horizontal.emplace(rec.tokens[0], rec.tokens[1]);
  for (const auto& rec : r.section("vertical", 2, 2)) d.vertical.emplace(rec.tokens[0], rec.tokens[1]);
  return d;
}

inline std::string render_domino(const DominoSystem& d) {
  std::string out = head("domino");
  auto dom = d.dominoes;
  std::sort(dom.begin(), dom.end());
  header_line(out, "dominoes", dom);
  header_line(out, "side", {d.side});
  header_line(out, "bottom", {d.bottom});
  std::vector<std::vector<std::string>> h, v;
  for (const auto& [a, b] : d.horizontal) h.push_back({a, b});
  for (const auto& [a, b] : d.vertical) v.push_back({a, b});
  section(out, "horizontal", h);
  section(out, "vertical", v);
  return out;
}

inline FlowerSpec read_flower(const Reader& r) {
  FlowerSpec fs;
  const auto& open = r.header("open");
  const auto close = r.list("close");
  if (open.tokens.size() != close.size()) fail(open.number, "open and close lists differ in length");
  for (std::size_t i = 0; i < close.size(); ++i) fs.dyck.brackets.emplace_back(open.tokens[i], close[i]);
  fs.dyck.neutrals = r.optional_list("neutrals");
  std::sort(fs.dyck.neutrals.begin(), fs.dyck.neutrals.end());
  at_line(open.number, [&] { require_valid(fs.dyck); });
  fs.sigma = r.alphabet("sigma");
  std::map<Symbol, Symbol> h;
  for (const auto& l : r.section("hom", 2, 2))
    if (!h.emplace(l.tokens[0], l.tokens[1]).second) fail(l.number, "homomorphism defined twice on '" + l.tokens[0] + "'");
  at_line(open.number, [&] { fs.h = Homomorphism(fs.dyck.lambda(), fs.sigma, h); });
  const auto primed = fs.dyck.neutral_copy();
  WordAutomaton m(primed);
  const auto& tr = r.section("m-transitions", 3, 3);
  std::map<std::string, StateId> ids;
  auto declare = [&](const std::string& n) {
    if (!ids.count(n)) ids.emplace(n, m.add_state(n));
  };
  for (const auto& n : r.optional_list("m-states")) declare(n);
  declare(r.single("m-initial"));
  for (const auto& f : r.list("m-finals")) declare(f);
  for (const auto& l : tr) {
    declare(l.tokens[0]);
    declare(l.tokens[2]);
  }
  m.set_initial(ids.at(r.single("m-initial")));
  for (const auto& f : r.list("m-finals")) m.set_final(ids.at(f));
  for (const auto& l : tr) at_line(l.number, [&] { m.add_transition(ids.at(l.tokens[0]), l.tokens[1], ids.at(l.tokens[2])); });
  fs.m = std::move(m);
  at_line(open.number, [&] { require_valid(fs); });
  return fs;
}

inline std::string render_flower(const FlowerSpec& fs) {
  std::string out = head("flower");
  std::vector<std::string> open, close;
  for (const auto& [o, c] : fs.dyck.brackets) {
    open.push_back(o);
    close.push_back(c);
  }
  auto neutrals = fs.dyck.neutrals;
  std::sort(neutrals.begin(), neutrals.end());
  header_line(out, "open", open);
  header_line(out, "close", close);
  header_line(out, "neutrals", neutrals);
  header_line(out, "sigma", fs.sigma.symbols());
  automaton_body(out, fs.m, "m-", false);
  std::vector<std::vector<std::string>> hom;
  for (const auto& [a, b] : fs.h.as_map()) hom.push_back({a, b});
  section(out, "hom", hom);
  section(out, "m-transitions", automaton_records(fs.m));
  return out;
}

inline StrategyTable read_strategy(const Reader& r) {
  StrategyTable t;
  const auto& ml = r.header("maxlen");
  at_line(ml.number, [&] {
    if (ml.tokens.size() != 1) throw Error(ErrorKind::parse, "maxlen takes one value");
    t.maxlen = std::stoul(ml.tokens[0]);
  });
  Alphabet sigma = r.alphabet("alphabet");
  for (const auto& l : r.section("entries", 2, static_cast<std::size_t>(-1)))
    at_line(l.number, [&] {
      if (l.tokens[0] != "0" && l.tokens[0] != "1") throw Error(ErrorKind::parse, "decision must be 0 or 1");
      Word w;
      if (!(l.tokens.size() == 2 && l.tokens[1] == kEpsilon))
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
          if (!sigma.contains(l.tokens[i])) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + l.tokens[i] + "'");
          w.push_back(l.tokens[i]);
        }
      if (w.size() > t.maxlen) throw Error(ErrorKind::parse, "entry longer than maxlen");
      if (!t.entries.emplace(w, decision_from_int(l.tokens[0] == "1")).second)
        throw Error(ErrorKind::parse, "entry repeated");
    });
  return t;
}

inline std::string render_strategy(const StrategyTable& t) {
  std::string out = head("strategy-table");
  header_line(out, "maxlen", {std::to_string(t.maxlen)});
  std::set<Symbol> symbols;
  for (const auto& [w, _] : t.entries) symbols.insert(w.begin(), w.end());
  header_line(out, "alphabet", {symbols.begin(), symbols.end()});
  std::vector<std::vector<std::string>> rec;
  for (const auto& [w, d] : t.entries) {
    std::vector<std::string> r{std::to_string(value(d))};
    if (w.empty()) r.push_back(kEpsilon);
    r.insert(r.end(), w.begin(), w.end());
    rec.push_back(r);
  }
  section(out, "entries", rec, false);
  return out;
}

inline Grammar read_grammar(const Reader& r) {
  Grammar g;
  g.terminals = r.alphabet("terminals");
  g.start = r.single("start");
  g.nonterminals.insert(g.start);
  for (const auto& l : r.section("productions", 2, 3)) {
    g.nonterminals.insert(l.tokens[0]);
    for (std::size_t i = 1; i < l.tokens.size(); ++i)
      if (!g.terminals.contains(l.tokens[i])) g.nonterminals.insert(l.tokens[i]);
    g.productions.insert(Production{l.tokens[0], {l.tokens.begin() + 1, l.tokens.end()}});
  }
  require_well_formed(g);
  return g;
}

inline std::string render_grammar(const Grammar& g) {
  std::string out = head("grammar");
  header_line(out, "terminals", g.terminals.symbols());
  header_line(out, "start", {g.start});
  std::vector<std::vector<std::string>> rec;
  for (const auto& p : g.productions) {
    std::vector<std::string> r{p.lhs};
    r.insert(r.end(), p.rhs.begin(), p.rhs.end());
    rec.push_back(r);
  }
  section(out, "productions", rec);
  return out;
}

}  // namespace fmt

inline DocumentEnvelope parse_document(const std::string& text) {
  fmt::Reader r(fmt::read_raw(text));
  const auto& kind_line = r.header("kind");
  if (kind_line.tokens.size() != 1) fmt::fail(kind_line.number, "kind takes one value");
  const std::string kind = kind_line.tokens[0];
  const auto& ver = r.header("version");
  if (ver.tokens.size() != 1 || ver.tokens[0] != std::to_string(kFormatVersion))
    fmt::fail(ver.number, "unsupported version");
  DocumentEnvelope env{kind, kFormatVersion, GameGraph{}};
  if (kind == "game")
    env.payload = fmt::read_game(r);
  else if (kind == "transducer")
    env.payload = fmt::read_transducer(r);
  else if (kind == "automaton")
    env.payload = fmt::read_automaton(r);
  else if (kind == "domino")
    env.payload = fmt::read_domino(r);
  else if (kind == "flower")
    env.payload = fmt::read_flower(r);
  else if (kind == "strategy-table")
    env.payload = fmt::read_strategy(r);
  else if (kind == "grammar")
    env.payload = fmt::read_grammar(r);
  else
    fmt::fail(kind_line.number, "unknown kind '" + kind + "'");
  r.finish();
  return env;
}

inline std::string render_document(const Payload& p) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GameGraph>) return fmt::render_game(v);
        else if constexpr (std::is_same_v<T, SynchronousTransducer>) return fmt::render_transducer(v);
        else if constexpr (std::is_same_v<T, WordAutomaton>) return fmt::render_automaton(v);
        else if constexpr (std::is_same_v<T, DominoSystem>) return fmt::render_domino(v);
        else if constexpr (std::is_same_v<T, FlowerSpec>) return fmt::render_flower(v);
        else if constexpr (std::is_same_v<T, StrategyTable>) return fmt::render_strategy(v);
        else return fmt::render_grammar(v);
      },
      p);
}

inline std::string render_document(const DocumentEnvelope& env) { return render_document(env.payload); }

template <class T>
T expect(const DocumentEnvelope& env, const std::string& kind) {
  if (auto p = std::get_if<T>(&env.payload)) return *p;
  throw Error(ErrorKind::parse, "expected a " + kind + " document, got " + env.kind);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write '" + path + "'");
  out << text;
}

inline DocumentEnvelope load_document(const std::string& path) { return parse_document(read_file(path)); }

/// Seeds live in three files sharing a prefix: .rel, .acc, .rej.
inline Seed load_seed(const std::string& prefix) {
  auto r = expect<SynchronousTransducer>(load_document(prefix + ".rel"), "transducer");
  auto a = expect<WordAutomaton>(load_document(prefix + ".acc"), "automaton");
  auto b = expect<WordAutomaton>(load_document(prefix + ".rej"), "automaton");
  return make_seed(r, a, b);
}

inline void save_seed(const std::string& prefix, const Seed& s) {
  write_file(prefix + ".rel", render_document(s.relation));
  write_file(prefix + ".acc", render_document(s.acc));
  write_file(prefix + ".rej", render_document(s.rej));
}

}  // namespace cga
