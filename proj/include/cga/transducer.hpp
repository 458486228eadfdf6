#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cga/alphabet.hpp"
#include "cga/automaton.hpp"
#include "cga/error.hpp"

namespace cga {

/// Two-tape letter-to-letter automaton recognising a synchronous relation.
class SynchronousTransducer {
 public:
  struct Edge {
    Letter in;
    Letter out;
    StateId to;
    friend auto operator<=>(const Edge&, const Edge&) = default;
  };

  SynchronousTransducer() = default;
  explicit SynchronousTransducer(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

  StateId add_state(std::string name = {}) {
    auto id = static_cast<StateId>(names_.size());
    if (name.empty()) name = "q" + std::to_string(id);
    names_.push_back(std::move(name));
    out_.emplace_back();
    final_.push_back(false);
    return id;
  }

  void add_transition(StateId from, Letter in, Letter out, StateId to) {
    if (in >= alphabet_.size() || out >= alphabet_.size())
      throw Error(ErrorKind::symbol_not_in_alphabet, "transition label outside the alphabet");
    auto& edges = out_.at(from);
    Edge e{in, out, to};
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it == edges.end() || *it != e) edges.insert(it, e);
  }
  void add_transition(StateId from, const Symbol& in, const Symbol& out, StateId to) {
    add_transition(from, alphabet_.letter(in), alphabet_.letter(out), to);
  }

  void set_initial(StateId s) { initial_ = s; }
  void set_final(StateId s, bool f = true) { final_.at(s) = f; }

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t state_count() const { return names_.size(); }
  const std::string& name(StateId s) const { return names_.at(s); }
  StateId initial() const { return initial_; }
  bool is_final(StateId s) const { return final_.at(s); }
  const std::vector<Edge>& edges(StateId s) const { return out_.at(s); }

  std::vector<StateId> finals() const {
    std::vector<StateId> f;
    for (StateId s = 0; s < state_count(); ++s)
      if (final_[s]) f.push_back(s);
    return f;
  }

  std::size_t transition_count() const {
    std::size_t n = 0;
    for (const auto& e : out_) n += e.size();
    return n;
  }

  std::optional<StateId> state_named(const std::string& n) const {
    for (StateId s = 0; s < names_.size(); ++s)
      if (names_[s] == n) return s;
    return std::nullopt;
  }

 private:
  Alphabet alphabet_;
  std::vector<std::string> names_;
  std::vector<std::vector<Edge>> out_;
  StateId initial_ = 0;
  std::vector<bool> final_;
};

using WordPair = std::pair<Word, Word>;

namespace detail {

/// States alive at each position of a run that reads `w` on one tape:
/// reachable from the initial state and able to reach a final state.
inline std::vector<std::vector<char>> live_positions(const SynchronousTransducer& r, const Letters& w,
                                                     bool on_input) {
  const std::size_t n = w.size();
  const std::size_t q = r.state_count();
  std::vector<std::vector<char>> fwd(n + 1, std::vector<char>(q, 0));
  if (q == 0) return fwd;
  fwd[0][r.initial()] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (StateId s = 0; s < q; ++s) {
      if (!fwd[i][s]) continue;
      for (const auto& e : r.edges(s))
        if ((on_input ? e.in : e.out) == w[i]) fwd[i + 1][e.to] = 1;
    }
  std::vector<char> bwd(q, 0);
  for (StateId s = 0; s < q; ++s) {
    bwd[s] = r.is_final(s);
    fwd[n][s] = fwd[n][s] && bwd[s];
  }
  for (std::size_t i = n; i-- > 0;) {
    std::vector<char> prev(q, 0);
    for (StateId s = 0; s < q; ++s)
      for (const auto& e : r.edges(s))
        if ((on_input ? e.in : e.out) == w[i] && bwd[e.to]) {
          prev[s] = 1;
          break;
        }
    bwd = std::move(prev);
    for (StateId s = 0; s < q; ++s) fwd[i][s] = fwd[i][s] && bwd[s];
  }
  return fwd;
}

}  // namespace detail

/// All words on the opposite tape of accepting runs that read `w` on the
/// given tape. Each result appears once; output is sorted.
inline std::vector<Letters> tape_image(const SynchronousTransducer& r, const Letters& w, bool w_on_input) {
  std::vector<Letters> out;
  if (r.state_count() == 0) return out;
  auto live = detail::live_positions(r, w, w_on_input);
  if (!live[0][r.initial()]) return out;
  Letters cur;
  std::function<void(const std::vector<StateId>&)> rec = [&](const std::vector<StateId>& set) {
    std::size_t i = cur.size();
    if (i == w.size()) {
      out.push_back(cur);
      return;
    }
    std::map<Letter, std::vector<StateId>> next;
    for (StateId s : set)
      for (const auto& e : r.edges(s)) {
        Letter read = w_on_input ? e.in : e.out;
        Letter other = w_on_input ? e.out : e.in;
        if (read == w[i] && live[i + 1][e.to]) next[other].push_back(e.to);
      }
    for (auto& [l, targets] : next) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      cur.push_back(l);
      rec(targets);
      cur.pop_back();
    }
  };
  rec({r.initial()});
  return out;
}

inline bool accepts_letters(const SynchronousTransducer& r, const Letters& u, const Letters& w) {
  if (u.size() != w.size()) throw Error(ErrorKind::length_mismatch, "transducer pair of unequal lengths");
  if (r.state_count() == 0) return false;
  std::vector<char> cur(r.state_count(), 0);
  cur[r.initial()] = 1;
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::vector<char> next(r.state_count(), 0);
    bool any = false;
    for (StateId s = 0; s < r.state_count(); ++s) {
      if (!cur[s]) continue;
      for (const auto& e : r.edges(s))
        if (e.in == u[i] && e.out == w[i]) next[e.to] = any = true;
    }
    if (!any) return false;
    cur = std::move(next);
  }
  for (StateId s = 0; s < r.state_count(); ++s)
    if (cur[s] && r.is_final(s)) return true;
  return false;
}

/// True iff (u, w) labels an accepting run.
inline bool transducer_accepts(const SynchronousTransducer& r, const Word& u, const Word& w) {
  if (u.size() != w.size()) throw Error(ErrorKind::length_mismatch, "transducer pair of unequal lengths");
  return accepts_letters(r, r.alphabet().encode(u), r.alphabet().encode(w));
}

/// Swaps the two tapes on every transition.
inline SynchronousTransducer invert(const SynchronousTransducer& r) {
  SynchronousTransducer out(r.alphabet());
  for (StateId s = 0; s < r.state_count(); ++s) {
    out.add_state(r.name(s));
    out.set_final(s, r.is_final(s));
  }
  out.set_initial(r.initial());
  for (StateId s = 0; s < r.state_count(); ++s)
    for (const auto& e : r.edges(s)) out.add_transition(s, e.out, e.in, e.to);
  return out;
}

/// Product construction for {(x,y) | (x,z) in R, (z,y) in S}; only reachable
/// state pairs are built.
inline SynchronousTransducer compose(const SynchronousTransducer& r, const SynchronousTransducer& s) {
  require_same_alphabet(r.alphabet(), s.alphabet(), "compose");
  SynchronousTransducer out(r.alphabet());
  if (r.state_count() == 0 || s.state_count() == 0) {
    out.set_initial(out.add_state());
    return out;
  }
  // S transitions indexed by (state, input letter)
  std::vector<std::map<Letter, std::vector<std::pair<Letter, StateId>>>> by_input(s.state_count());
  for (StateId q = 0; q < s.state_count(); ++q)
    for (const auto& e : s.edges(q)) by_input[q][e.in].emplace_back(e.out, e.to);

  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::deque<std::pair<StateId, StateId>> todo;
  auto get = [&](StateId p, StateId q) {
    auto [it, fresh] = ids.try_emplace({p, q}, 0);
    if (fresh) {
      it->second = out.add_state(r.name(p) + "." + s.name(q));
      out.set_final(it->second, r.is_final(p) && s.is_final(q));
      todo.emplace_back(p, q);
    }
    return it->second;
  };
  out.set_initial(get(r.initial(), s.initial()));
  while (!todo.empty()) {
    auto [p, q] = todo.front();
    todo.pop_front();
    StateId from = ids.at({p, q});
    for (const auto& e : r.edges(p)) {
      auto it = by_input[q].find(e.out);
      if (it == by_input[q].end()) continue;
      for (const auto& [c, q2] : it->second) out.add_transition(from, e.in, c, get(e.to, q2));
    }
  }
  return out;
}

/// Single-state transducer accepting exactly {(w,w)}.
inline SynchronousTransducer identity(const Alphabet& sigma) {
  SynchronousTransducer t(sigma);
  StateId s = t.add_state("id");
  t.set_initial(s);
  t.set_final(s);
  for (Letter l = 0; l < sigma.size(); ++l) t.add_transition(s, l, l, s);
  return t;
}

/// R L = {x : exists y in L with (x,y) in R}; x stands on the input tape.
inline WordSet relation_image(const SynchronousTransducer& r, const WordSet& l) {
  std::vector<Word> xs;
  for (const auto& y : l.words) {
    for (const auto& x : tape_image(r, r.alphabet().encode(y), /*w_on_input=*/false))
      xs.push_back(r.alphabet().decode(x));
  }
  return make_word_set(l.length, std::move(xs));
}

/// Every accepted pair of length exactly n, by exhaustive run search.
inline std::vector<WordPair> enumerate_pairs(const SynchronousTransducer& r, std::size_t n,
                                             const Limits& limits = {}) {
  check_cap(saturating_pow(r.alphabet().size(), n), limits, "enumerating transducer pairs");
  std::vector<WordPair> out;
  const std::size_t q = r.state_count();
  if (q == 0) return out;
  std::vector<std::vector<char>> exact(n + 1, std::vector<char>(q, 0));
  for (StateId s = 0; s < q; ++s) exact[0][s] = r.is_final(s);
  for (std::size_t k = 1; k <= n; ++k)
    for (StateId s = 0; s < q; ++s)
      for (const auto& e : r.edges(s))
        if (exact[k - 1][e.to]) {
          exact[k][s] = 1;
          break;
        }
  if (!exact[n][r.initial()]) return out;
  Letters u, w;
  std::function<void(const std::vector<StateId>&)> rec = [&](const std::vector<StateId>& set) {
    std::size_t remaining = n - u.size();
    if (remaining == 0) {
      out.emplace_back(r.alphabet().decode(u), r.alphabet().decode(w));
      return;
    }
    std::map<std::pair<Letter, Letter>, std::vector<StateId>> next;
    for (StateId s : set)
      for (const auto& e : r.edges(s))
        if (exact[remaining - 1][e.to]) next[{e.in, e.out}].push_back(e.to);
    for (auto& [label, targets] : next) {
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      u.push_back(label.first);
      w.push_back(label.second);
      rec(targets);
      u.pop_back();
      w.pop_back();
    }
  };
  rec({r.initial()});
  std::sort(out.begin(), out.end());
  return out;
}

/// Automaton for the words on one tape of the relation.
inline WordAutomaton project(const SynchronousTransducer& r, bool input_tape) {
  WordAutomaton a(r.alphabet());
  for (StateId s = 0; s < r.state_count(); ++s) {
    a.add_state(r.name(s));
    a.set_final(s, r.is_final(s));
  }
  if (r.state_count() == 0) {
    a.set_initial(a.add_state());
    return a;
  }
  a.set_initial(r.initial());
  for (StateId s = 0; s < r.state_count(); ++s)
    for (const auto& e : r.edges(s)) a.add_transition(s, input_tape ? e.in : e.out, e.to);
  return a;
}

/// Re-expresses a transducer over a superset alphabet.
inline SynchronousTransducer lift(const SynchronousTransducer& r, const Alphabet& superset) {
  if (!r.alphabet().is_subset_of(superset))
    throw Error(ErrorKind::alphabet_mismatch, "cannot lift transducer to an alphabet missing some of its symbols");
  SynchronousTransducer out(superset);
  for (StateId s = 0; s < r.state_count(); ++s) {
    out.add_state(r.name(s));
    out.set_final(s, r.is_final(s));
  }
  if (r.state_count() == 0) {
    out.set_initial(out.add_state());
    return out;
  }
  out.set_initial(r.initial());
  const auto& a = r.alphabet();
  for (StateId s = 0; s < r.state_count(); ++s)
    for (const auto& e : r.edges(s))
      out.add_transition(s, superset.letter(a.at(e.in)), superset.letter(a.at(e.out)), e.to);
  return out;
}

}  // namespace cga
