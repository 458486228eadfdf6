#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cga/game.hpp"
#include "cga/seed.hpp"
#include "cga/transducer.hpp"

namespace cga {

enum class Target { acc, rej };

inline const char* to_string(Target t) { return t == Target::acc ? "acc" : "rej"; }

/// τ = R R⁻¹: pairs of player-1 words sharing a player-2 word.
inline SynchronousTransducer reflection(const SynchronousTransducer& r) { return compose(r, invert(r)); }

struct ClosureResult {
  std::size_t length = 0;
  bool member = false;
  std::vector<Word> chain;  // w ... target word; empty when not a member
};

struct Conflict {
  Word word;
  std::vector<Word> chain_acc;
  std::vector<Word> chain_rej;
};

struct SolvabilityVerdict {
  std::size_t checked_up_to = 0;
  bool solvable_up_to = true;
  std::optional<Conflict> conflict;
};

struct ClosureOptions {
  Limits limits;
  Decision default_decision = Decision::zero;
};

/// Exact per-length closure under the reflection of a seed.
class ClosureEngine {
 public:
  explicit ClosureEngine(Seed seed, ClosureOptions options = {})
      : seed_(std::move(seed)), options_(options), tau_(reflection(seed_.relation)) {
    require_same_alphabet(seed_.relation.alphabet(), seed_.acc.alphabet(), "closure");
    require_same_alphabet(seed_.relation.alphabet(), seed_.rej.alphabet(), "closure");
  }

  const Seed& seed() const { return seed_; }
  const SynchronousTransducer& tau() const { return tau_; }
  const ClosureOptions& options() const { return options_; }
  const Alphabet& alphabet() const { return seed_.relation.alphabet(); }

  /// Words y with (w, y) in τ, sorted.
  std::vector<Letters> neighbours(const Letters& w) const { return tape_image(tau_, w, true); }

  ClosureResult membership(Target target, const Word& w) const {
    auto r = explore(alphabet().encode(w), target == Target::acc, target == Target::rej);
    ClosureResult out{w.size(), false, {}};
    const auto& hit = target == Target::acc ? r.acc_hit : r.rej_hit;
    if (hit) {
      out.member = true;
      out.chain = decode_chain(r.chain_to(*hit));
    }
    return out;
  }

  /// τ-component of w (including w), sorted.
  std::vector<Word> component(const Word& w) const {
    auto r = explore(alphabet().encode(w), false, false);
    std::vector<Word> out;
    for (const auto& [x, _] : r.parent) out.push_back(alphabet().decode(x));
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Least fixpoint of S -> S ∪ τS from L(target) ∩ Γⁿ.
  WordSet closure_set(Target target, std::size_t n) const {
    auto words = closure_letters(target, n);
    std::vector<Word> out;
    out.reserve(words.size());
    for (const auto& x : words) out.push_back(alphabet().decode(x));
    return make_word_set(n, std::move(out));
  }

  SolvabilityVerdict solvable_upto(std::size_t max_len) const {
    SolvabilityVerdict v;
    v.checked_up_to = max_len;
    for (std::size_t n = 0; n <= max_len; ++n) {
      auto a = closure_letters(Target::acc, n);
      if (a.empty()) continue;
      auto b = closure_letters(Target::rej, n);
      std::vector<Letters> both;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
      if (both.empty()) continue;
      Word w = alphabet().decode(both.front());
      v.solvable_up_to = false;
      v.checked_up_to = n;
      v.conflict = Conflict{w, membership(Target::acc, w).chain, membership(Target::rej, w).chain};
      return v;
    }
    return v;
  }

  /// Per length 1..N: words of Σⁿ in the accepting closure.
  std::map<std::size_t, WordSet> covered_language_upto(const Alphabet& sigma, std::size_t max_len) const {
    std::map<std::size_t, WordSet> out;
    for (std::size_t n = 1; n <= max_len; ++n) {
      std::vector<Word> words;
      for (const auto& [w, label] : classify_sigma(sigma, n))
        if (label.acc) words.push_back(sigma.decode(w));
      out.emplace(n, make_word_set(n, std::move(words)));
    }
    return out;
  }

  bool characterises_check_upto(const Alphabet& sigma, std::size_t max_len) const {
    if (!solvable_upto(max_len).solvable_up_to)
      throw Error(ErrorKind::unsolvable_seed, "closures intersect within the checked length");
    for (std::size_t n = 1; n <= max_len; ++n)
      for (const auto& [w, label] : classify_sigma(sigma, n))
        if (!label.acc && !label.rej) return false;
    return true;
  }

  Decision optimal_decision(const Word& w) const {
    auto r = explore(alphabet().encode(w), true, true);
    if (r.acc_hit && r.rej_hit)
      throw Error(ErrorKind::conflict, "'" + format_word(w) + "' lies in both closures");
    if (r.acc_hit) return Decision::one;
    if (r.rej_hit) return Decision::zero;
    return options_.default_decision;
  }

  /// Optimal decision for every player-1 observation word of length <= N.
  StrategyTable strategy_table(std::size_t max_len) const {
    auto verdict = solvable_upto(max_len);
    if (!verdict.solvable_up_to)
      throw Error(ErrorKind::unsolvable_seed,
                  "conflict at '" + format_word(verdict.conflict->word) + "'");
    StrategyTable table;
    table.maxlen = max_len;
    auto domain = project(seed_.relation, true);
    for (std::size_t n = 0; n <= max_len; ++n) {
      std::unordered_map<Letters, Decision> decided;
      for (const auto& w : words_of_length(domain, n, options_.limits)) {
        auto it = decided.find(w);
        if (it == decided.end()) {
          auto r = explore(w, false, false);
          bool acc = false, rej = false;
          for (const auto& [x, _] : r.parent) {
            acc = acc || accepts_letters(seed_.acc, x);
            rej = rej || accepts_letters(seed_.rej, x);
          }
          Decision d = acc ? Decision::one : rej ? Decision::zero : options_.default_decision;
          for (const auto& [x, _] : r.parent) decided.emplace(x, d);
          it = decided.find(w);
        }
        table.entries.emplace(alphabet().decode(w), it->second);
      }
    }
    return table;
  }

 private:
  struct Exploration {
    std::map<Letters, Letters> parent;  // root maps to itself
    std::optional<Letters> acc_hit, rej_hit;

    std::vector<Letters> chain_to(const Letters& end) const {
      std::vector<Letters> chain{end};
      while (parent.at(chain.back()) != chain.back()) chain.push_back(parent.at(chain.back()));
      std::reverse(chain.begin(), chain.end());
      return chain;
    }
  };

  std::vector<Word> decode_chain(const std::vector<Letters>& c) const {
    std::vector<Word> out;
    for (const auto& x : c) out.push_back(alphabet().decode(x));
    return out;
  }

  /// BFS over the τ-component of w. Stops once every requested target is hit;
  /// with no request the whole component is explored.
  Exploration explore(const Letters& w, bool want_acc, bool want_rej) const {
    Exploration r;
    r.parent.emplace(w, w);
    std::deque<Letters> queue{w};
    while (!queue.empty()) {
      Letters cur = std::move(queue.front());
      queue.pop_front();
      if (!r.acc_hit && accepts_letters(seed_.acc, cur)) r.acc_hit = cur;
      if (!r.rej_hit && accepts_letters(seed_.rej, cur)) r.rej_hit = cur;
      if ((want_acc || want_rej) && (!want_acc || r.acc_hit) && (!want_rej || r.rej_hit)) break;
      for (auto& nb : neighbours(cur)) {
        if (r.parent.try_emplace(nb, cur).second) {
          check_cap(r.parent.size(), options_.limits, "exploring a reflection component");
          queue.push_back(std::move(nb));
        }
      }
    }
    return r;
  }

  std::vector<Letters> closure_letters(Target target, std::size_t n) const {
    check_cap(saturating_pow(alphabet().size(), n), options_.limits,
              "closure over words of length " + std::to_string(n));
    const auto& lang = target == Target::acc ? seed_.acc : seed_.rej;
    auto start = words_of_length(lang, n, options_.limits);
    std::unordered_set<Letters> seen(start.begin(), start.end());
    std::deque<Letters> queue(start.begin(), start.end());
    while (!queue.empty()) {
      Letters cur = std::move(queue.front());
      queue.pop_front();
      for (auto& nb : neighbours(cur))
        if (seen.insert(nb).second) queue.push_back(std::move(nb));
    }
    std::vector<Letters> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  struct Label {
    bool acc = false;
    bool rej = false;
  };

  /// Labels every word of Σⁿ by the languages its τ-component meets. Words
  /// are encoded over Σ.
  std::map<Letters, Label> classify_sigma(const Alphabet& sigma, std::size_t n) const {
    if (!sigma.is_subset_of(alphabet()))
      throw Error(ErrorKind::alphabet_mismatch, "terminal alphabet is not part of the seed alphabet");
    std::vector<Letter> to_gamma;
    for (const auto& s : sigma.symbols()) to_gamma.push_back(alphabet().letter(s));
    std::map<Letters, Label> out;
    std::unordered_map<Letters, Label> known;  // over Γ
    for (const auto& w : all_words(sigma.size(), n, options_.limits)) {
      Letters g;
      for (Letter l : w) g.push_back(to_gamma[l]);
      auto it = known.find(g);
      if (it == known.end()) {
        auto r = explore(g, false, false);
        Label label{r.acc_hit.has_value(), r.rej_hit.has_value()};
        for (const auto& [x, _] : r.parent) known.emplace(x, label);
        it = known.find(g);
      }
      out.emplace(w, it->second);
    }
    return out;
  }

  Seed seed_;
  ClosureOptions options_;
  SynchronousTransducer tau_;
};

inline ClosureResult closure_membership(const Seed& seed, Target target, const Word& w,
                                        const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).membership(target, w);
}
inline WordSet closure_set(const Seed& seed, Target target, std::size_t n, const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).closure_set(target, n);
}
inline SolvabilityVerdict solvable_upto(const Seed& seed, std::size_t n, const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).solvable_upto(n);
}
inline std::map<std::size_t, WordSet> covered_language_upto(const Seed& seed, const Alphabet& sigma, std::size_t n,
                                                            const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).covered_language_upto(sigma, n);
}
inline bool characterises_check_upto(const Seed& seed, const Alphabet& sigma, std::size_t n,
                                     const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).characterises_check_upto(sigma, n);
}
inline Decision optimal_decision(const Seed& seed, const Word& w, const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).optimal_decision(w);
}
inline StrategyTable strategy_table(const Seed& seed, std::size_t n, const ClosureOptions& o = {}) {
  return ClosureEngine(seed, o).strategy_table(n);
}

}  // namespace cga
