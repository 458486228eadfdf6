#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cga/error.hpp"

namespace cga {

using Symbol = std::string;
using Word = std::vector<Symbol>;

/// Index of a symbol inside one particular alphabet.
using Letter = char16_t;
/// Word encoded against an alphabet; hashable and ordered like the symbol names.
using Letters = std::u16string;

/// Reserved symbol observed at initial and final game states.
inline const Symbol kBorder = "#";
/// Written for the empty word in text renderings.
inline const std::string kEpsilon = "ε";

inline bool valid_symbol_name(std::string_view s) {
  if (s.empty() || s == kEpsilon) return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';';
  });
}

/// Ordered set of distinct symbol names. Kept sorted so that encoded words
/// compare exactly like their symbol sequences.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    for (const auto& s : symbols_) {
      if (!valid_symbol_name(s)) throw Error(ErrorKind::invalid_alphabet, "bad symbol name '" + s + "'");
    }
    std::sort(symbols_.begin(), symbols_.end());
    auto dup = std::adjacent_find(symbols_.begin(), symbols_.end());
    if (dup != symbols_.end()) throw Error(ErrorKind::invalid_alphabet, "duplicate symbol '" + *dup + "'");
    if (symbols_.size() > 0xFFFF) throw Error(ErrorKind::invalid_alphabet, "too many symbols");
    index_.reserve(symbols_.size());
    for (std::size_t i = 0; i < symbols_.size(); ++i) index_.emplace(symbols_[i], static_cast<Letter>(i));
  }

  Alphabet(std::initializer_list<const char*> symbols)
      : Alphabet(std::vector<Symbol>(symbols.begin(), symbols.end())) {}

  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }
  const Symbol& at(Letter l) const { return symbols_.at(l); }

  bool contains(std::string_view s) const { return index_.count(Symbol(s)) != 0; }

  std::optional<Letter> index(std::string_view s) const {
    auto it = index_.find(Symbol(s));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Letter letter(std::string_view s) const {
    auto l = index(s);
    if (!l) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + Symbol(s) + "'");
    return *l;
  }

  Letters encode(const Word& w) const {
    Letters out;
    out.reserve(w.size());
    for (const auto& s : w) out.push_back(letter(s));
    return out;
  }

  Word decode(const Letters& w) const {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) out.push_back(symbols_.at(l));
    return out;
  }

  bool is_subset_of(const Alphabet& other) const {
    return std::all_of(symbols_.begin(), symbols_.end(), [&](const Symbol& s) { return other.contains(s); });
  }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, Letter> index_;
};

inline Alphabet unite(const Alphabet& a, const Alphabet& b) {
  std::vector<Symbol> all = a.symbols();
  for (const auto& s : b.symbols())
    if (!a.contains(s)) all.push_back(s);
  return Alphabet(std::move(all));
}

inline Alphabet intersect(const Alphabet& a, const Alphabet& b) {
  std::vector<Symbol> common;
  for (const auto& s : a.symbols())
    if (b.contains(s)) common.push_back(s);
  return Alphabet(std::move(common));
}

inline Alphabet with_symbol(const Alphabet& a, const Symbol& s) {
  if (a.contains(s)) return a;
  auto v = a.symbols();
  v.push_back(s);
  return Alphabet(std::move(v));
}

/// Renders a word: concatenated when every symbol is one code point, space
/// separated otherwise, "ε" when empty.
inline std::string format_word(const Word& w) {
  if (w.empty()) return kEpsilon;
  auto single = [](const Symbol& s) {
    if (s.empty()) return false;
    auto lead = static_cast<unsigned char>(s[0]);
    std::size_t len = lead < 0x80 ? 1 : (lead >> 5) == 0x6 ? 2 : (lead >> 4) == 0xE ? 3 : 4;
    return s.size() == len;
  };
  bool compact = std::all_of(w.begin(), w.end(), single);
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !compact) out += ' ';
    out += w[i];
  }
  return out;
}

/// Inverse of format_word against a known alphabet. Whitespace-separated text
/// is split; otherwise symbols are matched greedily, longest name first.
inline Word parse_word(const Alphabet& alphabet, std::string_view text) {
  Word w;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == ','; };
  if (text.empty() || text == kEpsilon) return w;
  if (std::any_of(text.begin(), text.end(), is_space)) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j])) ++j;
      if (j > i) {
        Symbol s(text.substr(i, j - i));
        if (!alphabet.contains(s)) throw Error(ErrorKind::symbol_not_in_alphabet, "'" + s + "'");
        w.push_back(std::move(s));
      }
      i = j;
    }
    return w;
  }
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t best = 0;
    for (const auto& s : alphabet.symbols()) {
      if (s.size() > best && text.substr(i, s.size()) == s) best = s.size();
    }
    if (best == 0) {
      throw Error(ErrorKind::symbol_not_in_alphabet,
                  "no symbol matches at offset " + std::to_string(i) + " of '" + std::string(text) + "'");
    }
    w.emplace_back(text.substr(i, best));
    i += best;
  }
  return w;
}

/// Letter-to-letter homomorphism, total on its source alphabet.
class Homomorphism {
 public:
  Homomorphism() = default;

  Homomorphism(Alphabet source, Alphabet target, const std::map<Symbol, Symbol>& map)
      : source_(std::move(source)), target_(std::move(target)) {
    image_.resize(source_.size());
    for (std::size_t i = 0; i < source_.size(); ++i) {
      auto it = map.find(source_.symbols()[i]);
      if (it == map.end())
        throw Error(ErrorKind::invalid_spec, "homomorphism undefined on '" + source_.symbols()[i] + "'");
      image_[i] = target_.letter(it->second);
    }
    for (const auto& [k, v] : map) {
      if (!source_.contains(k)) throw Error(ErrorKind::invalid_spec, "homomorphism maps unknown symbol '" + k + "'");
    }
  }

  const Alphabet& source() const { return source_; }
  const Alphabet& target() const { return target_; }

  const Symbol& operator()(const Symbol& a) const { return target_.at(image_[source_.letter(a)]); }

  Word apply(const Word& w) const {
    Word out;
    out.reserve(w.size());
    for (const auto& s : w) out.push_back((*this)(s));
    return out;
  }

  std::map<Symbol, Symbol> as_map() const {
    std::map<Symbol, Symbol> m;
    for (std::size_t i = 0; i < source_.size(); ++i) m.emplace(source_.symbols()[i], target_.at(image_[i]));
    return m;
  }

 private:
  Alphabet source_;
  Alphabet target_;
  std::vector<Letter> image_;
};

/// Fixed-length carrier for per-length fixpoints and language slices.
struct WordSet {
  std::size_t length = 0;
  std::vector<Word> words;  // sorted, unique, each of size `length`

  bool contains(const Word& w) const { return std::binary_search(words.begin(), words.end(), w); }
  std::size_t size() const { return words.size(); }
  bool empty() const { return words.empty(); }
  friend bool operator==(const WordSet&, const WordSet&) = default;
};

inline WordSet make_word_set(std::size_t length, std::vector<Word> words) {
  for (const auto& w : words) {
    if (w.size() != length) throw Error(ErrorKind::length_mismatch, "word of length " + std::to_string(w.size()) +
                                                                       " in set of length " + std::to_string(length));
  }
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  return WordSet{length, std::move(words)};
}

/// Every word of length n over the given alphabet, in lexicographic order.
inline std::vector<Letters> all_words(std::size_t alphabet_size, std::size_t n, const Limits& limits = {}) {
  check_cap(saturating_pow(alphabet_size, n), limits, "enumerating all words of length " + std::to_string(n));
  std::vector<Letters> out;
  if (alphabet_size == 0 && n > 0) return out;
  Letters cur(n, Letter{0});
  while (true) {
    out.push_back(cur);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (static_cast<std::size_t>(cur[i]) + 1 < alphabet_size) {
        ++cur[i];
        std::fill(cur.begin() + static_cast<std::ptrdiff_t>(i) + 1, cur.end(), Letter{0});
        break;
      }
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

}  // namespace cga
