#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cga {

enum class ErrorKind {
  symbol_not_in_alphabet,
  invalid_alphabet,
  length_mismatch,
  alphabet_mismatch,
  alphabet_overlap,
  cap_exceeded,
  invalid_play,
  invalid_game,
  invalid_domino,
  invalid_spec,
  invalid_argument,
  nondisjoint_seed_languages,
  conflict,
  unsolvable_seed,
  partial_strategy,
  not_cnf,
  not_a_coded_dyck_transducer,
  parse,
  io,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::symbol_not_in_alphabet: return "symbol-not-in-alphabet";
    case ErrorKind::invalid_alphabet: return "invalid-alphabet";
    case ErrorKind::length_mismatch: return "length-mismatch";
    case ErrorKind::alphabet_mismatch: return "alphabet-mismatch";
    case ErrorKind::alphabet_overlap: return "alphabet-overlap";
    case ErrorKind::cap_exceeded: return "cap-exceeded";
    case ErrorKind::invalid_play: return "invalid-play";
    case ErrorKind::invalid_game: return "invalid-game";
    case ErrorKind::invalid_domino: return "invalid-domino";
    case ErrorKind::invalid_spec: return "invalid-spec";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::nondisjoint_seed_languages: return "nondisjoint-seed-languages";
    case ErrorKind::conflict: return "conflict";
    case ErrorKind::unsolvable_seed: return "unsolvable-seed";
    case ErrorKind::partial_strategy: return "partial-strategy";
    case ErrorKind::not_cnf: return "not-cnf";
    case ErrorKind::not_a_coded_dyck_transducer: return "not-a-coded-dyck-transducer";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Enumeration guard shared by every exhaustive routine.
struct Limits {
  std::size_t cap = 2'000'000;
};

inline void check_cap(std::size_t count, const Limits& limits, std::string_view what) {
  if (count > limits.cap) {
    throw Error(ErrorKind::cap_exceeded,
                std::string(what) + " needs " + std::to_string(count) + " > cap " +
                    std::to_string(limits.cap));
  }
}

/// |base|^exp, saturating at SIZE_MAX.
inline std::size_t saturating_pow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > static_cast<std::size_t>(-1) / base) return static_cast<std::size_t>(-1);
    r *= base;
  }
  return r;
}

}  // namespace cga
