#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pdlwb/rewrite.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

inline constexpr std::size_t kMaxDfaStates = 100000;

/// Complete deterministic automaton over a sorted alphabet of primitive
/// names (eps excluded). Produced by theta in minimal canonical form:
/// states are numbered breadth-first from the start state (which is 0),
/// following letters in alphabet order, so equal languages over the same
/// alphabet compare equal with ==.
struct WordLanguage {
  std::vector<std::string> alphabet;
  int start = 0;
  std::vector<char> accepting;
  std::vector<std::vector<int>> delta;  // delta[state][letter index]
  /// The dead state, when one exists.
  std::optional<int> sink;

  std::size_t num_states() const { return accepting.size(); }
  /// Index into alphabet, or -1.
  int letter_index(const std::string& letter) const;
  bool accepts(const Word& w) const;
  /// States from which some accepting state is reachable.
  std::vector<char> live_states() const;
  bool is_finite() const;

  friend bool operator==(const WordLanguage&, const WordLanguage&) = default;
};

/// Basic-block language of the irreducible form of p, as a minimal DFA.
/// Throws ResourceLimit beyond kMaxDfaStates subset states.
WordLanguage theta(const Program& p);

/// Minimal DFA of a finite word set over the given alphabet (letters of the
/// words are added to it).
WordLanguage language_of(const WordSet& words, std::vector<std::string> alphabet = {});

/// First n words in length-lexicographic order (fewer if the language is
/// smaller).
std::vector<Word> enumerate_words(const WordLanguage& l, std::size_t n);

/// Plain-text transition table.
std::string to_text(const WordLanguage& l);

}  // namespace pdlwb
