#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdlwb/syntax.hpp"

namespace pdlwb {

/// A basic block: a sequence of primitive names. The empty word is eps.
using Word = std::vector<std::string>;

/// Shorter words first, then lexicographic by letter.
struct LengthLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using WordSet = std::set<Word, LengthLex>;

/// "a;b;c", or "eps" for the empty word.
std::string format_word(const Word& w);
/// Inverse of format_word; every letter must be an identifier.
Word parse_word(std::string_view text);

enum class Rule { DistLeft, DistRight, DistEps, DistStar };

/// "d_l", "d_r", "d_eps", "d_star".
std::string_view rule_name(Rule r);

struct RewriteStep {
  Rule rule;
  std::vector<int> position;  // Dewey address, 0-based child indices
  std::map<std::string, Program> substitution;
  Program before;
  Program after;
};

/// Leftmost-innermost instance of d_l or d_r (d_l wins when both match at
/// the same node). nullopt when p is irreducible for these two rules.
std::optional<RewriteStep> rewrite_step(const Program& p);

/// Removes eps units of composition: eps;x -> x and x;eps -> x, bottom-up.
/// Weight is unchanged since w(eps) = 1.
Program strip_units(const Program& p);

/// Subtree at a Dewey address and replacement at that address.
const Program& subtree_at(const Program& p, const std::vector<int>& position);
Program replace_at(const Program& p, const std::vector<int>& position, const Program& replacement);

/// Steps taken by normalize_starfree, each applied to a unit-stripped term.
std::vector<RewriteStep> normalization_trace(const Program& p);

/// Exhaustive d_l / d_r rewriting of a star-free program, read off as its
/// set of basic blocks. Throws InfiniteWeight when p contains a star.
WordSet normalize_starfree(const Program& p);

}  // namespace pdlwb
