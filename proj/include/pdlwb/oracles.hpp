#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pdlwb/automaton.hpp"
#include "pdlwb/model.hpp"
#include "pdlwb/rational.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

/// Sum over accepted words of length <= max_len of K_w(s)(target), by
/// dynamic programming over word length. Independent of the linear solve.
std::vector<Rational> oracle_nu_truncated(const KripkeModel& m, const WordLanguage& lang, const StateSet& target,
                                          std::size_t max_len);

/// Least solution in [0, inf] of x = b + B x, by Gauss-Jordan elimination in
/// the semiring of extended nonnegative rationals (star(c) = 1/(1-c) for
/// c < 1, inf otherwise).
std::vector<ExtendedRational> semiring_least_solution(std::vector<std::vector<ExtendedRational>> b_matrix,
                                                      std::vector<ExtendedRational> b);

struct GridOptions {
  /// Largest grid denominator; nullopt selects the exactness bound.
  std::optional<Integer> denominator_bound;
  /// Words of length <= unfold_cap are assigned grid values individually.
  std::size_t unfold_cap = 8;
  /// The unfolding depth shrinks until at most this many words are listed.
  std::size_t max_listed_words = 256;
  /// Largest grid on which two-word unions are enumerated pair by pair.
  std::size_t max_literal_grid = 400;
};

struct GridVerdict {
  bool member = false;
  Integer denominator_bound;   // grid actually used
  Integer exactness_bound;     // (k+1) * lcm of all denominators involved
  std::size_t listed_words = 0;
  bool has_tail = false;
  ExtendedRational tail_mass;  // mass of the words beyond the unfolding depth
  std::vector<Rational> witness;
};

/// Decides s in [[<pi>{q} phi]] by the literal union over threshold vectors
/// a with a_1 + a_2 + ... <= q and K_{w_i}(s)(A) < a_i, all a_i on the Farey
/// grid of the given denominator bound. Words beyond the unfolding depth
/// are covered by their exact tail mass. Throws GridTooCoarse when no
/// witness exists and the grid is below the exactness bound.
GridVerdict oracle_grid(const KripkeModel& m, const PdlFormula& f, int state, const GridOptions& options = {});

bool oracle_grid_membership(const KripkeModel& m, const PdlFormula& f, int state,
                            std::optional<Integer> denominator_bound = std::nullopt);

}  // namespace pdlwb
