#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pdlwb/automaton.hpp"
#include "pdlwb/model.hpp"
#include "pdlwb/rational.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

inline constexpr std::size_t kDefaultCoordinateCap = 20000;

/// kDefaultCoordinateCap unless PDLWB_MAX_COORDS holds a positive integer.
std::size_t coordinate_cap();

struct NuResult {
  std::vector<ExtendedRational> values;  // one per model state
  bool divergence_detected = false;      // some component failed the M-matrix test
  std::size_t coordinates = 0;           // product coordinates that were solved
};

/// Accumulated mass: for each state s, the sum over all words w of the
/// language of K_w(s)(target), as the least solution of the linear system
/// over (automaton state, model state). Throws AlphabetMismatch when the
/// language uses a letter the model lacks, ResourceLimit beyond the cap.
NuResult nu(const KripkeModel& m, const WordLanguage& lang, const StateSet& target,
            std::size_t cap = coordinate_cap());

/// Throws UnknownAtom / UnknownPrimitive for names the model does not declare.
void check_names(const KripkeModel& m, const PdlFormula& f);
void check_names(const KripkeModel& m, const HmFormula& f);

/// Evaluation session with caches for automata and masses. Not thread safe;
/// use one per thread.
class Evaluator {
 public:
  explicit Evaluator(const KripkeModel& m, std::size_t cap = coordinate_cap()) : m_(m), cap_(cap) {}

  StateSet pdl(const PdlFormula& f);
  StateSet hm(const HmFormula& f);
  const WordLanguage& language(const Program& p);
  const std::vector<ExtendedRational>& mass(const Program& p, const StateSet& target);

  const KripkeModel& model() const { return m_; }

 private:
  const KripkeModel& m_;
  std::size_t cap_;
  std::map<std::string, WordLanguage> languages_;
  std::map<std::pair<std::string, StateSet>, std::vector<ExtendedRational>> masses_;
};

StateSet eval_pdl(const KripkeModel& m, const PdlFormula& f);
StateSet eval_hm(const KripkeModel& m, const HmFormula& f);

StateSet complement(const StateSet& a);
StateSet intersect(const StateSet& a, const StateSet& b);

enum class Comparison { StrictLess, GreaterEq, LessEq, GreaterThan };

/// States whose mass compares to the threshold as requested. LessEq and
/// GreaterThan stand for the intersection over k of the strict (resp.
/// non-strict) sets at q + 1/k, which collapse exactly to these.
struct ThresholdSet {
  Comparison comparison;
  std::vector<ExtendedRational> mass;
  Rational threshold;

  bool contains(std::size_t s) const;
  StateSet members() const;
};

/// K_rho(s)(a) for every state s.
std::vector<ExtendedRational> kernel_mass(const KripkeModel& m, const std::string& rho, const StateSet& a);

ThresholdSet threshold_set(const KripkeModel& m, const std::string& rho, const StateSet& a, Comparison cmp,
                           const Rational& q);

using Chain = std::vector<std::pair<std::string, Rational>>;

/// Left fold of {s : K_rho(s)(A) >= q} (ik) or {s : K_rho(s)(A) < q} (im)
/// along the chain. Throws InvalidArgument for an empty chain.
ThresholdSet ik_set(const KripkeModel& m, const StateSet& a, const Chain& chain);
ThresholdSet im_set(const KripkeModel& m, const StateSet& a, const Chain& chain);

}  // namespace pdlwb
