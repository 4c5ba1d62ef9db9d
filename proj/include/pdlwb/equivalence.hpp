#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdlwb/model.hpp"

namespace pdlwb {

struct Partition {
  std::vector<std::vector<int>> blocks;  // ordered by smallest member
  std::vector<int> block_of;
  int rounds = 0;                        // refinement rounds after the initial split
};

/// Coarsest partition that agrees on atoms and total masses and in which
/// every K_rho(s)(C), C a block, is constant on blocks.
Partition refine_partition(const KripkeModel& m);

/// Partition from per-state block labels (labels need not be contiguous).
Partition partition_from_labels(const std::vector<int>& labels);

struct Quotient {
  KripkeModel model;
  ModelMap projection;
};

/// Quotient by a partition on which the kernels are class constant. States
/// are named "[s,t,...]" after the block members. Throws NotClassConstant.
Quotient quotient_model(const KripkeModel& m, const Partition& part);

struct Distinguisher {
  std::string logic;    // "pdl" or "hm"
  std::string formula;
  int left_state;       // state of the left model
  int right_state;      // state of the right model
  bool holds_left;
  bool holds_right;
};

struct EquivalenceReport {
  bool equivalent = false;
  /// True when a model is not strictly probabilistic: the refinement verdict
  /// is then backed by fingerprint evidence rather than by a theorem.
  bool sampled = false;
  Partition partition;                         // of the coproduct
  std::vector<std::vector<int>> left_partners;  // right states sharing a block
  std::vector<std::vector<int>> right_partners;
  std::vector<int> unmatched_left;
  std::vector<int> unmatched_right;
  std::optional<Distinguisher> counterexample;
};

/// Throws AlphabetMismatch / AtomMismatch.
EquivalenceReport logically_equivalent(const KripkeModel& m1, const KripkeModel& m2);

/// A formula separating state a from state b of m (both logics are tried,
/// PDL first). nullopt when the states are not separated.
std::optional<Distinguisher> distinguish(const KripkeModel& m, int a, int b);

struct Cospan {
  KripkeModel mediating;
  ModelMap left;
  ModelMap right;
};

struct Span {
  KripkeModel mediating;
  ModelMap left;   // mediating -> m1
  ModelMap right;  // mediating -> m2
};

struct CospanResult {
  EquivalenceReport report;
  std::optional<Cospan> cospan;
};

struct SpanResult {
  EquivalenceReport report;
  std::optional<Span> span;
};

/// On success the cospan maps are verified morphisms onto the mediating model.
CospanResult behavioral_equivalence(const KripkeModel& m1, const KripkeModel& m2);

/// Span over the pairs identified by the cospan, with the independent
/// coupling inside each class. Throws MassMismatch if class masses differ.
SpanResult bisimulation_span(const KripkeModel& m1, const KripkeModel& m2);

struct HmEquivalence {
  bool equivalent = false;
  int depth = 0;                 // modal depth explored
  std::vector<int> left_witness;   // partner in m2 per state of m1, or -1
  std::vector<int> right_witness;  // partner in m1 per state of m2, or -1
};

/// Compares HM theories up to the given modal depth (0 selects the number
/// of states of the coproduct, which is always enough). Thresholds range
/// over the masses attained in the coproduct.
HmEquivalence hm_equivalent(const KripkeModel& m1, const KripkeModel& m2, int depth = 0);

ModelMap compose(const ModelMap& f, const ModelMap& g);

}  // namespace pdlwb
