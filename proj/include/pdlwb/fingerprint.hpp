#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pdlwb/model.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

struct FamilyOptions {
  int depth = 2;
  long max_denominator = 12;
};

/// Programs of the formula family over the given primitives: each letter,
/// each two-letter block, each binary choice of distinct letters, each
/// starred letter.
std::vector<Program> family_programs(const std::vector<std::string>& alphabet);

/// A state's theory restricted to the formula family. Entry i is either an
/// atom bit or, for a modality and body, the number of grid thresholds that
/// are <= the mass; this count fixes the truth of the modality at every
/// threshold of the grid.
using Fingerprint = std::vector<std::uint32_t>;

/// Family: tt, atoms, and <pi>{q} body for pi in family_programs and q on
/// the Farey grid, nested up to the modal depth.
std::vector<Fingerprint> pdl_fingerprints(const KripkeModel& m, const FamilyOptions& options = {});
/// Same with hm<rho>{q} body over single primitives.
std::vector<Fingerprint> hm_fingerprints(const KripkeModel& m, const FamilyOptions& options = {});

}  // namespace pdlwb
