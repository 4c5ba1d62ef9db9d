#include "pdlwb/fingerprint.hpp"

#include <algorithm>

#include "pdlwb/semantics.hpp"

namespace pdlwb {

std::vector<Program> family_programs(const std::vector<std::string>& alphabet) {
  std::vector<std::string> letters;
  for (const auto& a : alphabet) {
    if (a != kEpsilon) letters.push_back(a);
  }
  std::vector<Program> out;
  for (const auto& a : letters) out.push_back(Program::primitive(a));
  for (const auto& a : letters) {
    for (const auto& b : letters) out.push_back(Program::seq(Program::primitive(a), Program::primitive(b)));
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    for (std::size_t j = i + 1; j < letters.size(); ++j) {
      out.push_back(Program::choice(Program::primitive(letters[i]), Program::primitive(letters[j])));
    }
  }
  for (const auto& a : letters) out.push_back(Program::star(Program::primitive(a)));
  return out;
}

namespace {

std::uint32_t bucket(const ExtendedRational& mass, const std::vector<Rational>& grid) {
  if (mass.is_infinite()) return static_cast<std::uint32_t>(grid.size());
  return static_cast<std::uint32_t>(std::upper_bound(grid.begin(), grid.end(), mass.value()) - grid.begin());
}

// mass_of(i, set) gives the masses of modality i into set; holds(b, j)
// decides a formula with bucket b at grid index j.
template <class MassOf, class Holds>
std::vector<Fingerprint> fingerprints(const KripkeModel& m, std::size_t modalities, const FamilyOptions& options,
                                      MassOf mass_of, Holds holds) {
  const std::size_t n = m.size();
  const auto grid = farey_grid(options.max_denominator);
  std::vector<Fingerprint> out(n);

  // Validity sets of the current body formulas, starting with tt and atoms.
  std::vector<StateSet> bodies{m.all_states()};
  for (const auto& [p, set] : m.atoms()) {
    bodies.push_back(set);
    for (std::size_t s = 0; s < n; ++s) out[s].push_back(set[s] ? 1 : 0);
  }
  const std::vector<StateSet> ground = bodies;

  for (int level = 1; level <= options.depth; ++level) {
    std::vector<StateSet> next = ground;
    const bool last = level == options.depth;
    for (std::size_t i = 0; i < modalities; ++i) {
      for (const auto& body : bodies) {
        const auto& mass = mass_of(i, body);
        std::vector<std::uint32_t> b(n);
        for (std::size_t s = 0; s < n; ++s) b[s] = bucket(mass[s], grid);
        if (last) {
          for (std::size_t s = 0; s < n; ++s) out[s].push_back(b[s]);
          continue;
        }
        for (std::size_t j = 0; j < grid.size(); ++j) {
          StateSet set(n);
          for (std::size_t s = 0; s < n; ++s) set[s] = holds(b[s], j);
          next.push_back(std::move(set));
        }
      }
    }
    bodies = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Fingerprint> pdl_fingerprints(const KripkeModel& m, const FamilyOptions& options) {
  const auto programs = family_programs(m.alphabet());
  Evaluator eval(m);
  return fingerprints(
      m, programs.size(), options, [&](std::size_t i, const StateSet& body) { return eval.mass(programs[i], body); },
      [](std::uint32_t b, std::size_t j) { return j >= b; });
}

std::vector<Fingerprint> hm_fingerprints(const KripkeModel& m, const FamilyOptions& options) {
  std::vector<std::string> letters;
  for (const auto& a : m.alphabet()) {
    if (a != kEpsilon) letters.push_back(a);
  }
  return fingerprints(
      m, letters.size(), options,
      [&](std::size_t i, const StateSet& body) { return kernel_mass(m, letters[i], body); },
      [](std::uint32_t b, std::size_t j) { return j < b; });
}

}  // namespace pdlwb
