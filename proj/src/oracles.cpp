#include "pdlwb/oracles.hpp"

#include "pdlwb/errors.hpp"
#include "pdlwb/semantics.hpp"

namespace pdlwb {

std::vector<Rational> oracle_nu_truncated(const KripkeModel& m, const WordLanguage& lang, const StateSet& target,
                                          std::size_t max_len) {
  const std::size_t n = m.size();
  const std::size_t states = lang.num_states();
  std::vector<const Matrix*> kernels;
  for (const auto& a : lang.alphabet) {
    if (!m.has_primitive(a)) throw Error(ErrorCode::AlphabetMismatch, "model has no kernel for primitive '" + a + "'");
    kernels.push_back(&m.kernel(a));
  }
  // h[q][s]: mass of accepted words of length exactly l read from q at s.
  std::vector<std::vector<Rational>> h(states, std::vector<Rational>(n));
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t s = 0; s < n; ++s) {
      if (lang.accepting[q] && target[s]) h[q][s] = 1;
    }
  }
  std::vector<Rational> total(n);
  for (std::size_t len = 0;; ++len) {
    for (std::size_t s = 0; s < n; ++s) total[s] += h[lang.start][s];
    if (len == max_len) break;
    std::vector<std::vector<Rational>> next(states, std::vector<Rational>(n));
    for (std::size_t q = 0; q < states; ++q) {
      for (std::size_t a = 0; a < kernels.size(); ++a) {
        const auto& succ = h[lang.delta[q][a]];
        const Matrix& k = *kernels[a];
        for (std::size_t s = 0; s < n; ++s) {
          for (std::size_t t = 0; t < n; ++t) {
            if (sgn(k[s][t]) != 0 && sgn(succ[t]) != 0) next[q][s] += k[s][t] * succ[t];
          }
        }
      }
    }
    h = std::move(next);
  }
  return total;
}

namespace {

ExtendedRational star(const ExtendedRational& c) {
  if (c.is_infinite() || c.value() >= 1) return ExtendedRational::infinity();
  return ExtendedRational(Rational(1 / (1 - c.value())));
}

}  // namespace

std::vector<ExtendedRational> semiring_least_solution(std::vector<std::vector<ExtendedRational>> bm,
                                                      std::vector<ExtendedRational> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    // Solve row k for x_k in terms of the remaining unknowns.
    const ExtendedRational s = star(bm[k][k]);
    bm[k][k] = 0L;
    for (std::size_t j = 0; j < n; ++j) {
      if (!bm[k][j].is_zero()) bm[k][j] = s * bm[k][j];
    }
    b[k] = s * b[k];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || bm[i][k].is_zero()) continue;
      const ExtendedRational c = bm[i][k];
      bm[i][k] = 0L;
      for (std::size_t j = 0; j < n; ++j) {
        if (!bm[k][j].is_zero()) bm[i][j] += c * bm[k][j];
      }
      b[i] += c * b[k];
    }
  }
  return b;
}

namespace {

// Exact mass of all accepted words longer than depth, read from (start, state).
ExtendedRational tail_mass(const KripkeModel& m, const WordLanguage& lang, const StateSet& target, int state,
                           std::size_t depth) {
  const std::size_t n = m.size();
  const std::size_t states = lang.num_states();
  const std::size_t coords = states * n;
  if (coords > 2000) throw Error(ErrorCode::ResourceLimit, "grid oracle tail system too large");
  std::vector<const Matrix*> kernels;
  for (const auto& a : lang.alphabet) kernels.push_back(&m.kernel(a));

  std::vector<std::vector<ExtendedRational>> bm(coords, std::vector<ExtendedRational>(coords));
  std::vector<ExtendedRational> b(coords);
  for (std::size_t q = 0; q < states; ++q) {
    for (std::size_t s = 0; s < n; ++s) {
      const std::size_t row = q * n + s;
      if (lang.accepting[q] && target[s]) b[row] = 1L;
      for (std::size_t a = 0; a < kernels.size(); ++a) {
        const std::size_t q2 = lang.delta[q][a];
        for (std::size_t t = 0; t < n; ++t) {
          const Rational& w = (*kernels[a])[s][t];
          if (sgn(w) != 0) bm[row][q2 * n + t] += ExtendedRational(w);
        }
      }
    }
  }
  const auto h = semiring_least_solution(std::move(bm), std::move(b));

  // Path weights of all letter sequences of length depth + 1 from (start, state).
  std::vector<Rational> dist(coords);
  dist[lang.start * n + state] = 1;
  for (std::size_t step = 0; step <= depth; ++step) {
    std::vector<Rational> next(coords);
    for (std::size_t q = 0; q < states; ++q) {
      for (std::size_t s = 0; s < n; ++s) {
        const Rational& p = dist[q * n + s];
        if (sgn(p) == 0) continue;
        for (std::size_t a = 0; a < kernels.size(); ++a) {
          const std::size_t q2 = lang.delta[q][a];
          for (std::size_t t = 0; t < n; ++t) {
            const Rational& w = (*kernels[a])[s][t];
            if (sgn(w) != 0) next[q2 * n + t] += p * w;
          }
        }
      }
    }
    dist = std::move(next);
  }
  ExtendedRational tail = 0L;
  for (std::size_t c = 0; c < coords; ++c) {
    if (sgn(dist[c]) != 0) tail += ExtendedRational(dist[c]) * h[c];
  }
  return tail;
}

// Literal enumeration of the two-component union over a Farey grid.
std::optional<std::vector<Rational>> literal_pairs(const std::vector<Rational>& grid, const Rational& m1,
                                                   const Rational& m2, const Rational& q) {
  for (const auto& a1 : grid) {
    if (!(m1 < a1)) continue;
    for (const auto& a2 : grid) {
      if (a1 + a2 > q) break;
      if (m2 < a2) return std::vector<Rational>{a1, a2};
    }
  }
  return std::nullopt;
}

}  // namespace

GridVerdict oracle_grid(const KripkeModel& m, const PdlFormula& f, int state, const GridOptions& options) {
  if (!f.is(PdlFormula::Kind::Diamond)) throw Error(ErrorCode::InvalidArgument, "grid oracle needs a diamond formula");
  if (state < 0 || static_cast<std::size_t>(state) >= m.size()) {
    throw Error(ErrorCode::InvalidArgument, "state index out of range");
  }
  check_names(m, f);
  const StateSet body = eval_pdl(m, f.body());
  const WordLanguage lang = theta(f.program());
  const Rational& q = f.threshold();

  // Choose the unfolding depth so that the listed words stay few.
  std::vector<Word> words = enumerate_words(lang, options.max_listed_words + 1);
  std::size_t depth = options.unfold_cap;
  if (words.size() > options.max_listed_words) {
    const std::size_t first_missing = words.back().size();
    depth = std::min(depth, first_missing == 0 ? 0 : first_missing - 1);
  }
  std::vector<Word> listed;
  for (auto& w : words) {
    if (w.size() <= depth && listed.size() < options.max_listed_words) listed.push_back(std::move(w));
  }

  GridVerdict v;
  v.listed_words = listed.size();
  v.has_tail = !lang.is_finite() || words.size() > listed.size();
  v.tail_mass = 0L;
  if (v.has_tail) v.tail_mass = tail_mass(m, lang, body, state, depth);

  std::vector<Rational> masses;
  for (const auto& w : listed) masses.push_back(row_mass(block_kernel(m, w)[state], body));
  std::vector<Rational> dens = masses;
  dens.push_back(q);
  if (v.tail_mass.is_finite()) dens.push_back(v.tail_mass.value());
  v.exactness_bound = Integer(listed.size() + 1) * denominator_lcm(dens);
  v.denominator_bound = options.denominator_bound.value_or(v.exactness_bound);
  if (v.denominator_bound < 1) throw Error(ErrorCode::InvalidArgument, "denominator bound must be positive");

  if (v.tail_mass.is_infinite()) return v;  // no threshold vector can sum below q

  // Budget for the listed words; a tail needs strictly positive room left.
  const Rational budget = q - v.tail_mass.value();
  auto fits = [&](const Rational& sum) { return v.has_tail ? sum < budget : sum <= budget; };

  // A Farey grid of order N has more than N^2 / 4 points, so larger orders
  // are ruled out before building anything.
  if (!v.has_tail && listed.size() == 2 &&
      v.denominator_bound * v.denominator_bound <= 4 * Integer(static_cast<unsigned long>(options.max_literal_grid))) {
    const auto grid = farey_grid(v.denominator_bound.get_si());
    if (grid.size() <= options.max_literal_grid) {
      if (auto w = literal_pairs(grid, masses[0], masses[1], q)) {
        v.member = true;
        v.witness = *w;
        return v;
      }
      if (v.denominator_bound < v.exactness_bound) {
        throw Error(ErrorCode::GridTooCoarse, "no witness on a grid below the exactness bound");
      }
      return v;
    }
  }

  // The union is monotone in each a_i, so the least grid value above each
  // mass is the best candidate vector.
  Rational sum = 0;
  std::vector<Rational> witness;
  bool exists = true;
  for (const auto& x : masses) {
    auto a = farey_successor(x, v.denominator_bound);
    if (!a) {
      exists = false;
      break;
    }
    sum += *a;
    witness.push_back(*a);
  }
  if (exists && fits(sum)) {
    v.member = true;
    v.witness = std::move(witness);
    return v;
  }
  if (v.denominator_bound < v.exactness_bound) {
    throw Error(ErrorCode::GridTooCoarse, "no witness on a grid below the exactness bound");
  }
  return v;
}

bool oracle_grid_membership(const KripkeModel& m, const PdlFormula& f, int state,
                            std::optional<Integer> denominator_bound) {
  GridOptions options;
  options.denominator_bound = std::move(denominator_bound);
  return oracle_grid(m, f, state, options).member;
}

}  // namespace pdlwb
