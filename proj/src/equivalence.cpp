#include "pdlwb/equivalence.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>

#include "pdlwb/errors.hpp"
#include "pdlwb/semantics.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb {

Partition partition_from_labels(const std::vector<int>& labels) {
  Partition part;
  std::map<int, int> index;
  part.block_of.resize(labels.size());
  for (std::size_t s = 0; s < labels.size(); ++s) {
    auto [it, fresh] = index.emplace(labels[s], static_cast<int>(part.blocks.size()));
    if (fresh) part.blocks.emplace_back();
    part.blocks[it->second].push_back(static_cast<int>(s));
    part.block_of[s] = it->second;
  }
  return part;
}

Partition refine_partition(const KripkeModel& m) {
  const std::size_t n = m.size();
  std::vector<std::string> letters;
  for (const auto& a : m.alphabet()) {
    if (a != kEpsilon) letters.push_back(a);
  }

  using Key = std::pair<int, std::vector<Rational>>;
  auto relabel = [&](const std::vector<Key>& keys) {
    std::map<Key, int> ids;
    std::vector<int> labels(n);
    for (std::size_t s = 0; s < n; ++s) labels[s] = ids.emplace(keys[s], static_cast<int>(ids.size())).first->second;
    return labels;
  };

  // Initial split: atoms, then total mass of each primitive.
  std::vector<Key> keys(n);
  for (std::size_t s = 0; s < n; ++s) {
    int bits = 0;
    std::vector<Rational> sig;
    for (const auto& [p, set] : m.atoms()) sig.push_back(set[s] ? 1 : 0);
    for (const auto& a : letters) sig.push_back(row_mass(m.kernel(a)[s], m.all_states()));
    keys[s] = {bits, std::move(sig)};
  }
  Partition part = partition_from_labels(relabel(keys));

  while (true) {
    std::vector<StateSet> block_sets;
    for (const auto& b : part.blocks) {
      StateSet set(n, false);
      for (int s : b) set[s] = true;
      block_sets.push_back(std::move(set));
    }
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Rational> sig;
      for (const auto& a : letters) {
        for (const auto& c : block_sets) sig.push_back(row_mass(m.kernel(a)[s], c));
      }
      keys[s] = {part.block_of[s], std::move(sig)};
    }
    Partition next = partition_from_labels(relabel(keys));
    if (next.blocks.size() == part.blocks.size()) break;
    next.rounds = part.rounds + 1;
    part = std::move(next);
  }
  return part;
}

Quotient quotient_model(const KripkeModel& m, const Partition& part) {
  const std::size_t k = part.blocks.size();
  std::vector<StateSet> block_sets;
  std::vector<std::string> names;
  for (const auto& b : part.blocks) {
    StateSet set(m.size(), false);
    std::string name = "[";
    for (int s : b) {
      set[s] = true;
      if (name.size() > 1) name += ',';
      name += m.states()[s];
    }
    block_sets.push_back(std::move(set));
    names.push_back(name + "]");
  }
  std::map<std::string, Matrix> kernels;
  for (const auto& a : m.alphabet()) {
    if (a == kEpsilon) continue;
    const Matrix& kern = m.kernel(a);
    Matrix q = zero_matrix(k);
    for (std::size_t b = 0; b < k; ++b) {
      const int rep = part.blocks[b][0];
      for (std::size_t c = 0; c < k; ++c) {
        q[b][c] = row_mass(kern[rep], block_sets[c]);
        for (int other : part.blocks[b]) {
          if (row_mass(kern[other], block_sets[c]) != q[b][c]) {
            throw Error(ErrorCode::NotClassConstant, "kernel " + a + " differs on block " + names[b] + " between " +
                                                         m.states()[rep] + " and " + m.states()[other]);
          }
        }
      }
    }
    kernels.emplace(a, std::move(q));
  }
  std::map<std::string, std::vector<std::string>> atoms;
  for (const auto& [p, set] : m.atoms()) {
    auto& members = atoms[p];
    for (std::size_t b = 0; b < k; ++b) {
      bool any = false;
      for (int s : part.blocks[b]) any = any || set[s];
      if (any) members.push_back(names[b]);
    }
  }
  ModelMap proj(part.block_of.begin(), part.block_of.end());
  return {KripkeModel(std::move(names), std::move(kernels), std::move(atoms)), std::move(proj)};
}

ModelMap compose(const ModelMap& f, const ModelMap& g) {
  ModelMap out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = g.at(f[i]);
  return out;
}

namespace {

using Mask = std::uint64_t;

template <class F>
struct Entry {
  Mask mask;
  F formula;
};

Mask to_mask(const StateSet& s) {
  Mask out = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out |= Mask(1) << i;
  }
  return out;
}

bool has(Mask m, int i) { return (m >> i) & 1; }

std::vector<Rational> masses_into(const Matrix& k, Mask target) {
  std::vector<Rational> out(k.size());
  for (std::size_t s = 0; s < k.size(); ++s) {
    for (std::size_t t = 0; t < k.size(); ++t) {
      if (has(target, static_cast<int>(t))) out[s] += k[s][t];
    }
  }
  return out;
}

// Grows the definable sets (atoms, modal thresholds, intersections) until
// one separates a from b. PDL modalities are {K < q}, HM ones {K >= q}.
template <class F>
std::optional<F> search(const KripkeModel& m, int a, int b, bool pdl) {
  constexpr std::size_t kMaxSets = 4096;
  std::vector<Entry<F>> entries{{to_mask(m.all_states()), F::top()}};
  for (const auto& [p, set] : m.atoms()) entries.push_back({to_mask(set), F::atom(p)});
  std::set<Mask> seen;
  for (const auto& e : entries) {
    if (has(e.mask, a) != has(e.mask, b)) return e.formula;
    seen.insert(e.mask);
  }
  auto modal = [&](const std::string& rho, const Rational& q, const F& body) {
    if constexpr (std::is_same_v<F, PdlFormula>) {
      return PdlFormula::diamond(Program::primitive(rho), q, body);
    } else {
      return HmFormula::diamond_geq(rho, q, body);
    }
  };
  std::size_t done = 0;
  while (done < entries.size() && entries.size() < kMaxSets) {
    const std::size_t end = entries.size();
    for (std::size_t i = done; i < end; ++i) {
      for (const auto& rho : m.alphabet()) {
        if (!pdl && rho == kEpsilon) continue;
        const auto mass = masses_into(m.kernel(rho), entries[i].mask);
        if (mass[a] != mass[b]) {
          const bool a_low = mass[a] < mass[b];
          const Rational q = simplest_in_half_open(a_low ? mass[a] : mass[b], a_low ? mass[b] : mass[a]);
          return modal(rho, q, entries[i].formula);
        }
        std::vector<Rational> levels(mass.begin(), mass.end());
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
          const Rational q = simplest_in_half_open(levels[j], levels[j + 1]);
          Mask set = 0;
          for (std::size_t s = 0; s < mass.size(); ++s) {
            const bool in = pdl ? mass[s] < q : mass[s] >= q;
            if (in) set |= Mask(1) << s;
          }
          if (seen.insert(set).second) entries.push_back({set, modal(rho, q, entries[i].formula)});
        }
      }
    }
    // Intersections of the new sets with everything known so far.
    const std::size_t grown = entries.size();
    for (std::size_t i = end; i < grown && entries.size() < kMaxSets; ++i) {
      for (std::size_t j = 0; j < i && entries.size() < kMaxSets; ++j) {
        const Mask set = entries[i].mask & entries[j].mask;
        if (set != 0 && seen.insert(set).second) {
          entries.push_back({set, F::conj(entries[j].formula, entries[i].formula)});
        }
      }
    }
    done = end;
  }
  return std::nullopt;
}

}  // namespace

std::optional<Distinguisher> distinguish(const KripkeModel& m, int a, int b) {
  if (m.size() > 64) return std::nullopt;
  if (auto f = search<PdlFormula>(m, a, b, true)) {
    const StateSet v = eval_pdl(m, *f);
    return Distinguisher{"pdl", print_pdl(*f), a, b, v[a], v[b]};
  }
  if (auto f = search<HmFormula>(m, a, b, false)) {
    const StateSet v = eval_hm(m, *f);
    return Distinguisher{"hm", print_hm(*f), a, b, v[a], v[b]};
  }
  return std::nullopt;
}

EquivalenceReport logically_equivalent(const KripkeModel& m1, const KripkeModel& m2) {
  const Coproduct sum = coproduct(m1, m2);
  EquivalenceReport r;
  r.sampled = !(is_strictly_probabilistic(m1) && is_strictly_probabilistic(m2));
  r.partition = refine_partition(sum.model);
  const int n1 = static_cast<int>(m1.size());
  r.left_partners.resize(m1.size());
  r.right_partners.resize(m2.size());
  for (const auto& block : r.partition.blocks) {
    std::vector<int> left, right;
    for (int s : block) (s < n1 ? left : right).push_back(s < n1 ? s : s - n1);
    for (int s : left) r.left_partners[s] = right;
    for (int t : right) r.right_partners[t] = left;
    if (right.empty()) r.unmatched_left.insert(r.unmatched_left.end(), left.begin(), left.end());
    if (left.empty()) r.unmatched_right.insert(r.unmatched_right.end(), right.begin(), right.end());
  }
  std::sort(r.unmatched_left.begin(), r.unmatched_left.end());
  std::sort(r.unmatched_right.begin(), r.unmatched_right.end());
  r.equivalent = r.unmatched_left.empty() && r.unmatched_right.empty();
  if (!r.equivalent) {
    const bool from_left = !r.unmatched_left.empty();
    const int u = from_left ? sum.left[r.unmatched_left[0]] : sum.right[r.unmatched_right[0]];
    const int v = from_left ? sum.right[0] : sum.left[0];
    if (auto d = distinguish(sum.model, u, v)) {
      const int left_state = from_left ? u : v;
      const int right_state = (from_left ? v : u) - n1;
      r.counterexample = Distinguisher{d->logic, d->formula, left_state, right_state,
                                       from_left ? d->holds_left : d->holds_right,
                                       from_left ? d->holds_right : d->holds_left};
    }
  }
  return r;
}

namespace {

void require_morphism(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f, const char* what) {
  if (auto v = check_morphism(src, dst, f)) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not a morphism: " + v->describe(src, dst));
  }
  if (!is_surjective(f, dst.size())) throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not onto");
}

}  // namespace

CospanResult behavioral_equivalence(const KripkeModel& m1, const KripkeModel& m2) {
  CospanResult out{logically_equivalent(m1, m2), std::nullopt};
  if (!out.report.equivalent) return out;
  const Coproduct sum = coproduct(m1, m2);
  Quotient q = quotient_model(sum.model, out.report.partition);
  ModelMap left = compose(sum.left, q.projection);
  ModelMap right = compose(sum.right, q.projection);
  require_morphism(m1, q.model, left, "left cospan map");
  require_morphism(m2, q.model, right, "right cospan map");
  out.cospan = Cospan{std::move(q.model), std::move(left), std::move(right)};
  return out;
}

SpanResult bisimulation_span(const KripkeModel& m1, const KripkeModel& m2) {
  CospanResult co = behavioral_equivalence(m1, m2);
  SpanResult out{std::move(co.report), std::nullopt};
  if (!co.cospan) return out;
  const ModelMap& f1 = co.cospan->left;
  const ModelMap& f2 = co.cospan->right;
  const std::size_t classes = co.cospan->mediating.size();

  std::vector<std::pair<int, int>> pairs;
  for (std::size_t s = 0; s < m1.size(); ++s) {
    for (std::size_t t = 0; t < m2.size(); ++t) {
      if (f1[s] == f2[t]) pairs.push_back({static_cast<int>(s), static_cast<int>(t)});
    }
  }
  std::vector<std::string> names;
  ModelMap left, right;
  for (auto [s, t] : pairs) {
    names.push_back("(" + m1.states()[s] + "," + m2.states()[t] + ")");
    left.push_back(s);
    right.push_back(t);
  }
  std::vector<StateSet> fiber1(classes, m1.no_states()), fiber2(classes, m2.no_states());
  for (std::size_t s = 0; s < m1.size(); ++s) fiber1[f1[s]][s] = true;
  for (std::size_t t = 0; t < m2.size(); ++t) fiber2[f2[t]][t] = true;

  std::map<std::string, Matrix> kernels;
  for (const auto& a : m1.alphabet()) {
    if (a == kEpsilon) continue;
    const Matrix& k = m1.kernel(a);
    const Matrix& l = m2.kernel(a);
    Matrix w = zero_matrix(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      auto [s, t] = pairs[i];
      std::vector<Rational> mu(classes);
      for (std::size_t c = 0; c < classes; ++c) {
        mu[c] = row_mass(k[s], fiber1[c]);
        if (row_mass(l[t], fiber2[c]) != mu[c]) {
          throw Error(ErrorCode::MassMismatch, "class masses of " + names[i] + " disagree under " + a);
        }
      }
      for (std::size_t j = 0; j < pairs.size(); ++j) {
        auto [s2, t2] = pairs[j];
        const int c = f1[s2];
        if (sgn(mu[c]) == 0) continue;
        w[i][j] = k[s][s2] * l[t][t2] / mu[c];
      }
    }
    kernels.emplace(a, std::move(w));
  }
  std::map<std::string, std::vector<std::string>> atoms;
  for (const auto& [p, set] : m1.atoms()) {
    auto& members = atoms[p];
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (set[pairs[i].first]) members.push_back(names[i]);
    }
  }
  KripkeModel mediating(std::move(names), std::move(kernels), std::move(atoms));
  require_morphism(mediating, m1, left, "left span map");
  require_morphism(mediating, m2, right, "right span map");
  out.span = Span{std::move(mediating), std::move(left), std::move(right)};
  return out;
}

HmEquivalence hm_equivalent(const KripkeModel& m1, const KripkeModel& m2, int depth) {
  const Coproduct sum = coproduct(m1, m2);
  const KripkeModel& c = sum.model;
  const std::size_t n = c.size();
  if (n > 64) throw Error(ErrorCode::ResourceLimit, "hm_equivalent supports at most 64 states in the coproduct");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  if (depth == 0) depth = static_cast<int>(n);

  std::set<Mask> sets{to_mask(c.all_states())};
  for (const auto& [p, set] : c.atoms()) sets.insert(to_mask(set));
  auto close = [&](std::set<Mask>& family) {
    std::vector<Mask> todo(family.begin(), family.end());
    while (!todo.empty()) {
      const Mask x = todo.back();
      todo.pop_back();
      std::vector<Mask> snapshot(family.begin(), family.end());
      for (Mask y : snapshot) {
        if (family.insert(x & y).second) todo.push_back(x & y);
      }
    }
  };
  close(sets);

  HmEquivalence out;
  for (int level = 1; level <= depth; ++level) {
    std::set<Mask> next = sets;
    for (Mask body : sets) {
      for (const auto& a : c.alphabet()) {
        if (a == kEpsilon) continue;
        const auto mass = masses_into(c.kernel(a), body);
        for (const auto& q : mass) {
          if (sgn(q) <= 0) continue;
          Mask set = 0;
          for (std::size_t s = 0; s < n; ++s) {
            if (mass[s] >= q) set |= Mask(1) << s;
          }
          next.insert(set);
        }
      }
    }
    close(next);
    out.depth = level;
    if (next.size() == sets.size()) break;
    sets = std::move(next);
  }

  std::vector<std::vector<bool>> theory(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (Mask x : sets) theory[s].push_back(has(x, static_cast<int>(s)));
  }
  const std::size_t n1 = m1.size();
  out.left_witness.assign(n1, -1);
  out.right_witness.assign(m2.size(), -1);
  for (std::size_t s = 0; s < n1; ++s) {
    for (std::size_t t = 0; t < m2.size(); ++t) {
      if (theory[s] == theory[n1 + t]) {
        if (out.left_witness[s] < 0) out.left_witness[s] = static_cast<int>(t);
        if (out.right_witness[t] < 0) out.right_witness[t] = static_cast<int>(s);
      }
    }
  }
  out.equivalent = std::none_of(out.left_witness.begin(), out.left_witness.end(), [](int x) { return x < 0; }) &&
                   std::none_of(out.right_witness.begin(), out.right_witness.end(), [](int x) { return x < 0; });
  return out;
}

}  // namespace pdlwb
