#include "pdlwb/semantics.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <unordered_map>

#include "pdlwb/errors.hpp"
#include "pdlwb/linear.hpp"

namespace pdlwb {

std::size_t coordinate_cap() {
  if (const char* env = std::getenv("PDLWB_MAX_COORDS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultCoordinateCap;
}

namespace {

struct Edge {
  int to;
  Rational weight;
};

// Iterative Tarjan; components come out successors-first.
std::vector<std::vector<int>> strongly_connected(const std::vector<std::vector<Edge>>& graph,
                                                 const std::vector<char>& keep) {
  const int n = static_cast<int>(graph.size());
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  for (int root = 0; root < n; ++root) {
    if (!keep[root] || index[root] >= 0) continue;
    std::vector<std::pair<int, std::size_t>> work{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!work.empty()) {
      auto& [v, i] = work.back();
      if (i < graph[v].size()) {
        int w = graph[v][i++].to;
        if (!keep[w]) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          work.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> comp;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        out.push_back(std::move(comp));
      }
      int done = v;
      work.pop_back();
      if (!work.empty()) low[work.back().first] = std::min(low[work.back().first], low[done]);
    }
  }
  return out;
}

}  // namespace

NuResult nu(const KripkeModel& m, const WordLanguage& lang, const StateSet& target, std::size_t cap) {
  const std::size_t n = m.size();
  if (target.size() != n) throw Error(ErrorCode::DimensionMismatch, "target set does not match the model");
  std::vector<const Matrix*> kernels;
  for (const auto& a : lang.alphabet) {
    if (!m.has_primitive(a)) throw Error(ErrorCode::AlphabetMismatch, "model has no kernel for primitive '" + a + "'");
    kernels.push_back(&m.kernel(a));
  }
  const auto live = lang.live_states();
  NuResult result;
  result.values.assign(n, ExtendedRational(0));
  if (!live[lang.start]) return result;

  // Coordinates reachable from (start, s) through positive coefficients.
  std::unordered_map<std::size_t, int> id;
  std::vector<std::pair<int, int>> coords;
  std::deque<int> queue;
  auto intern = [&](int q, int s) {
    auto [it, fresh] = id.emplace(static_cast<std::size_t>(q) * n + s, static_cast<int>(coords.size()));
    if (fresh) {
      if (coords.size() >= cap) {
        throw Error(ErrorCode::ResourceLimit, "linear system exceeds " + std::to_string(cap) +
                                                  " coordinates; try the truncated oracle");
      }
      coords.push_back({q, s});
      queue.push_back(it->second);
    }
    return it->second;
  };
  for (std::size_t s = 0; s < n; ++s) intern(lang.start, static_cast<int>(s));
  std::vector<std::vector<Edge>> graph;
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    auto [q, s] = coords[c];
    std::map<int, Rational> row;
    for (std::size_t a = 0; a < kernels.size(); ++a) {
      int q2 = lang.delta[q][a];
      if (!live[q2]) continue;
      const auto& k = (*kernels[a])[s];
      for (std::size_t t = 0; t < n; ++t) {
        if (sgn(k[t]) == 0) continue;
        row[intern(q2, static_cast<int>(t))] += k[t];
      }
    }
    if (graph.size() <= static_cast<std::size_t>(c)) graph.resize(c + 1);
    for (auto& [to, w] : row) graph[c].push_back({to, std::move(w)});
  }
  const std::size_t size = coords.size();
  graph.resize(size);
  result.coordinates = size;

  std::vector<Rational> source(size);
  for (std::size_t c = 0; c < size; ++c) {
    if (lang.accepting[coords[c].first] && target[coords[c].second]) source[c] = 1;
  }

  // Only coordinates that reach a positive source can be nonzero.
  std::vector<std::vector<int>> reverse(size);
  for (std::size_t c = 0; c < size; ++c) {
    for (const auto& e : graph[c]) reverse[e.to].push_back(static_cast<int>(c));
  }
  std::vector<char> relevant(size, 0);
  std::vector<int> stack;
  for (std::size_t c = 0; c < size; ++c) {
    if (sgn(source[c]) > 0) {
      relevant[c] = 1;
      stack.push_back(static_cast<int>(c));
    }
  }
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int p : reverse[c]) {
      if (!relevant[p]) {
        relevant[p] = 1;
        stack.push_back(p);
      }
    }
  }

  std::vector<ExtendedRational> value(size, ExtendedRational(0));
  std::vector<int> local(size, -1);
  for (const auto& comp : strongly_connected(graph, relevant)) {
    const std::size_t k = comp.size();
    for (std::size_t i = 0; i < k; ++i) local[comp[i]] = static_cast<int>(i);
    std::vector<Rational> rhs(k);
    Matrix inner = zero_matrix(k);
    bool cyclic = k > 1;
    bool downstream_infinite = false;
    for (std::size_t i = 0; i < k; ++i) {
      const int c = comp[i];
      rhs[i] = source[c];
      for (const auto& e : graph[c]) {
        if (!relevant[e.to]) continue;
        if (local[e.to] >= 0) {
          inner[i][local[e.to]] += e.weight;
          if (e.to == c) cyclic = true;
        } else if (value[e.to].is_infinite()) {
          downstream_infinite = true;
        } else {
          rhs[i] += e.weight * value[e.to].value();
        }
      }
    }
    if (downstream_infinite) {
      for (int c : comp) value[c] = ExtendedRational::infinity();
    } else if (!cyclic) {
      value[comp[0]] = rhs[0];
    } else if (auto inv = m_matrix_inverse(inner)) {
      for (std::size_t i = 0; i < k; ++i) {
        Rational x = 0;
        for (std::size_t j = 0; j < k; ++j) x += (*inv)[i][j] * rhs[j];
        value[comp[i]] = x;
      }
    } else {
      result.divergence_detected = true;
      for (int c : comp) value[c] = ExtendedRational::infinity();
    }
    for (int c : comp) local[c] = -1;
  }
  for (std::size_t s = 0; s < n; ++s) result.values[s] = value[s];
  return result;
}

namespace {

void check_program(const KripkeModel& m, const Program& p) {
  for (const auto& rho : p.primitives()) {
    if (!m.has_primitive(rho)) throw Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + rho + "'");
  }
}

}  // namespace

void check_names(const KripkeModel& m, const PdlFormula& f) {
  for (const auto& p : f.atoms()) m.atom(p);
  for (const auto& rho : f.primitives()) {
    if (!m.has_primitive(rho)) throw Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + rho + "'");
  }
}

void check_names(const KripkeModel& m, const HmFormula& f) {
  for (const auto& p : f.atoms()) m.atom(p);
  for (const auto& rho : f.primitives()) m.kernel(rho);
}

const WordLanguage& Evaluator::language(const Program& p) {
  const std::string key = print_program(p);
  auto it = languages_.find(key);
  if (it == languages_.end()) it = languages_.emplace(key, theta(p)).first;
  return it->second;
}

const std::vector<ExtendedRational>& Evaluator::mass(const Program& p, const StateSet& target) {
  auto key = std::make_pair(print_program(p), target);
  auto it = masses_.find(key);
  if (it == masses_.end()) {
    check_program(m_, p);
    it = masses_.emplace(std::move(key), nu(m_, language(p), target, cap_).values).first;
  }
  return it->second;
}

StateSet Evaluator::pdl(const PdlFormula& f) {
  switch (f.kind()) {
    case PdlFormula::Kind::Top: return m_.all_states();
    case PdlFormula::Kind::Atom: return m_.atom(f.name());
    case PdlFormula::Kind::And: return intersect(pdl(f.left()), pdl(f.right()));
    case PdlFormula::Kind::Diamond: {
      const auto& mass_of = mass(f.program(), pdl(f.body()));
      StateSet out(m_.size());
      for (std::size_t s = 0; s < m_.size(); ++s) out[s] = mass_of[s].less_than(f.threshold());
      return out;
    }
  }
  return m_.no_states();
}

StateSet Evaluator::hm(const HmFormula& f) {
  switch (f.kind()) {
    case HmFormula::Kind::Top: return m_.all_states();
    case HmFormula::Kind::Atom: return m_.atom(f.name());
    case HmFormula::Kind::And: return intersect(hm(f.left()), hm(f.right()));
    case HmFormula::Kind::DiamondGeq:
      return threshold_set(m_, f.name(), hm(f.body()), Comparison::GreaterEq, f.threshold()).members();
  }
  return m_.no_states();
}

StateSet eval_pdl(const KripkeModel& m, const PdlFormula& f) {
  check_names(m, f);
  return Evaluator(m).pdl(f);
}

StateSet eval_hm(const KripkeModel& m, const HmFormula& f) {
  check_names(m, f);
  return Evaluator(m).hm(f);
}

StateSet complement(const StateSet& a) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = !a[i];
  return out;
}

StateSet intersect(const StateSet& a, const StateSet& b) {
  StateSet out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] && b[i];
  return out;
}

bool ThresholdSet::contains(std::size_t s) const {
  const ExtendedRational& x = mass.at(s);
  const ExtendedRational q(threshold);
  switch (comparison) {
    case Comparison::StrictLess: return x < q;
    case Comparison::GreaterEq: return x >= q;
    case Comparison::LessEq: return x <= q;
    case Comparison::GreaterThan: return x > q;
  }
  return false;
}

StateSet ThresholdSet::members() const {
  StateSet out(mass.size());
  for (std::size_t s = 0; s < mass.size(); ++s) out[s] = contains(s);
  return out;
}

std::vector<ExtendedRational> kernel_mass(const KripkeModel& m, const std::string& rho, const StateSet& a) {
  const Matrix& k = m.kernel(rho);
  std::vector<ExtendedRational> out;
  out.reserve(m.size());
  for (const auto& row : k) out.emplace_back(row_mass(row, a));
  return out;
}

ThresholdSet threshold_set(const KripkeModel& m, const std::string& rho, const StateSet& a, Comparison cmp,
                           const Rational& q) {
  return ThresholdSet{cmp, kernel_mass(m, rho, a), q};
}

namespace {

ThresholdSet fold_chain(const KripkeModel& m, StateSet a, const Chain& chain, Comparison cmp) {
  if (chain.empty()) throw Error(ErrorCode::InvalidArgument, "threshold chain is empty");
  std::optional<ThresholdSet> cur;
  for (const auto& [rho, q] : chain) {
    cur = threshold_set(m, rho, a, cmp, q);
    a = cur->members();
  }
  return *cur;
}

}  // namespace

ThresholdSet ik_set(const KripkeModel& m, const StateSet& a, const Chain& chain) {
  return fold_chain(m, a, chain, Comparison::GreaterEq);
}

ThresholdSet im_set(const KripkeModel& m, const StateSet& a, const Chain& chain) {
  return fold_chain(m, a, chain, Comparison::StrictLess);
}

}  // namespace pdlwb
