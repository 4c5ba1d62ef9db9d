#include "pdlwb/model.hpp"

#include <algorithm>
#include <set>

#include "pdlwb/errors.hpp"

namespace pdlwb {

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Rational>(n)); }

Matrix kleisli(const Matrix& k1, const Matrix& k2) {
  const std::size_t n = k1.size();
  if (k2.size() != n) throw Error(ErrorCode::DimensionMismatch, "kernels have different dimensions");
  for (const auto& row : k1) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "kernel is not square");
  }
  for (const auto& row : k2) {
    if (row.size() != n) throw Error(ErrorCode::DimensionMismatch, "kernel is not square");
  }
  Matrix out = zero_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      if (sgn(k1[i][k]) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(k2[k][j]) != 0) out[i][j] += k1[i][k] * k2[k][j];
      }
    }
  }
  return out;
}

Rational row_mass(const std::vector<Rational>& row, const StateSet& a) {
  Rational sum = 0;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (a[t]) sum += row[t];
  }
  return sum;
}

KripkeModel::KripkeModel(std::vector<std::string> states, std::map<std::string, Matrix> kernels,
                         std::map<std::string, std::vector<std::string>> atoms)
    : states_(std::move(states)) {
  const std::size_t n = states_.size();
  if (n == 0) throw Error(ErrorCode::InvalidModel, "model has no states");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (states_[i].empty()) throw Error(ErrorCode::InvalidModel, "state " + std::to_string(i) + " has an empty name");
    if (!seen.insert(states_[i]).second) {
      throw Error(ErrorCode::InvalidModel, "duplicate state name '" + states_[i] + "' at index " + std::to_string(i));
    }
  }
  for (auto& [name, k] : kernels) {
    if (name == kEpsilon) throw Error(ErrorCode::InvalidModel, "the eps kernel is implied and must not be given");
    if (!is_identifier(name)) throw Error(ErrorCode::InvalidModel, "primitive '" + name + "' is not an identifier");
    if (k.size() != n) {
      throw Error(ErrorCode::InvalidModel, "kernel " + name + " has " + std::to_string(k.size()) + " rows, expected " +
                                               std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (k[i].size() != n) {
        throw Error(ErrorCode::InvalidModel, "kernel " + name + " row " + std::to_string(i) + " has " +
                                                 std::to_string(k[i].size()) + " entries, expected " +
                                                 std::to_string(n));
      }
      Rational sum = 0;
      for (std::size_t j = 0; j < n; ++j) {
        k[i][j].canonicalize();
        if (sgn(k[i][j]) < 0) {
          throw Error(ErrorCode::InvalidModel, "kernel " + name + " entry [" + std::to_string(i) + "][" +
                                                   std::to_string(j) + "] is negative");
        }
        sum += k[i][j];
      }
      if (sum > 1) {
        throw Error(ErrorCode::InvalidModel, "kernel " + name + " row " + std::to_string(i) + " sums to " +
                                                 format_rational(sum) + " > 1");
      }
    }
    alphabet_.push_back(name);
  }
  kernels_ = std::move(kernels);
  kernels_.emplace(std::string(kEpsilon), identity_matrix(n));
  alphabet_.push_back(std::string(kEpsilon));
  std::sort(alphabet_.begin(), alphabet_.end());

  for (auto& [name, members] : atoms) {
    if (!is_identifier(name)) throw Error(ErrorCode::InvalidModel, "atom '" + name + "' is not an identifier");
    StateSet set(n, false);
    for (const auto& s : members) {
      auto it = std::find(states_.begin(), states_.end(), s);
      if (it == states_.end()) throw Error(ErrorCode::InvalidModel, "atom " + name + " names unknown state '" + s + "'");
      set[it - states_.begin()] = true;
    }
    atoms_.emplace(name, std::move(set));
  }
}

const Matrix& KripkeModel::kernel(const std::string& primitive) const {
  auto it = kernels_.find(primitive);
  if (it == kernels_.end()) throw Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + primitive + "'");
  return it->second;
}

const StateSet& KripkeModel::atom(const std::string& name) const {
  auto it = atoms_.find(name);
  if (it == atoms_.end()) throw Error(ErrorCode::UnknownAtom, "unknown atomic proposition '" + name + "'");
  return it->second;
}

std::vector<std::string> KripkeModel::atom_names() const {
  std::vector<std::string> out;
  for (const auto& [name, set] : atoms_) out.push_back(name);
  return out;
}

int KripkeModel::state_index(const std::string& name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) throw Error(ErrorCode::InvalidArgument, "unknown state '" + name + "'");
  return static_cast<int>(it - states_.begin());
}

std::vector<std::string> KripkeModel::names_of(const StateSet& set) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (set[i]) out.push_back(states_[i]);
  }
  return out;
}

Matrix block_kernel(const KripkeModel& m, const Word& word) {
  Matrix out = identity_matrix(m.size());
  for (const auto& letter : word) out = kleisli(out, m.kernel(letter));
  return out;
}

namespace {

void require_same_signature(const KripkeModel& a, const KripkeModel& b) {
  if (a.alphabet() != b.alphabet()) throw Error(ErrorCode::AlphabetMismatch, "models have different alphabets");
  if (a.atom_names() != b.atom_names()) {
    throw Error(ErrorCode::AtomMismatch, "models have different atomic propositions");
  }
}

}  // namespace

Coproduct coproduct(const KripkeModel& m1, const KripkeModel& m2) {
  require_same_signature(m1, m2);
  const std::size_t n1 = m1.size();
  const std::size_t n = n1 + m2.size();
  std::vector<std::string> states;
  for (const auto& s : m1.states()) states.push_back("l:" + s);
  for (const auto& s : m2.states()) states.push_back("r:" + s);
  std::map<std::string, Matrix> kernels;
  for (const auto& rho : m1.alphabet()) {
    if (rho == kEpsilon) continue;
    Matrix k = zero_matrix(n);
    const Matrix& a = m1.kernel(rho);
    const Matrix& b = m2.kernel(rho);
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n1; ++j) k[i][j] = a[i][j];
    }
    for (std::size_t i = 0; i < m2.size(); ++i) {
      for (std::size_t j = 0; j < m2.size(); ++j) k[n1 + i][n1 + j] = b[i][j];
    }
    kernels.emplace(rho, std::move(k));
  }
  std::map<std::string, std::vector<std::string>> atoms;
  for (const auto& p : m1.atom_names()) {
    auto& members = atoms[p];
    for (const auto& s : m1.names_of(m1.atom(p))) members.push_back("l:" + s);
    for (const auto& s : m2.names_of(m2.atom(p))) members.push_back("r:" + s);
  }
  ModelMap left(n1), right(m2.size());
  for (std::size_t i = 0; i < n1; ++i) left[i] = static_cast<int>(i);
  for (std::size_t i = 0; i < m2.size(); ++i) right[i] = static_cast<int>(n1 + i);
  return {KripkeModel(std::move(states), std::move(kernels), std::move(atoms)), std::move(left), std::move(right)};
}

std::string Violation::describe(const KripkeModel& src, const KripkeModel& dst) const {
  if (kind == Kind::Atom) return "preimage of atom " + atom + " differs from its valuation";
  return "kernel " + primitive + " at state " + src.states()[source] + " into " + dst.states()[target] +
         ": expected " + format_rational(expected) + ", got " + format_rational(actual);
}

namespace {

void require_total(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f) {
  if (f.size() != src.size()) throw Error(ErrorCode::PartialMap, "map does not cover every source state");
  for (int t : f) {
    if (t < 0 || static_cast<std::size_t>(t) >= dst.size()) {
      throw Error(ErrorCode::PartialMap, "map sends a state outside the target model");
    }
  }
}

std::optional<Violation> compare_kernels(const std::string& label, const Matrix& k, const Matrix& l,
                                         const ModelMap& f, std::size_t dst_size) {
  for (std::size_t s = 0; s < f.size(); ++s) {
    std::vector<Rational> pushed(dst_size);
    for (std::size_t t = 0; t < f.size(); ++t) pushed[f[t]] += k[s][t];
    for (std::size_t t = 0; t < dst_size; ++t) {
      if (pushed[t] != l[f[s]][t]) {
        return Violation{Violation::Kind::Kernel, label, static_cast<int>(s), static_cast<int>(t), {},
                         l[f[s]][t], pushed[t]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> check_morphism(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f) {
  require_same_signature(src, dst);
  require_total(src, dst, f);
  for (const auto& rho : src.alphabet()) {
    if (auto v = compare_kernels(rho, src.kernel(rho), dst.kernel(rho), f, dst.size())) return v;
  }
  for (const auto& p : src.atom_names()) {
    if (preimage(f, dst.atom(p)) != src.atom(p)) {
      Violation v{Violation::Kind::Atom, {}, -1, -1, p, 0, 0};
      return v;
    }
  }
  return std::nullopt;
}

std::optional<Violation> check_block_morphism(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f,
                                              const Word& word) {
  require_same_signature(src, dst);
  require_total(src, dst, f);
  return compare_kernels(format_word(word), block_kernel(src, word), block_kernel(dst, word), f, dst.size());
}

bool is_surjective(const ModelMap& f, std::size_t target_size) {
  std::vector<bool> hit(target_size, false);
  for (int t : f) {
    if (t >= 0 && static_cast<std::size_t>(t) < target_size) hit[t] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

bool is_strictly_probabilistic(const KripkeModel& m) {
  for (const auto& [rho, k] : m.kernels()) {
    for (const auto& row : k) {
      Rational sum = 0;
      for (const auto& x : row) sum += x;
      if (sum != 1) return false;
    }
  }
  return true;
}

StateSet preimage(const ModelMap& f, const StateSet& target) {
  StateSet out(f.size(), false);
  for (std::size_t s = 0; s < f.size(); ++s) out[s] = target[f[s]];
  return out;
}

}  // namespace pdlwb
