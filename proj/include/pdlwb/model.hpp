#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdlwb/rational.hpp"
#include "pdlwb/rewrite.hpp"

namespace pdlwb {

/// Dense square matrix; row = source state.
using Matrix = std::vector<std::vector<Rational>>;
/// Membership mask over a model's states.
using StateSet = std::vector<bool>;
/// Total map between state indices of two models.
using ModelMap = std::vector<int>;

Matrix identity_matrix(std::size_t n);
Matrix zero_matrix(std::size_t n);

/// Kleisli composition of finite kernels: the matrix product k1 * k2.
Matrix kleisli(const Matrix& k1, const Matrix& k2);

/// Sum of row entries over the states in a.
Rational row_mass(const std::vector<Rational>& row, const StateSet& a);

/// Finite stochastic Kripke model. The alphabet is sorted and always holds
/// eps, whose kernel is the identity.
class KripkeModel {
 public:
  /// Validates the invariants and throws InvalidModel naming the first
  /// violation. `kernels` must not mention eps.
  KripkeModel(std::vector<std::string> states, std::map<std::string, Matrix> kernels,
              std::map<std::string, std::vector<std::string>> atoms);

  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  /// Kernels of all primitives including eps.
  const std::map<std::string, Matrix>& kernels() const { return kernels_; }
  /// Throws UnknownPrimitive.
  const Matrix& kernel(const std::string& primitive) const;
  bool has_primitive(const std::string& primitive) const { return kernels_.count(primitive) != 0; }

  const std::map<std::string, StateSet>& atoms() const { return atoms_; }
  /// Throws UnknownAtom.
  const StateSet& atom(const std::string& name) const;
  std::vector<std::string> atom_names() const;

  /// Throws InvalidArgument when the name is not a state.
  int state_index(const std::string& name) const;
  StateSet all_states() const { return StateSet(size(), true); }
  StateSet no_states() const { return StateSet(size(), false); }
  /// Names of the members, in model order.
  std::vector<std::string> names_of(const StateSet& set) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> alphabet_;
  std::map<std::string, Matrix> kernels_;
  std::map<std::string, StateSet> atoms_;
};

/// Left-to-right Kleisli product of the letters; identity for eps.
/// Throws UnknownPrimitive.
Matrix block_kernel(const KripkeModel& m, const Word& word);

struct Coproduct {
  KripkeModel model;
  ModelMap left;
  ModelMap right;
};

/// Disjoint sum. States are renamed "l:<name>" and "r:<name>".
/// Throws AlphabetMismatch / AtomMismatch.
Coproduct coproduct(const KripkeModel& m1, const KripkeModel& m2);

struct Violation {
  enum class Kind { Kernel, Atom };
  Kind kind;
  std::string primitive;  // Kernel
  int source = -1;        // Kernel: source state of src
  int target = -1;        // Kernel: target state of dst
  std::string atom;       // Atom
  Rational expected;      // dst mass L(f(s))({t})
  Rational actual;        // src mass K(s)(f^-1{t})
  std::string describe(const KripkeModel& src, const KripkeModel& dst) const;
};

/// nullopt when f is a morphism src -> dst. Throws PartialMap when f is not
/// a total map into dst, AlphabetMismatch / AtomMismatch on signatures.
std::optional<Violation> check_morphism(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f);

/// Morphism condition for the block kernels of one word.
std::optional<Violation> check_block_morphism(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f,
                                              const Word& word);

bool is_surjective(const ModelMap& f, std::size_t target_size);

/// Every row of every kernel sums to exactly 1.
bool is_strictly_probabilistic(const KripkeModel& m);

/// Preimage of a target set under f.
StateSet preimage(const ModelMap& f, const StateSet& target);

}  // namespace pdlwb
