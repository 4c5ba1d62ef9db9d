#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "pdlwb/rational.hpp"

namespace pdlwb {

inline constexpr std::string_view kEpsilon = "eps";

/// Immutable program tree over primitive names. Copies share structure.
class Program {
 public:
  enum class Kind { Primitive, Epsilon, Seq, Choice, Star };

  static Program primitive(std::string name);
  static Program epsilon();
  static Program seq(Program left, Program right);
  static Program choice(Program left, Program right);
  static Program star(Program body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  const Program& left() const { return *node_->left; }
  const Program& right() const { return *node_->right; }
  const Program& body() const { return *node_->left; }

  /// Number of children (0, 1 or 2), and child access by Dewey index.
  int arity() const;
  const Program& child(int index) const;

  bool contains_star() const;
  std::size_t size() const;
  std::size_t depth() const;
  /// Primitive names other than eps.
  std::set<std::string> primitives() const;

  friend bool operator==(const Program& a, const Program& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Program> left;
    std::shared_ptr<const Program> right;
  };
  explicit Program(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class PdlFormula {
 public:
  enum class Kind { Top, Atom, And, Diamond };

  static PdlFormula top();
  static PdlFormula atom(std::string name);
  static PdlFormula conj(PdlFormula left, PdlFormula right);
  /// Holds where the accumulated mass into the body's validity set is < threshold.
  static PdlFormula diamond(Program program, Rational threshold, PdlFormula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  const PdlFormula& left() const { return *node_->left; }
  const PdlFormula& right() const { return *node_->right; }
  const PdlFormula& body() const { return *node_->left; }
  const Program& program() const { return *node_->program; }
  const Rational& threshold() const { return node_->threshold; }

  std::set<std::string> atoms() const;
  std::set<std::string> primitives() const;
  int modal_depth() const;

  friend bool operator==(const PdlFormula& a, const PdlFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Program> program;
    Rational threshold;
    std::shared_ptr<const PdlFormula> left;
    std::shared_ptr<const PdlFormula> right;
  };
  explicit PdlFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class HmFormula {
 public:
  enum class Kind { Top, Atom, And, DiamondGeq };

  static HmFormula top();
  static HmFormula atom(std::string name);
  static HmFormula conj(HmFormula left, HmFormula right);
  /// Holds where the primitive's kernel puts mass >= threshold on the body's set.
  static HmFormula diamond_geq(std::string primitive, Rational threshold, HmFormula body);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }
  const std::string& name() const { return node_->name; }
  const HmFormula& left() const { return *node_->left; }
  const HmFormula& right() const { return *node_->right; }
  const HmFormula& body() const { return *node_->left; }
  const Rational& threshold() const { return node_->threshold; }

  std::set<std::string> atoms() const;
  std::set<std::string> primitives() const;
  int modal_depth() const;

  friend bool operator==(const HmFormula& a, const HmFormula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    Rational threshold;
    std::shared_ptr<const HmFormula> left;
    std::shared_ptr<const HmFormula> right;
  };
  explicit HmFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Surface syntax:
//   prog := choice ; choice := seq {"u" seq} ; seq := star {";" star}
//   star := atom {"*"} ; atom := ident | "eps" | "(" prog ")"
//   pdl  := unit {"&" unit} ; unit := "tt" | ident | "(" pdl ")" | "<" prog ">" "{" q "}" unit
//   hm   := same, modality "hm" "<" ident ">" "{" q "}" unit
// Errors are thrown as Error with a byte offset.
Program parse_program(std::string_view text);
PdlFormula parse_pdl(std::string_view text);
HmFormula parse_hm(std::string_view text);

std::string print_program(const Program& p);
std::string print_pdl(const PdlFormula& f);
std::string print_hm(const HmFormula& f);

bool is_identifier(std::string_view text);
bool is_reserved(std::string_view text);

}  // namespace pdlwb
