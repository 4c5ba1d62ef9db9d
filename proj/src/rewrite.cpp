#include "pdlwb/rewrite.hpp"

#include "pdlwb/errors.hpp"

namespace pdlwb {

std::string format_word(const Word& w) {
  if (w.empty()) return std::string(kEpsilon);
  std::string out;
  for (const auto& letter : w) {
    if (!out.empty()) out += ';';
    out += letter;
  }
  return out;
}

Word parse_word(std::string_view text) {
  Word w;
  if (text == kEpsilon) return w;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find(';', start);
    std::string_view letter = text.substr(start, end == std::string_view::npos ? text.npos : end - start);
    if (!is_identifier(letter)) {
      throw Error(ErrorCode::Syntax, "bad letter '" + std::string(letter) + "' in word", start);
    }
    w.emplace_back(letter);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return w;
}

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::DistLeft: return "d_l";
    case Rule::DistRight: return "d_r";
    case Rule::DistEps: return "d_eps";
    case Rule::DistStar: return "d_star";
  }
  return "?";
}

namespace {

std::optional<RewriteStep> match_here(const Program& node) {
  if (!node.is(Program::Kind::Seq)) return std::nullopt;
  const Program& l = node.left();
  const Program& r = node.right();
  if (r.is(Program::Kind::Choice)) {
    const Program& x = l;
    const Program& y = r.left();
    const Program& z = r.right();
    return RewriteStep{Rule::DistLeft, {}, {{"x", x}, {"y", y}, {"z", z}}, node,
                       Program::choice(Program::seq(x, y), Program::seq(x, z))};
  }
  if (l.is(Program::Kind::Choice)) {
    const Program& x = l.left();
    const Program& y = l.right();
    const Program& z = r;
    return RewriteStep{Rule::DistRight, {}, {{"x", x}, {"y", y}, {"z", z}}, node,
                       Program::choice(Program::seq(x, z), Program::seq(y, z))};
  }
  return std::nullopt;
}

std::optional<RewriteStep> find_innermost(const Program& node, std::vector<int>& path) {
  for (int i = 0; i < node.arity(); ++i) {
    path.push_back(i);
    if (auto step = find_innermost(node.child(i), path)) return step;
    path.pop_back();
  }
  auto step = match_here(node);
  if (step) step->position = path;
  return step;
}

void collect_words(const Program& p, WordSet& out) {
  if (p.is(Program::Kind::Choice)) {
    collect_words(p.left(), out);
    collect_words(p.right(), out);
    return;
  }
  // An irreducible star-free choice branch is a composition of letters.
  Word w;
  std::vector<const Program*> stack{&p};
  while (!stack.empty()) {
    const Program* q = stack.back();
    stack.pop_back();
    switch (q->kind()) {
      case Program::Kind::Seq:
        stack.push_back(&q->right());
        stack.push_back(&q->left());
        break;
      case Program::Kind::Primitive: w.push_back(q->name()); break;
      case Program::Kind::Epsilon: break;
      default: throw Error(ErrorCode::InvalidArgument, "term is not irreducible: " + print_program(p));
    }
  }
  out.insert(std::move(w));
}

}  // namespace

std::optional<RewriteStep> rewrite_step(const Program& p) {
  std::vector<int> path;
  auto step = find_innermost(p, path);
  if (step) {
    step->before = p;
    step->after = replace_at(p, step->position, step->after);
  }
  return step;
}

Program strip_units(const Program& p) {
  switch (p.kind()) {
    case Program::Kind::Seq: {
      Program l = strip_units(p.left());
      Program r = strip_units(p.right());
      if (l.is(Program::Kind::Epsilon)) return r;
      if (r.is(Program::Kind::Epsilon)) return l;
      return Program::seq(std::move(l), std::move(r));
    }
    case Program::Kind::Choice: return Program::choice(strip_units(p.left()), strip_units(p.right()));
    case Program::Kind::Star: return Program::star(strip_units(p.body()));
    default: return p;
  }
}

const Program& subtree_at(const Program& p, const std::vector<int>& position) {
  const Program* node = &p;
  for (int i : position) node = &node->child(i);
  return *node;
}

namespace {

Program replace_from(const Program& p, const std::vector<int>& position, std::size_t depth, const Program& repl) {
  if (depth == position.size()) return repl;
  const int i = position[depth];
  switch (p.kind()) {
    case Program::Kind::Seq:
    case Program::Kind::Choice: {
      Program l = i == 0 ? replace_from(p.left(), position, depth + 1, repl) : p.left();
      Program r = i == 1 ? replace_from(p.right(), position, depth + 1, repl) : p.right();
      return p.is(Program::Kind::Seq) ? Program::seq(std::move(l), std::move(r))
                                      : Program::choice(std::move(l), std::move(r));
    }
    case Program::Kind::Star:
      if (i == 0) return Program::star(replace_from(p.body(), position, depth + 1, repl));
      break;
    default: break;
  }
  throw Error(ErrorCode::InvalidArgument, "address leaves the tree");
}

}  // namespace

Program replace_at(const Program& p, const std::vector<int>& position, const Program& replacement) {
  return replace_from(p, position, 0, replacement);
}

namespace {

Program join(const Program& x, const Program& y) {
  if (x.is(Program::Kind::Epsilon)) return y;
  if (y.is(Program::Kind::Epsilon)) return x;
  return Program::seq(x, y);
}

// Innermost normalization by recursion. The order of rule applications is
// the leftmost-innermost one: children are normalized left to right before
// their parent is inspected, and a rewritten subtree is normalized again in
// place. `root` tracks the whole term so recorded steps carry full terms.
struct Normalizer {
  Program root;
  std::vector<RewriteStep>* trace = nullptr;

  Program run(const Program& node, std::vector<int>& path) {
    if (node.arity() == 0) return node;
    path.push_back(0);
    Program l = run(node.left(), path);
    path.back() = 1;
    Program r = run(node.right(), path);
    path.pop_back();
    if (node.is(Program::Kind::Choice)) return Program::choice(std::move(l), std::move(r));
    auto step = match_here(Program::seq(l, r));
    if (!step) return Program::seq(std::move(l), std::move(r));
    const Program& x = step->substitution.at("x");
    const Program& y = step->substitution.at("y");
    const Program& z = step->substitution.at("z");
    Program next = step->rule == Rule::DistLeft ? Program::choice(join(x, y), join(x, z))
                                                : Program::choice(join(x, z), join(y, z));
    if (trace) {
      step->position = path;
      step->before = root;
      step->after = replace_at(root, path, step->after);
      trace->push_back(std::move(*step));
    }
    root = replace_at(root, path, next);
    return run(next, path);
  }
};

Program normalize(const Program& p, std::vector<RewriteStep>* trace) {
  if (p.contains_star()) throw Error(ErrorCode::InfiniteWeight, "program contains a star: " + print_program(p));
  Normalizer n{strip_units(p), trace};
  const Program start = n.root;
  std::vector<int> path;
  return n.run(start, path);
}

}  // namespace

std::vector<RewriteStep> normalization_trace(const Program& p) {
  std::vector<RewriteStep> trace;
  normalize(p, &trace);
  return trace;
}

WordSet normalize_starfree(const Program& p) {
  const Program cur = normalize(p, nullptr);
  WordSet out;
  collect_words(cur, out);
  return out;
}

}  // namespace pdlwb
