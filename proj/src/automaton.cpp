#include "pdlwb/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

#include "pdlwb/errors.hpp"

namespace pdlwb {

int WordLanguage::letter_index(const std::string& letter) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), letter);
  return it != alphabet.end() && *it == letter ? static_cast<int>(it - alphabet.begin()) : -1;
}

bool WordLanguage::accepts(const Word& w) const {
  int q = start;
  for (const auto& letter : w) {
    int a = letter_index(letter);
    if (a < 0) return false;
    q = delta[q][a];
  }
  return accepting[q] != 0;
}

std::vector<char> WordLanguage::live_states() const {
  const std::size_t n = num_states();
  std::vector<std::vector<int>> rev(n);
  for (std::size_t q = 0; q < n; ++q) {
    for (int t : delta[q]) rev[t].push_back(static_cast<int>(q));
  }
  std::vector<char> live(n, 0);
  std::vector<int> stack;
  for (std::size_t q = 0; q < n; ++q) {
    if (accepting[q]) {
      live[q] = 1;
      stack.push_back(static_cast<int>(q));
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : rev[q]) {
      if (!live[p]) {
        live[p] = 1;
        stack.push_back(p);
      }
    }
  }
  return live;
}

bool WordLanguage::is_finite() const {
  // Infinite iff a cycle runs through live states (all states are reachable).
  const auto live = live_states();
  const std::size_t n = num_states();
  std::vector<int> color(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (!live[root] || color[root]) continue;
    std::vector<std::pair<int, std::size_t>> stack{{static_cast<int>(root), 0}};
    color[root] = 1;
    while (!stack.empty()) {
      auto& [q, i] = stack.back();
      if (i == delta[q].size()) {
        color[q] = 2;
        stack.pop_back();
        continue;
      }
      int t = delta[q][i++];
      if (!live[t]) continue;
      if (color[t] == 1) return false;
      if (color[t] == 0) {
        color[t] = 1;
        stack.push_back({t, 0});
      }
    }
  }
  return true;
}

namespace {

// Thompson construction: epsilon moves plus one letter edge per primitive.
struct Nfa {
  std::vector<std::vector<int>> eps;
  std::vector<std::vector<std::pair<int, int>>> moves;  // (letter, target)

  int add() {
    eps.emplace_back();
    moves.emplace_back();
    return static_cast<int>(eps.size()) - 1;
  }
};

struct Fragment {
  int in;
  int out;
};

Fragment build(Nfa& nfa, const Program& p, const std::vector<std::string>& alphabet) {
  switch (p.kind()) {
    case Program::Kind::Epsilon: {
      int s = nfa.add();
      return {s, s};
    }
    case Program::Kind::Primitive: {
      int s = nfa.add();
      int t = nfa.add();
      int a = static_cast<int>(std::lower_bound(alphabet.begin(), alphabet.end(), p.name()) - alphabet.begin());
      nfa.moves[s].push_back({a, t});
      return {s, t};
    }
    case Program::Kind::Seq: {
      Fragment l = build(nfa, p.left(), alphabet);
      Fragment r = build(nfa, p.right(), alphabet);
      nfa.eps[l.out].push_back(r.in);
      return {l.in, r.out};
    }
    case Program::Kind::Choice: {
      Fragment l = build(nfa, p.left(), alphabet);
      Fragment r = build(nfa, p.right(), alphabet);
      int s = nfa.add();
      int t = nfa.add();
      nfa.eps[s] = {l.in, r.in};
      nfa.eps[l.out].push_back(t);
      nfa.eps[r.out].push_back(t);
      return {s, t};
    }
    case Program::Kind::Star: {
      Fragment b = build(nfa, p.body(), alphabet);
      int s = nfa.add();
      nfa.eps[s].push_back(b.in);
      nfa.eps[b.out].push_back(s);
      return {s, s};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown program node");
}

std::vector<int> closure(const Nfa& nfa, std::vector<int> set) {
  std::vector<char> seen(nfa.eps.size(), 0);
  for (int q : set) seen[q] = 1;
  std::vector<int> stack = set;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int t : nfa.eps[q]) {
      if (!seen[t]) {
        seen[t] = 1;
        set.push_back(t);
        stack.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

WordLanguage determinize(const Nfa& nfa, Fragment frag, std::vector<std::string> alphabet) {
  WordLanguage d;
  const std::size_t k = alphabet.size();
  d.alphabet = std::move(alphabet);
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> sets;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = index.emplace(set, static_cast<int>(sets.size()));
    if (fresh) {
      if (sets.size() >= kMaxDfaStates) {
        throw Error(ErrorCode::ResourceLimit, "automaton exceeds " + std::to_string(kMaxDfaStates) + " states");
      }
      sets.push_back(std::move(set));
    }
    return it->second;
  };
  intern(closure(nfa, {frag.in}));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<std::vector<int>> next(k);
    for (int q : sets[i]) {
      for (auto [a, t] : nfa.moves[q]) next[a].push_back(t);
    }
    std::vector<int> row(k);
    for (std::size_t a = 0; a < k; ++a) row[a] = intern(closure(nfa, std::move(next[a])));
    d.delta.push_back(std::move(row));
    d.accepting.push_back(std::binary_search(sets[i].begin(), sets[i].end(), frag.out) ? 1 : 0);
  }
  d.start = 0;
  return d;
}

// Moore refinement followed by breadth-first renumbering.
WordLanguage minimize(const WordLanguage& d) {
  const std::size_t n = d.num_states();
  const std::size_t k = d.alphabet.size();
  std::vector<int> cls(n);
  for (std::size_t q = 0; q < n; ++q) cls[q] = d.accepting[q];
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<int>, int> sig;
    std::vector<int> next(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> key{cls[q]};
      for (std::size_t a = 0; a < k; ++a) key.push_back(cls[d.delta[q][a]]);
      next[q] = sig.emplace(std::move(key), static_cast<int>(sig.size())).first->second;
    }
    cls = std::move(next);
    if (sig.size() == count) break;
    count = sig.size();
  }
  std::vector<int> rep(count, -1);
  for (std::size_t q = 0; q < n; ++q) {
    if (rep[cls[q]] < 0) rep[cls[q]] = static_cast<int>(q);
  }

  WordLanguage m;
  m.alphabet = d.alphabet;
  std::vector<int> number(count, -1);
  std::deque<int> queue{cls[d.start]};
  number[cls[d.start]] = 0;
  std::vector<int> order;
  while (!queue.empty()) {
    int c = queue.front();
    queue.pop_front();
    order.push_back(c);
    for (std::size_t a = 0; a < k; ++a) {
      int t = cls[d.delta[rep[c]][a]];
      if (number[t] < 0) {
        number[t] = static_cast<int>(order.size() + queue.size());
        queue.push_back(t);
      }
    }
  }
  for (int c : order) {
    std::vector<int> row(k);
    for (std::size_t a = 0; a < k; ++a) row[a] = number[cls[d.delta[rep[c]][a]]];
    m.delta.push_back(std::move(row));
    m.accepting.push_back(d.accepting[rep[c]]);
  }
  m.start = 0;
  auto live = m.live_states();
  for (std::size_t q = 0; q < live.size(); ++q) {
    if (!live[q]) m.sink = static_cast<int>(q);
  }
  return m;
}

}  // namespace

WordLanguage theta(const Program& p) {
  auto prims = p.primitives();
  std::vector<std::string> alphabet(prims.begin(), prims.end());
  Nfa nfa;
  Fragment frag = build(nfa, p, alphabet);
  return minimize(determinize(nfa, frag, std::move(alphabet)));
}

WordLanguage language_of(const WordSet& words, std::vector<std::string> alphabet) {
  for (const auto& w : words) alphabet.insert(alphabet.end(), w.begin(), w.end());
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  Nfa nfa;
  Fragment frag{nfa.add(), nfa.add()};
  for (const auto& w : words) {
    int q = frag.in;
    for (const auto& letter : w) {
      int t = nfa.add();
      int a = static_cast<int>(std::lower_bound(alphabet.begin(), alphabet.end(), letter) - alphabet.begin());
      nfa.moves[q].push_back({a, t});
      q = t;
    }
    nfa.eps[q].push_back(frag.out);
  }
  return minimize(determinize(nfa, frag, std::move(alphabet)));
}

std::vector<Word> enumerate_words(const WordLanguage& l, std::size_t n) {
  std::vector<Word> out;
  if (n == 0) return out;
  const std::size_t states = l.num_states();
  const std::size_t k = l.alphabet.size();
  const bool finite = l.is_finite();
  // reach[r][q]: some accepting state is reachable from q in exactly r steps.
  std::vector<std::vector<char>> reach{std::vector<char>(l.accepting.begin(), l.accepting.end())};
  auto ensure = [&](std::size_t r) {
    while (reach.size() <= r) {
      const auto& prev = reach.back();
      std::vector<char> cur(states, 0);
      for (std::size_t q = 0; q < states; ++q) {
        for (std::size_t a = 0; a < k && !cur[q]; ++a) cur[q] = prev[l.delta[q][a]];
      }
      reach.push_back(std::move(cur));
    }
  };
  Word word;
  // Depth-first in letter order; pruning keeps every branch productive.
  auto visit = [&](auto&& self, int q, std::size_t remaining) -> void {
    if (out.size() >= n) return;
    if (remaining == 0) {
      out.push_back(word);
      return;
    }
    for (std::size_t a = 0; a < k; ++a) {
      int t = l.delta[q][a];
      if (!reach[remaining - 1][t]) continue;
      word.push_back(l.alphabet[a]);
      self(self, t, remaining - 1);
      word.pop_back();
      if (out.size() >= n) return;
    }
  };
  for (std::size_t len = 0; out.size() < n; ++len) {
    if (finite && len >= states) break;
    ensure(len);
    if (reach[len][l.start]) visit(visit, l.start, len);
  }
  return out;
}

std::string to_text(const WordLanguage& l) {
  std::ostringstream os;
  os << "states " << l.num_states() << "\nstart " << l.start << "\naccepting";
  for (std::size_t q = 0; q < l.num_states(); ++q) {
    if (l.accepting[q]) os << ' ' << q;
  }
  os << "\nsink " << (l.sink ? std::to_string(*l.sink) : "-") << "\nstate";
  for (const auto& a : l.alphabet) os << ' ' << a;
  os << '\n';
  for (std::size_t q = 0; q < l.num_states(); ++q) {
    os << q;
    for (int t : l.delta[q]) os << ' ' << t;
    os << '\n';
  }
  return os.str();
}

}  // namespace pdlwb
