#include "pdlwb/cli.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdlwb/automaton.hpp"
#include "pdlwb/equivalence.hpp"
#include "pdlwb/errors.hpp"
#include "pdlwb/model_io.hpp"
#include "pdlwb/oracles.hpp"
#include "pdlwb/ordinal.hpp"
#include "pdlwb/rewrite.hpp"
#include "pdlwb/semantics.hpp"
#include "pdlwb/syntax.hpp"

namespace pdlwb::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string format = "json";
  std::string model, left, right;
  std::string program;
  std::vector<std::string> formulas;
  std::string logic = "pdl";
  std::string state;
  std::string target;
  std::string mode;
  std::size_t max_words = 20;
  std::optional<long> denominator_bound;
  int depth = 0;
  unsigned jobs = 1;
  std::optional<std::size_t> max_coords;
};

// A finished command: the JSON document, its text rendering, and whether a
// boolean question got a negative answer.
struct Outcome {
  Json doc;
  std::string text;
  bool negative = false;
};

Json word_list(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(format_word(w));
  return out;
}

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : sep) + s;
  return out;
}

StateSet parse_target(const KripkeModel& m, const std::string& text) {
  StateSet set = m.no_states();
  std::stringstream in(text);
  std::string name;
  while (std::getline(in, name, ',')) {
    if (!name.empty()) set[m.state_index(name)] = true;
  }
  return set;
}

std::size_t cap_of(const Config& c) { return c.max_coords.value_or(coordinate_cap()); }

Json map_json(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f) {
  Json out = Json::object();
  for (std::size_t s = 0; s < f.size(); ++s) out[src.states()[s]] = dst.states()[f[s]];
  return out;
}

std::string map_text(const KripkeModel& src, const KripkeModel& dst, const ModelMap& f) {
  std::string out;
  for (std::size_t s = 0; s < f.size(); ++s) out += "  " + src.states()[s] + " -> " + dst.states()[f[s]] + "\n";
  return out;
}

Outcome cmd_parse(const Config& c) {
  Outcome r;
  if (!c.program.empty()) {
    const std::string printed = print_program(parse_program(c.program));
    r.doc = {{"kind", "program"}, {"printed", printed}};
    r.text = printed;
  }
  for (const auto& f : c.formulas) {
    const std::string printed = c.logic == "hm" ? print_hm(parse_hm(f)) : print_pdl(parse_pdl(f));
    r.doc = {{"kind", c.logic}, {"printed", printed}};
    r.text = printed;
  }
  return r;
}

Outcome cmd_weight(const Config& c) {
  const std::string w = to_string(weight(parse_program(c.program)));
  return {Json(w), w};
}

Outcome cmd_normalize(const Config& c) {
  const Program p = parse_program(c.program);
  Outcome r;
  if (weight(p).is_finite()) {
    Json steps = Json::array();
    std::string text;
    for (const auto& step : normalization_trace(p)) {
      Json position = Json::array();
      for (int i : step.position) position.push_back(i);
      steps.push_back({{"rule", rule_name(step.rule)},
                       {"position", position},
                       {"before", print_program(step.before)},
                       {"after", print_program(step.after)}});
      text += std::string(rule_name(step.rule)) + ": " + print_program(step.before) + " => " +
              print_program(step.after) + "\n";
    }
    const WordSet words = normalize_starfree(p);
    const std::vector<Word> listed(words.begin(), words.end());
    r.doc = {{"star_free", true}, {"steps", steps}, {"words", word_list(listed)}};
    std::vector<std::string> names;
    for (const auto& w : listed) names.push_back(format_word(w));
    r.text = text + "{" + join(names, ", ") + "}";
    return r;
  }
  const WordLanguage lang = theta(p);
  const auto words = enumerate_words(lang, c.max_words);
  r.doc = {{"star_free", false}, {"words", word_list(words)}, {"dfa_states", lang.num_states()},
           {"dfa", to_text(lang)}};
  std::vector<std::string> names;
  for (const auto& w : words) names.push_back(format_word(w));
  r.text = join(names, "\n") + "\n" + to_text(lang);
  return r;
}

Outcome cmd_lang(const Config& c) {
  const WordLanguage lang = theta(parse_program(c.program));
  const auto words = enumerate_words(lang, c.max_words);
  Outcome r;
  r.doc = {{"alphabet", lang.alphabet}, {"states", lang.num_states()}, {"finite", lang.is_finite()},
           {"words", word_list(words)}, {"dfa", to_text(lang)}};
  r.text = to_text(lang);
  return r;
}

Outcome cmd_check(const Config& c) {
  const KripkeModel m = load_model(c.model);
  const std::size_t cap = cap_of(c);
  const bool hm = c.logic == "hm";
  // Parse everything up front so input errors surface before any work.
  std::vector<PdlFormula> pdl;
  std::vector<HmFormula> hml;
  for (const auto& f : c.formulas) {
    if (hm) {
      hml.push_back(parse_hm(f));
      check_names(m, hml.back());
    } else {
      pdl.push_back(parse_pdl(f));
      check_names(m, pdl.back());
    }
  }
  const std::size_t n = c.formulas.size();
  std::vector<StateSet> results(n);
  std::vector<std::exception_ptr> failures(n);
  auto work = [&](std::size_t first) {
    Evaluator ev(m, cap);
    for (std::size_t i = first; i < n; i += c.jobs) {
      try {
        results[i] = hm ? ev.hm(hml[i]) : ev.pdl(pdl[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (c.jobs <= 1 || n <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::size_t>(c.jobs, n); ++j) pool.emplace_back(work, j);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  Outcome r;
  std::optional<int> state;
  if (!c.state.empty()) state = m.state_index(c.state);
  Json entries = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    Json entry;
    if (n > 1) entry["formula"] = c.formulas[i];
    entry["valid_in"] = m.names_of(results[i]);
    if (state) {
      const bool holds = results[i][*state];
      entry["holds"] = holds;
      r.negative = r.negative || !holds;
    }
    entries.push_back(entry);
    r.text += (n > 1 ? c.formulas[i] + ": " : "") + join(m.names_of(results[i]), " ");
    if (state) r.text += results[i][*state] ? " (holds at " + c.state + ")" : " (fails at " + c.state + ")";
    if (i + 1 < n) r.text += "\n";
  }
  r.doc = n == 1 ? entries[0] : entries;
  return r;
}

Outcome cmd_nu(const Config& c) {
  const KripkeModel m = load_model(c.model);
  const Program p = parse_program(c.program);
  for (const auto& a : p.primitives()) {
    if (!m.has_primitive(a)) throw Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + a + "'");
  }
  const NuResult res = nu(m, theta(p), parse_target(m, c.target), cap_of(c));
  Outcome r;
  Json values = Json::object();
  for (std::size_t s = 0; s < m.size(); ++s) {
    values[m.states()[s]] = format_extended(res.values[s]);
    r.text += m.states()[s] + " " + format_extended(res.values[s]) + "\n";
  }
  r.doc = {{"nu", values}, {"divergence_detected", res.divergence_detected}, {"coordinates", res.coordinates}};
  if (res.divergence_detected) r.text += "divergence detected\n";
  r.text.pop_back();
  return r;
}

Outcome cmd_oracle(const Config& c) {
  const KripkeModel m = load_model(c.model);
  Outcome r;
  if (c.mode == "trunc") {
    const Program p = parse_program(c.program);
    for (const auto& a : p.primitives()) {
      if (!m.has_primitive(a)) throw Error(ErrorCode::UnknownPrimitive, "unknown primitive '" + a + "'");
    }
    const auto values = oracle_nu_truncated(m, theta(p), parse_target(m, c.target), c.max_words);
    Json doc = Json::object();
    for (std::size_t s = 0; s < m.size(); ++s) {
      doc[m.states()[s]] = format_rational(values[s]);
      r.text += m.states()[s] + " " + format_rational(values[s]) + (s + 1 < m.size() ? "\n" : "");
    }
    r.doc = {{"mode", "trunc"}, {"max_len", c.max_words}, {"nu_truncated", doc}};
    return r;
  }
  if (c.formulas.size() != 1) throw Error(ErrorCode::InvalidArgument, "grid mode takes exactly one --formula");
  if (c.state.empty()) throw Error(ErrorCode::InvalidArgument, "grid mode needs --state");
  const PdlFormula f = parse_pdl(c.formulas[0]);
  check_names(m, f);
  GridOptions opts;
  if (c.denominator_bound) opts.denominator_bound = Integer(*c.denominator_bound);
  const GridVerdict v = oracle_grid(m, f, m.state_index(c.state), opts);
  Json witness = Json::array();
  for (const auto& a : v.witness) witness.push_back(format_rational(a));
  r.doc = {{"mode", "grid"},
           {"member", v.member},
           {"denominator_bound", v.denominator_bound.get_str()},
           {"exactness_bound", v.exactness_bound.get_str()},
           {"listed_words", v.listed_words},
           {"tail_mass", v.has_tail ? Json(format_extended(v.tail_mass)) : Json(nullptr)},
           {"witness", witness}};
  r.text = std::string(v.member ? "member" : "not member") + " (grid " + v.denominator_bound.get_str() + ")";
  r.negative = !v.member;
  return r;
}

Outcome cmd_quotient(const Config& c) {
  const KripkeModel m = load_model(c.model);
  const Partition part = refine_partition(m);
  const Quotient q = quotient_model(m, part);
  Outcome r;
  r.doc = {{"model", model_to_json(q.model)}, {"projection", map_json(m, q.model, q.projection)},
           {"rounds", part.rounds}};
  r.text = q.model.size() == m.size() ? "already minimal\n" : "";
  r.text += "projection:\n" + map_text(m, q.model, q.projection);
  r.text.pop_back();
  return r;
}

Json distinguisher_json(const Distinguisher& d, const KripkeModel& l, const KripkeModel& rm) {
  return {{"logic", d.logic},
          {"formula", d.formula},
          {"left_state", l.states()[d.left_state]},
          {"right_state", rm.states()[d.right_state]},
          {"holds_left", d.holds_left},
          {"holds_right", d.holds_right}};
}

Outcome cmd_equiv(const Config& c) {
  const KripkeModel l = load_model(c.left);
  const KripkeModel rm = load_model(c.right);
  Outcome r;
  if (c.mode == "hm") {
    const HmEquivalence h = hm_equivalent(l, rm, c.depth);
    r.doc = {{"verdict", h.equivalent}, {"mode", "hm"}, {"depth", h.depth}};
    if (h.equivalent) {
      Json w = Json::object();
      for (std::size_t s = 0; s < l.size(); ++s) w[l.states()[s]] = rm.states()[h.left_witness[s]];
      r.doc["witness"] = w;
    }
    r.text = std::string(h.equivalent ? "equivalent" : "not equivalent") + " (depth " + std::to_string(h.depth) + ")";
    r.negative = !h.equivalent;
    return r;
  }

  EquivalenceReport report;
  std::optional<Cospan> cospan;
  std::optional<Span> span;
  if (c.mode == "logical") {
    report = logically_equivalent(l, rm);
  } else if (c.mode == "behavioral") {
    auto res = behavioral_equivalence(l, rm);
    report = std::move(res.report);
    cospan = std::move(res.cospan);
  } else {
    auto res = bisimulation_span(l, rm);
    report = std::move(res.report);
    span = std::move(res.span);
  }
  r.negative = !report.equivalent;
  r.doc = {{"verdict", report.equivalent}, {"mode", c.mode}, {"sampled", report.sampled}};
  r.text = report.equivalent ? "equivalent" : "not equivalent";
  if (cospan) {
    r.doc["mediating"] = model_to_json(cospan->mediating);
    r.doc["maps"] = {{"left", map_json(l, cospan->mediating, cospan->left)},
                     {"right", map_json(rm, cospan->mediating, cospan->right)}};
    r.text += "\nleft:\n" + map_text(l, cospan->mediating, cospan->left) + "right:\n" +
              map_text(rm, cospan->mediating, cospan->right);
    r.text.pop_back();
  }
  if (span) {
    r.doc["mediating"] = model_to_json(span->mediating);
    r.doc["maps"] = {{"left", map_json(span->mediating, l, span->left)},
                     {"right", map_json(span->mediating, rm, span->right)}};
    r.text += "\nleft:\n" + map_text(span->mediating, l, span->left) + "right:\n" +
              map_text(span->mediating, rm, span->right);
    r.text.pop_back();
  }
  if (report.counterexample) {
    const auto& d = *report.counterexample;
    r.doc["counterexample"] = distinguisher_json(d, l, rm);
    r.text += "\n" + d.formula + " separates " + l.states()[d.left_state] + " (left) from " +
              rm.states()[d.right_state] + " (right)";
  }
  return r;
}

int exit_code(ErrorCode code) { return code == ErrorCode::ResourceLimit ? kResourceLimit : kInputError; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Exact model checker for probabilistic dynamic logic", "pdlwb"};
  app.require_subcommand(1, 1);
  app.option_defaults()->always_capture_default();
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--max-coords", c.max_coords, "Linear-solve coordinate cap (default from PDLWB_MAX_COORDS)")
      ->check(CLI::PositiveNumber);

  auto program = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--program", c.program, "Program term");
    if (required) o->required();
  };
  auto model = [&](CLI::App* sub) { sub->add_option("--model", c.model, "Model JSON file")->required(); };

  auto* parse = app.add_subcommand("parse", "Parse and pretty-print a program or formula");
  program(parse, false);
  parse->add_option("--formula", c.formulas, "Formula");
  parse->add_option("--logic", c.logic)->check(CLI::IsMember({"pdl", "hm"}));

  auto* weight_cmd = app.add_subcommand("weight", "Ordinal weight of a program");
  program(weight_cmd, true);

  auto* normalize = app.add_subcommand("normalize", "Normal form of a program");
  program(normalize, true);
  normalize->add_option("--max-words", c.max_words)->check(CLI::PositiveNumber);

  auto* lang = app.add_subcommand("lang", "Minimal automaton of a program's word language");
  program(lang, true);
  lang->add_option("--max-words", c.max_words)->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Validity set of formulas");
  model(check);
  check->add_option("--formula", c.formulas, "Formula (repeatable)")->required();
  check->add_option("--logic", c.logic)->check(CLI::IsMember({"pdl", "hm"}));
  check->add_option("--state", c.state, "Ask whether the formulas hold at this state");
  check->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* nu_cmd = app.add_subcommand("nu", "Accumulated mass of a program into a target set");
  model(nu_cmd);
  program(nu_cmd, true);
  nu_cmd->add_option("--target", c.target, "Comma-separated state names")->required();

  auto* oracle = app.add_subcommand("oracle", "Reference semantics by grid union or truncation");
  model(oracle);
  oracle->add_option("--mode", c.mode)->required()->check(CLI::IsMember({"grid", "trunc"}));
  oracle->add_option("--formula", c.formulas);
  oracle->add_option("--state", c.state);
  program(oracle, false);
  oracle->add_option("--target", c.target);
  oracle->add_option("--denominator-bound", c.denominator_bound)->check(CLI::PositiveNumber);
  oracle->add_option("--max-words", c.max_words, "Longest word summed in trunc mode")->check(CLI::PositiveNumber);

  auto* quotient = app.add_subcommand("quotient", "Minimize a model by partition refinement");
  model(quotient);

  auto* equiv = app.add_subcommand("equiv", "Compare two models");
  equiv->add_option("--left", c.left)->required();
  equiv->add_option("--right", c.right)->required();
  equiv->add_option("--mode", c.mode)->required()->check(CLI::IsMember({"logical", "behavioral", "bisim", "hm"}));
  equiv->add_option("--depth", c.depth, "Modal depth for hm mode (0 = number of states)")
      ->check(CLI::NonNegativeNumber);

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    Outcome r;
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "parse") {
      if (c.program.empty() == c.formulas.empty()) {
        throw Error(ErrorCode::InvalidArgument, "parse takes exactly one of --program or --formula");
      }
      r = cmd_parse(c);
    } else if (name == "weight") {
      r = cmd_weight(c);
    } else if (name == "normalize") {
      r = cmd_normalize(c);
    } else if (name == "lang") {
      r = cmd_lang(c);
    } else if (name == "check") {
      r = cmd_check(c);
    } else if (name == "nu") {
      r = cmd_nu(c);
    } else if (name == "oracle") {
      r = cmd_oracle(c);
    } else if (name == "quotient") {
      r = cmd_quotient(c);
    } else {
      r = cmd_equiv(c);
    }
    if (c.format == "json") {
      out << r.doc.dump(2) << "\n";
    } else {
      while (!r.text.empty() && r.text.back() == '\n') r.text.pop_back();
      out << r.text << "\n";
    }
    return r.negative ? kNegative : kOk;
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    if (e.code() == ErrorCode::ResourceLimit) {
      err << "hint: try `oracle --mode trunc` for a truncated approximation\n";
    }
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace pdlwb::cli
