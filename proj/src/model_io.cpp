#include "pdlwb/model_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "pdlwb/errors.hpp"

namespace pdlwb {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidModel, what); }

Rational entry(const nlohmann::json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) invalid(where + ": expected a \"num/den\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    invalid(where + ": " + e.what());
  }
}

std::vector<std::string> string_list(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) invalid(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) invalid(where + "[" + std::to_string(i) + "]: expected a string");
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

}  // namespace

KripkeModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) invalid("model must be a JSON object");
  for (const char* key : {"states", "alphabet", "kernels"}) {
    if (!doc.contains(key)) invalid(std::string("missing field \"") + key + "\"");
  }
  auto states = string_list(doc["states"], "states");
  const std::size_t n = states.size();
  auto alphabet = string_list(doc["alphabet"], "alphabet");

  const auto& ks = doc["kernels"];
  if (!ks.is_object()) invalid("kernels: expected an object");
  std::map<std::string, Matrix> kernels;
  for (const auto& rho : alphabet) {
    if (rho == kEpsilon) continue;
    if (!ks.contains(rho)) invalid("kernels: no kernel for primitive '" + rho + "'");
  }
  for (auto it = ks.begin(); it != ks.end(); ++it) {
    const std::string& rho = it.key();
    if (std::find(alphabet.begin(), alphabet.end(), rho) == alphabet.end()) {
      invalid("kernels: primitive '" + rho + "' is not in the alphabet");
    }
    const auto& rows = it.value();
    const std::string where = "kernels." + rho;
    if (!rows.is_array() || rows.size() != n) invalid(where + ": expected " + std::to_string(n) + " rows");
    Matrix k;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& row = rows[i];
      if (!row.is_array() || row.size() != n) {
        invalid(where + "[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
      }
      std::vector<Rational> r;
      for (std::size_t j = 0; j < n; ++j) {
        r.push_back(entry(row[j], where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
      }
      k.push_back(std::move(r));
    }
    kernels.emplace(rho, std::move(k));
  }

  std::map<std::string, std::vector<std::string>> atoms;
  if (doc.contains("atoms")) {
    const auto& as = doc["atoms"];
    if (!as.is_object()) invalid("atoms: expected an object");
    for (auto it = as.begin(); it != as.end(); ++it) {
      atoms.emplace(it.key(), string_list(it.value(), "atoms." + it.key()));
    }
  }
  return KripkeModel(std::move(states), std::move(kernels), std::move(atoms));
}

KripkeModel parse_model(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  return model_from_json(doc);
}

KripkeModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) invalid("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

nlohmann::ordered_json model_to_json(const KripkeModel& m) {
  nlohmann::ordered_json doc;
  doc["states"] = m.states();
  nlohmann::ordered_json alphabet = nlohmann::ordered_json::array();
  nlohmann::ordered_json kernels = nlohmann::ordered_json::object();
  for (const auto& rho : m.alphabet()) {
    if (rho == kEpsilon) continue;
    alphabet.push_back(rho);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : m.kernel(rho)) {
      nlohmann::ordered_json r = nlohmann::ordered_json::array();
      for (const auto& x : row) r.push_back(format_rational(x));
      rows.push_back(std::move(r));
    }
    kernels[rho] = std::move(rows);
  }
  doc["alphabet"] = std::move(alphabet);
  doc["kernels"] = std::move(kernels);
  nlohmann::ordered_json atoms = nlohmann::ordered_json::object();
  for (const auto& [p, set] : m.atoms()) atoms[p] = m.names_of(set);
  doc["atoms"] = std::move(atoms);
  return doc;
}

}  // namespace pdlwb
