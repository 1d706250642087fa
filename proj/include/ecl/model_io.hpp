#pragma once

#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "causal.hpp"
#include "epistemic.hpp"
#include "error.hpp"

namespace ecl {

using json = nlohmann::ordered_json;

namespace detail {
inline std::string json_name(const json& j, const std::string& what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_boolean()) return j.get<bool>() ? "1" : "0";
  throw ValidationError(what + " must be a string");
}

inline std::vector<Variable> read_vars(const json& arr, bool exo) {
  std::vector<Variable> out;
  if (!arr.is_array()) throw ValidationError(std::string(exo ? "exogenous" : "endogenous") + " must be an array");
  for (const auto& v : arr) {
    if (!v.contains("name") || !v.contains("range")) throw ValidationError("variable needs name and range");
    Variable var{json_name(v["name"], "name"), exo, {}};
    if (!v["range"].is_array()) throw ValidationError("range of '" + var.name + "' must be an array");
    for (const auto& x : v["range"]) var.range.push_back(json_name(x, "range value"));
    out.push_back(std::move(var));
  }
  return out;
}

inline Valuation read_valuation(const json& j, const Signature& sig, bool allow_partial_endo) {
  if (!j.is_object()) throw ValidationError("valuation must be an object");
  Valuation a(sig.size());
  std::vector<bool> set(sig.size(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    int v = sig.index_of(it.key());
    if (v < 0) throw ValidationError("unknown variable '" + it.key() + "' in valuation");
    int x = sig.value_index(v, json_name(it.value(), "value"));
    if (x < 0) throw ValidationError("value out of range for '" + it.key() + "'");
    a[v] = static_cast<std::uint8_t>(x);
    set[v] = true;
  }
  for (std::size_t v = 0; v < sig.size(); ++v)
    if (!set[v] && (sig.is_exogenous(static_cast<int>(v)) || !allow_partial_endo))
      throw ValidationError("valuation misses '" + sig.var(static_cast<int>(v)).name + "'");
  return a;
}
}  // namespace detail

inline Signature load_signature(const json& doc) {
  if (!doc.is_object()) throw ValidationError("model must be a JSON object");
  auto exo = detail::read_vars(doc.value("exogenous", json::array()), true);
  auto endo = detail::read_vars(doc.value("endogenous", json::array()), false);
  std::vector<std::string> obs;
  if (doc.contains("observables"))
    for (const auto& o : doc["observables"]) obs.push_back(detail::json_name(o, "observable"));
  if (exo.empty() && endo.empty()) throw ValidationError("signature has no variables");
  return Signature(exo, endo, obs);
}

inline FunctionSet load_functions(const json& doc, std::shared_ptr<const Signature> sig) {
  std::vector<StructuralFunction> fns;
  for (const auto& v : doc.value("endogenous", json::array())) {
    std::string name = detail::json_name(v["name"], "name");
    int vi = sig->index_of(name);
    StructuralFunction f;
    for (const auto& p : v.value("parents", json::array())) {
      int pi = sig->index_of(detail::json_name(p, "parent"));
      if (pi < 0) throw ValidationError("unknown parent of '" + name + "'");
      f.parents.push_back(pi);
    }
    std::size_t cells = 1;
    for (int p : f.parents) cells *= sig->range_size(p);
    f.table.assign(cells, 0);
    std::vector<bool> seen(cells, false);
    if (!v.contains("table")) throw ValidationError("'" + name + "' has no table");
    for (const auto& row : v["table"]) {
      std::size_t idx = 0;
      const json& cond = row.value("if", json::object());
      if (cond.size() != f.parents.size()) throw ValidationError("table row of '" + name + "' must set every parent");
      for (int p : f.parents) {
        const std::string& pn = sig->var(p).name;
        if (!cond.contains(pn)) throw ValidationError("table row of '" + name + "' misses parent '" + pn + "'");
        int x = sig->value_index(p, detail::json_name(cond[pn], "value"));
        if (x < 0) throw ValidationError("value out of range for '" + pn + "' in table of '" + name + "'");
        idx = idx * sig->range_size(p) + x;
      }
      if (seen[idx]) throw ValidationError("duplicate table row in '" + name + "'");
      seen[idx] = true;
      if (!row.contains("then")) throw ValidationError("table row of '" + name + "' has no 'then'");
      int y = sig->value_index(vi, detail::json_name(row["then"], "value"));
      if (y < 0) throw ValidationError("table value out of range for '" + name + "'");
      f.table[idx] = static_cast<std::uint8_t>(y);
    }
    for (bool s : seen)
      if (!s) throw ValidationError("table of '" + name + "' is incomplete");
    fns.push_back(std::move(f));
  }
  FunctionSet F(sig, std::move(fns));
  if (!is_recursive(F)) throw ValidationError("structural functions are not recursive");
  return F;
}

inline PointedModel load_model(const json& doc) {
  auto sig = std::make_shared<const Signature>(load_signature(doc));
  FunctionSet F = load_functions(doc, sig);
  Team team;
  const json& t = doc.contains("team") ? doc["team"] : json("all");
  if (t.is_string()) {
    if (t.get<std::string>() != "all") throw ValidationError("team must be \"all\" or a list");
    team = all_solutions(F);
  } else if (t.is_array()) {
    for (const auto& m : t) {
      Valuation a = detail::read_valuation(m, *sig, true);
      Valuation s = F.solve(a);
      // endogenous values given explicitly must comply
      for (auto it = m.begin(); it != m.end(); ++it) {
        int v = sig->index_of(it.key());
        if (!sig->is_exogenous(v) && a[v] != s[v])
          throw ValidationError("team member " + to_string(*sig, a) + " does not comply with the functions");
      }
      team.push_back(s);
    }
  } else {
    throw ValidationError("team must be \"all\" or a list");
  }
  std::size_t n = team.size();
  EpistemicModel m(F, team);
  if (m.team.size() != n) throw ValidationError("duplicate valuation in team");
  if (!observable_constant(*sig, m.team)) throw ValidationError("team is not constant on the observables");
  Valuation actual = m.team.front();
  if (doc.contains("actual")) {
    Valuation a = detail::read_valuation(doc["actual"], *sig, true);
    actual = F.solve(a);
    for (auto it = doc["actual"].begin(); it != doc["actual"].end(); ++it) {
      int v = sig->index_of(it.key());
      if (!sig->is_exogenous(v) && a[v] != actual[v]) throw ValidationError("actual valuation does not comply");
    }
  }
  return PointedModel(std::move(m), std::move(actual));
}

inline json valuation_json(const Signature& sig, const Valuation& a) {
  json j = json::object();
  for (std::size_t v = 0; v < sig.size(); ++v) j[sig.var(static_cast<int>(v)).name] = sig.var(static_cast<int>(v)).range[a[v]];
  return j;
}

inline json save_model(const PointedModel& p) {
  const auto& sig = p.model.signature();
  const auto& F = p.model.functions;
  json doc;
  doc["exogenous"] = json::array();
  doc["endogenous"] = json::array();
  for (std::size_t v = 0; v < sig.size(); ++v) {
    const auto& var = sig.var(static_cast<int>(v));
    json jv{{"name", var.name}, {"range", var.range}};
    if (sig.is_exogenous(static_cast<int>(v))) {
      doc["exogenous"].push_back(jv);
      continue;
    }
    const auto& f = F.function(static_cast<int>(v));
    jv["parents"] = json::array();
    for (int pa : f.parents) jv["parents"].push_back(sig.var(pa).name);
    jv["table"] = json::array();
    std::vector<std::size_t> digits(f.parents.size(), 0);
    for (std::size_t idx = 0; idx < f.table.size(); ++idx) {
      json cond = json::object();
      for (std::size_t k = 0; k < f.parents.size(); ++k)
        cond[sig.var(f.parents[k]).name] = sig.var(f.parents[k]).range[digits[k]];
      jv["table"].push_back({{"if", cond}, {"then", var.range[f.table[idx]]}});
      for (std::size_t k = f.parents.size(); k-- > 0;) {
        if (++digits[k] < sig.range_size(f.parents[k])) break;
        digits[k] = 0;
      }
    }
    doc["endogenous"].push_back(jv);
  }
  doc["observables"] = json::array();
  for (int o : sig.observables()) doc["observables"].push_back(sig.var(o).name);
  doc["team"] = json::array();
  for (const auto& b : p.model.team) doc["team"].push_back(valuation_json(sig, b));
  doc["actual"] = valuation_json(sig, p.actual);
  return doc;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("bad JSON in '") + path + "': " + e.what());
  }
}

inline PointedModel load_model_file(const std::string& path) { return load_model(read_json_file(path)); }

}  // namespace ecl
