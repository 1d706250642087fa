#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "causal.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "syntax.hpp"

namespace ecl {

enum class Mode { Single, Epistemic, Observable };

inline const char* mode_name(Mode m) {
  switch (m) {
    case Mode::Single: return "single";
    case Mode::Epistemic: return "epistemic";
    case Mode::Observable: return "obs";
  }
  return "?";
}

inline Mode mode_from_name(const std::string& s) {
  if (s == "single") return Mode::Single;
  if (s == "epistemic") return Mode::Epistemic;
  if (s == "obs") return Mode::Observable;
  throw ValidationError("unknown mode '" + s + "'");
}

using Team = std::vector<Valuation>;

inline void canonicalize(Team& t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

// A function set and a non-empty team of complying valuations.
struct EpistemicModel {
  FunctionSet functions;
  Team team;

  EpistemicModel() = default;
  EpistemicModel(FunctionSet F, Team t) : functions(std::move(F)), team(std::move(t)) {
    if (!functions.recursive()) throw ValidationError("function set is not recursive");
    if (team.empty()) throw ValidationError("empty team");
    for (const auto& a : team) {
      if (a.size() != functions.signature().size()) throw ValidationError("valuation has wrong arity");
      if (!functions.complies(a))
        throw ValidationError("valuation " + to_string(functions.signature(), a) + " does not comply");
    }
    auto n = team.size();
    canonicalize(team);
    if (team.size() != n) throw ValidationError("duplicate valuation in team");
  }

  const Signature& signature() const { return functions.signature(); }
  bool operator==(const EpistemicModel& o) const { return functions == o.functions && team == o.team; }
};

struct PointedModel {
  EpistemicModel model;
  Valuation actual;

  PointedModel() = default;
  PointedModel(EpistemicModel m, Valuation a) : model(std::move(m)), actual(std::move(a)) {
    if (!std::binary_search(model.team.begin(), model.team.end(), actual))
      throw ValidationError("actual valuation is not in the team");
  }
  bool operator==(const PointedModel& o) const { return model == o.model && actual == o.actual; }
};

inline bool observable_constant(const Signature& sig, const Team& t) {
  for (int o : sig.observables())
    for (const auto& b : t)
      if (b[o] != t.front()[o]) return false;
  return true;
}

inline EpistemicModel intervene_team(const EpistemicModel& m, const Assignment& asg) {
  if (asg.empty()) return m;
  EpistemicModel out;
  out.functions = m.functions.intervened(asg);
  out.team.reserve(m.team.size());
  for (const auto& b : m.team) out.team.push_back(out.functions.solve(apply_assignment(b, asg)));
  canonicalize(out.team);
  return out;
}

// Intervene, then keep the members that look like the intervened actual
// valuation on the observables.
inline PointedModel intervene_observable(const PointedModel& p, const Assignment& asg) {
  const auto& sig = p.model.signature();
  PointedModel out;
  out.model = intervene_team(p.model, asg);
  out.actual = out.model.functions.solve(apply_assignment(p.actual, asg));
  auto obs = sig.observables();
  std::erase_if(out.model.team, [&](const Valuation& b) {
    for (int o : obs)
      if (b[o] != out.actual[o]) return true;
    return false;
  });
  return out;
}

// ── Evaluation ──────────────────────────────────────────────────────

struct TraceNode {
  std::string formula;
  bool value = false;
  std::size_t team_size = 0;
  std::vector<TraceNode> children;
};

namespace detail {

inline bool eval(const EpistemicModel& m, const Valuation& a, const Formula& f, Mode mode, TraceNode* tr);

inline bool eval_traced(const EpistemicModel& m, const Valuation& a, const Formula& f, Mode mode, TraceNode* tr) {
  if (!tr) return eval(m, a, f, mode, nullptr);
  tr->children.emplace_back();
  TraceNode& node = tr->children.back();
  node.formula = to_string(f);
  node.team_size = m.team.size();
  node.value = eval(m, a, f, mode, &node);
  return node.value;
}

inline bool eval(const EpistemicModel& m, const Valuation& a, const Formula& f, Mode mode, TraceNode* tr) {
  switch (f.op()) {
    case Op::Atom: {
      const Atom& at = f.as_atom();
      if (!at.bound() || static_cast<std::size_t>(at.vi) >= a.size())
        throw ValidationError("atom '" + at.var + "=" + at.val + "' is not bound");
      return a[at.vi] == at.xi;
    }
    case Op::Not: return !eval_traced(m, a, f.arg(), mode, tr);
    case Op::And:
      return eval_traced(m, a, f.left(), mode, tr) && eval_traced(m, a, f.right(), mode, tr);
    case Op::Know:
      if (mode == Mode::Single) throw FragmentError("K is not defined on a single causal model");
      for (const auto& b : m.team)
        if (!eval_traced(m, b, f.arg(), mode, tr)) return false;
      return true;
    case Op::Intervene: {
      const auto& asg = f.assignment();
      for (const auto& p : asg)
        if (!p.bound()) throw ValidationError("intervention on '" + p.var + "' is not bound");
      if (asg.empty()) return eval_traced(m, a, f.arg(), mode, tr);
      if (mode == Mode::Observable) {
        PointedModel p;
        p.model = m;
        p.actual = a;
        auto q = intervene_observable(p, asg);
        return eval_traced(q.model, q.actual, f.arg(), mode, tr);
      }
      EpistemicModel n;
      Valuation b;
      if (mode == Mode::Single) {
        auto r = intervene_causal(m.functions, a, asg);
        n.functions = std::move(r.first);
        b = std::move(r.second);
        n.team = {b};
      } else {
        n = intervene_team(m, asg);
        b = n.functions.solve(apply_assignment(a, asg));
      }
      return eval_traced(n, b, f.arg(), mode, tr);
    }
    case Op::Announce: {
      if (mode == Mode::Single) throw FragmentError("announcement is not defined on a single causal model");
      if (!eval_traced(m, a, f.announced(), mode, tr)) return true;
      EpistemicModel n;
      n.functions = m.functions;
      for (const auto& b : m.team)
        if (eval(m, b, f.announced(), mode, nullptr)) n.team.push_back(b);
      return eval_traced(n, a, f.arg(), mode, tr);
    }
  }
  return false;
}

}  // namespace detail

inline bool evaluate(const PointedModel& p, const Formula& f, Mode mode, TraceNode* trace = nullptr) {
  if (mode == Mode::Observable && !observable_constant(p.model.signature(), p.model.team))
    throw ValidationError("team is not constant on the observables");
  if (!trace) return detail::eval(p.model, p.actual, f, mode, nullptr);
  trace->formula = to_string(f);
  trace->team_size = p.model.team.size();
  trace->children.clear();
  trace->value = detail::eval(p.model, p.actual, f, mode, trace);
  return trace->value;
}

// Members of the team where alpha holds; alpha is evaluated before the update.
inline EpistemicModel announce(const PointedModel& p, const Formula& alpha, Mode mode = Mode::Epistemic) {
  EpistemicModel out;
  out.functions = p.model.functions;
  for (const auto& b : p.model.team)
    if (detail::eval(p.model, b, alpha, mode, nullptr)) out.team.push_back(b);
  return out;
}

// Variables constant across the team, with their value.
inline std::vector<std::pair<int, int>> known_values(const EpistemicModel& m) {
  std::vector<std::pair<int, int>> out;
  for (std::size_t v = 0; v < m.signature().size(); ++v) {
    bool same = true;
    for (const auto& b : m.team) same = same && b[v] == m.team.front()[v];
    if (same) out.emplace_back(static_cast<int>(v), m.team.front()[v]);
  }
  return out;
}

}  // namespace ecl
