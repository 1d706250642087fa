#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "causal.hpp"
#include "error.hpp"
#include "explore.hpp"
#include "formula.hpp"
#include "fragment.hpp"
#include "syntax.hpp"

namespace ecl {

// LC:     causal axioms
// LKC:    LC plus knowledge
// LPAKC:  LKC plus announcements
// LPAKCO: LPAKC without CM, plus OC and PD (observables semantics)
enum class ProofSystem { LC, LKC, LPAKC, LPAKCO };

inline const char* system_name(ProofSystem s) {
  switch (s) {
    case ProofSystem::LC: return "LC";
    case ProofSystem::LKC: return "LKC";
    case ProofSystem::LPAKC: return "LPAKC";
    case ProofSystem::LPAKCO: return "LPAKCO";
  }
  return "?";
}

inline ProofSystem system_from_name(const std::string& s) {
  for (auto p : {ProofSystem::LC, ProofSystem::LKC, ProofSystem::LPAKC, ProofSystem::LPAKCO})
    if (s == system_name(p)) return p;
  throw ValidationError("unknown proof system '" + s + "'");
}

inline const std::vector<std::string>& causal_schemas() {
  static const std::vector<std::string> v{"P",  "A1",    "A2",    "A3",    "A4",      "A5", "A6",
                                          "A7", "A_box", "A_neg", "A_and", "A_boxbox"};
  return v;
}
inline const std::vector<std::string>& knowledge_schemas() {
  static const std::vector<std::string> v{"K", "T", "4", "5", "CM", "KL"};
  return v;
}
inline const std::vector<std::string>& announcement_schemas() {
  static const std::vector<std::string> v{"Bang_eq", "Bang_neg", "Bang_and", "Bang_K",
                                          "Bang_bang", "K_bang", "Eq_bang"};
  return v;
}

inline std::vector<std::string> schemas(ProofSystem s) {
  std::vector<std::string> out = causal_schemas();
  if (s == ProofSystem::LC) return out;
  for (const auto& n : knowledge_schemas())
    if (!(s == ProofSystem::LPAKCO && n == "CM")) out.push_back(n);
  if (s == ProofSystem::LKC) return out;
  for (const auto& n : announcement_schemas()) out.push_back(n);
  if (s == ProofSystem::LPAKCO) {
    out.push_back("OC");
    out.push_back("PD");
  }
  return out;
}

inline Mode system_mode(ProofSystem s) {
  switch (s) {
    case ProofSystem::LC: return Mode::Single;
    case ProofSystem::LPAKCO: return Mode::Observable;
    default: return Mode::Epistemic;
  }
}

inline Fragment system_fragment(ProofSystem s) {
  switch (s) {
    case ProofSystem::LC: return Fragment::C;
    case ProofSystem::LKC: return Fragment::KC;
    default: return Fragment::PAKC;
  }
}

// ── Propositional tautologies ───────────────────────────────────────

inline constexpr std::size_t kMaxTautologyLetters = 20;

// Decided on the Boolean skeleton: every maximal subformula that is not a
// negation or conjunction is a propositional letter.
inline bool is_tautology(const Formula& f) {
  std::vector<Formula> letters;
  std::unordered_map<Formula, std::size_t, FormulaHash> index;
  std::function<void(const Formula&)> collect = [&](const Formula& g) {
    if (g.op() == Op::Not) return collect(g.arg());
    if (g.op() == Op::And) {
      collect(g.left());
      collect(g.right());
      return;
    }
    if (index.emplace(g, letters.size()).second) letters.push_back(g);
  };
  collect(f);
  if (letters.size() > kMaxTautologyLetters)
    throw BudgetExceeded("tautology check over " + std::to_string(letters.size()) + " letters exceeds " +
                         std::to_string(kMaxTautologyLetters));
  std::function<bool(const Formula&, std::uint32_t)> ev = [&](const Formula& g, std::uint32_t row) -> bool {
    if (g.op() == Op::Not) return !ev(g.arg(), row);
    if (g.op() == Op::And) return ev(g.left(), row) && ev(g.right(), row);
    return row >> index.at(g) & 1;
  };
  const std::uint32_t rows = 1u << letters.size();
  for (std::uint32_t row = 0; row < rows; ++row)
    if (!ev(f, row)) return false;
  return true;
}

// ── Schema matching ─────────────────────────────────────────────────

namespace detail {

inline bool same_domain(const Assignment& a, const Assignment& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].var != b[i].var) return false;
  return true;
}

inline Assignment add_pair(const Assignment& x, const Atom& y) { return override_with(x, Assignment{y}); }

// (x, v) for each direct-cause formula of the signature.
class DirectCauseIndex {
 public:
  explicit DirectCauseIndex(const Signature& sig) {
    for (std::size_t v = sig.exogenous_count(); v < sig.size(); ++v)
      for (std::size_t x = 0; x < sig.size(); ++x)
        if (x != v)
          map_.emplace(direct_cause_formula(sig, static_cast<int>(x), static_cast<int>(v)),
                       std::make_pair(static_cast<int>(x), static_cast<int>(v)));
  }
  std::optional<std::pair<int, int>> find(const Formula& f) const {
    auto it = map_.find(f);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::unordered_map<Formula, std::pair<int, int>, FormulaHash> map_;
};

inline bool match_a6(const Formula& f, const Signature& sig) {
  auto im = match_implies(f);
  if (!im || im->second.op() != Op::Not) return false;
  DirectCauseIndex idx(sig);
  auto last = idx.find(im->second.arg());
  if (!last) return false;
  // Split the antecedent's left spine into consecutive direct-cause formulas.
  auto parts = conjuncts(im->first);
  const std::size_t n = parts.size();
  std::vector<std::optional<std::vector<std::pair<int, int>>>> best(n + 1);
  best[0] = std::vector<std::pair<int, int>>{};
  for (std::size_t i = 0; i < n; ++i) {
    if (!best[i]) continue;
    Formula acc = parts[i];
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (j > i + 1) acc = conj(acc, parts[j - 1]);
      if (auto e = idx.find(acc)) {
        const auto& chain = *best[i];
        if (chain.empty() || chain.back().second == e->first) {
          auto c = chain;
          c.push_back(*e);
          if (!best[j]) best[j] = c;
        }
      }
    }
  }
  if (!best[n] || best[n]->empty()) return false;
  const auto& chain = *best[n];
  return last->first == chain.back().second && last->second == chain.front().first;
}

}  // namespace detail

// True iff f is a literal instance of the named schema relative to sig.
inline bool match_schema(const Formula& f, const std::string& name, const Signature& sig) {
  using detail::same_domain;
  auto imp = match_implies(f);
  auto bi = match_iff(f);
  auto primed = [](const Formula& g) { return is_primed_atom(g); };

  if (name == "P") return is_tautology(f);
  if (name == "A1") {
    if (!imp || !primed(imp->first) || imp->second.op() != Op::Not || !primed(imp->second.arg())) return false;
    const Formula& a = imp->first;
    const Formula& b = imp->second.arg();
    return a.assignment() == b.assignment() && a.arg().as_atom().var == b.arg().as_atom().var &&
           a.arg().as_atom().val != b.arg().as_atom().val;
  }
  if (name == "A2") {
    Formula first = f;
    std::size_t n = 1;
    if (!primed(f)) {
      if (f.op() != Op::Not) return false;
      n = conjuncts(f.arg()).size();
      first = conjuncts(f.arg())[0];
      if (first.op() != Op::Not) return false;
      first = first.arg();
    }
    if (!primed(first)) return false;
    int y = first.arg().as_atom().vi;
    if (y < 0 || sig.range_size(y) != n) return false;
    auto ds = match_disjunction(f, n, sig);
    if (!ds) return false;
    std::vector<bool> seen(n, false);
    for (const auto& d : *ds) {
      if (!primed(d) || d.assignment() != first.assignment() || d.arg().as_atom().vi != y) return false;
      int x = d.arg().as_atom().xi;
      if (seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }
  if (name == "A3") {
    if (!imp || imp->first.op() != Op::And) return false;
    const Formula& p = imp->first.left();
    const Formula& q = imp->first.right();
    const Formula& c = imp->second;
    if (!primed(p) || !primed(q) || !primed(c) || p.assignment() != q.assignment()) return false;
    const Atom& y = p.arg().as_atom();
    if (contains_var(p.assignment(), y.var)) return false;
    return c.assignment() == detail::add_pair(p.assignment(), y) && c.arg() == q.arg();
  }
  if (name == "A4") {
    if (!primed(f)) return false;
    const Atom& y = f.arg().as_atom();
    return std::find(f.assignment().begin(), f.assignment().end(), y) != f.assignment().end();
  }
  if (name == "A5") {
    if (!imp || imp->first.op() != Op::And) return false;
    const Formula& p = imp->first.left();
    const Formula& q = imp->first.right();
    const Formula& c = imp->second;
    if (!primed(p) || !primed(q) || !primed(c)) return false;
    const Atom& z = c.arg().as_atom();
    const Atom& y = q.arg().as_atom();
    const Assignment& X = c.assignment();
    if (y.var == z.var || contains_var(X, y.var) || contains_var(X, z.var)) return false;
    return p.arg() == c.arg() && p.assignment() == detail::add_pair(X, y) && q.assignment() == detail::add_pair(X, z);
  }
  if (name == "A6") return detail::match_a6(f, sig);
  if (name == "A7") {
    if (!bi || !primed(bi->first) || !primed(bi->second)) return false;
    const Atom& u = bi->first.arg().as_atom();
    return bi->first.assignment().empty() && bi->second.arg() == bi->first.arg() && u.vi >= 0 &&
           sig.is_exogenous(u.vi) && !contains_var(bi->second.assignment(), u.var);
  }
  if (name == "A_box") {
    return bi && bi->first.op() == Op::Atom && primed(bi->second) && bi->second.assignment().empty() &&
           bi->second.arg() == bi->first;
  }
  if (name == "A_neg") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::Not) return false;
    return bi->second == neg(box(bi->first.assignment(), bi->first.arg().arg()));
  }
  if (name == "A_and") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::And) return false;
    const auto& X = bi->first.assignment();
    const auto& b = bi->first.arg();
    return bi->second == conj(box(X, b.left()), box(X, b.right()));
  }
  if (name == "A_boxbox") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::Intervene) return false;
    const auto& X = bi->first.assignment();
    const auto& inner = bi->first.arg();
    return bi->second == box(override_with(X, inner.assignment()), inner.arg());
  }
  if (name == "K") {
    if (!imp || imp->first.op() != Op::Know) return false;
    auto in = match_implies(imp->first.arg());
    return in && imp->second == implies(know(in->first), know(in->second));
  }
  if (name == "T") return imp && imp->first.op() == Op::Know && imp->second == imp->first.arg();
  if (name == "4") return imp && imp->first.op() == Op::Know && imp->second == know(imp->first);
  if (name == "5") {
    return imp && imp->first.op() == Op::Not && imp->first.arg().op() == Op::Know &&
           imp->second == know(imp->first);
  }
  if (name == "CM") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::Know) return false;
    return bi->second == know(box(bi->first.assignment(), bi->first.arg().arg()));
  }
  if (name == "KL") {
    if (!imp || !primed(imp->first) || imp->second != know(imp->first)) return false;
    const Atom& y = imp->first.arg().as_atom();
    const Assignment& X = imp->first.assignment();
    if (y.vi < 0 || sig.is_exogenous(y.vi) || X.size() + 1 != sig.size()) return false;
    return !contains_var(X, y.var);
  }
  if (name == "Bang_eq") {
    if (!bi || bi->first.op() != Op::Announce || !primed(bi->first.arg())) return false;
    return bi->second == implies(bi->first.announced(), bi->first.arg());
  }
  if (name == "Bang_neg") {
    if (!bi || bi->first.op() != Op::Announce || bi->first.arg().op() != Op::Not) return false;
    const auto& a = bi->first.announced();
    return bi->second == implies(a, neg(bang(a, bi->first.arg().arg())));
  }
  if (name == "Bang_and") {
    if (!bi || bi->first.op() != Op::Announce || bi->first.arg().op() != Op::And) return false;
    const auto& a = bi->first.announced();
    const auto& c = bi->first.arg();
    return bi->second == conj(bang(a, c.left()), bang(a, c.right()));
  }
  if (name == "Bang_K") {
    if (!bi || bi->first.op() != Op::Announce || bi->first.arg().op() != Op::Know) return false;
    const auto& a = bi->first.announced();
    return bi->second == implies(a, know(implies(a, bang(a, bi->first.arg().arg()))));
  }
  if (name == "Bang_bang") {
    if (!bi || bi->first.op() != Op::Announce || bi->first.arg().op() != Op::Announce) return false;
    const auto& a1 = bi->first.announced();
    const auto& in = bi->first.arg();
    return bi->second == bang(conj(a1, bang(a1, in.announced())), in.arg());
  }
  if (name == "K_bang") {
    if (!imp || imp->first.op() != Op::Announce) return false;
    auto in = match_implies(imp->first.arg());
    const auto& a = imp->first.announced();
    return in && imp->second == implies(bang(a, in->first), bang(a, in->second));
  }
  if (name == "Eq_bang") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::Announce) return false;
    const auto& X = bi->first.assignment();
    const auto& in = bi->first.arg();
    return bi->second == bang(box(X, in.announced()), box(X, in.arg()));
  }
  if (name == "OC") return f.op() == Op::Intervene && f == oc_instance(sig, f.assignment());
  if (name == "PD") {
    if (!bi || bi->first.op() != Op::Intervene || bi->first.arg().op() != Op::Know) return false;
    const auto& X = bi->first.assignment();
    const Formula inner = know(box(X, bi->first.arg().arg()));
    std::vector<Formula> ds;
    for (const auto& o : observable_settings(sig)) {
      Formula seen = box(X, observation_formula(sig, o));
      ds.push_back(conj(seen, bang(seen, inner)));
    }
    return bi->second == disj_all(ds, sig);
  }
  throw ValidationError("unknown axiom '" + name + "'");
}

inline bool match_axiom(const Formula& f, const std::string& name, const Signature& sig, ProofSystem system) {
  auto names = schemas(system);
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw ValidationError("axiom '" + name + "' is not part of " + system_name(system));
  return match_schema(f, name, sig);
}

// ── Derivations ─────────────────────────────────────────────────────

enum class Rule { Premise, Axiom, MP, NK, NEq, NBang, BangRE, REK, REEq, REBang, RE };

struct Justification {
  Rule rule = Rule::Premise;
  std::string axiom;
  std::vector<int> refs;
  Assignment assignment;
  Formula parameter;
};

struct DerivationLine {
  int number = 0;
  Formula formula;
  Justification why;
  std::size_t source_line = 0;
};

// One step per line:
//   <n>. <formula> ; <justification>
// where justification is one of
//   premise | axiom NAME | mp i j | nk i | neq i [X=x] | nbang i (alpha)
//   bang_re i (chi) | rek i | req i [X=x] | rebang i (alpha) | re i
// Blank lines and lines starting with '#' are skipped.
inline std::vector<DerivationLine> parse_derivation(const std::string& text, const Signature& sig) {
  std::vector<DerivationLine> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw ValidationError("derivation line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    DerivationLine d;
    d.source_line = lineno;
    auto dot = line.find('.', start);
    if (dot == std::string::npos) fail("missing line number");
    try {
      d.number = std::stoi(line.substr(start, dot - start));
    } catch (...) {
      fail("bad line number");
    }
    auto semi = line.find(';', dot);
    if (semi == std::string::npos) fail("missing ';' before justification");
    try {
      d.formula = parse(line.substr(dot + 1, semi - dot - 1), sig);
    } catch (const SyntaxError& e) {
      fail(e.what());
    } catch (const ValidationError& e) {
      fail(e.what());
    }
    std::istringstream js(line.substr(semi + 1));
    std::string kind;
    js >> kind;
    static const std::map<std::string, Rule> rules{
        {"premise", Rule::Premise}, {"axiom", Rule::Axiom},   {"mp", Rule::MP},
        {"nk", Rule::NK},           {"neq", Rule::NEq},       {"nbang", Rule::NBang},
        {"bang_re", Rule::BangRE},  {"rek", Rule::REK},       {"req", Rule::REEq},
        {"rebang", Rule::REBang},   {"re", Rule::RE}};
    auto it = rules.find(kind);
    if (it == rules.end()) fail("unknown justification '" + kind + "'");
    d.why.rule = it->second;
    if (d.why.rule == Rule::Axiom) {
      js >> d.why.axiom;
      if (d.why.axiom.empty()) fail("axiom needs a name");
    } else if (d.why.rule != Rule::Premise) {
      int nrefs = d.why.rule == Rule::MP ? 2 : 1;
      for (int k = 0; k < nrefs; ++k) {
        int r;
        if (!(js >> r)) fail("missing line reference");
        d.why.refs.push_back(r);
      }
      std::string rest;
      std::getline(js, rest);
      auto s = rest.find_first_not_of(" \t\r");
      rest = s == std::string::npos ? "" : rest.substr(s);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\r' || rest.back() == '\t')) rest.pop_back();
      try {
        if (d.why.rule == Rule::NEq || d.why.rule == Rule::REEq) {
          if (rest.empty()) fail("missing intervention parameter");
          d.why.assignment = parse_assignment(rest, sig);
        } else if (d.why.rule == Rule::NBang || d.why.rule == Rule::BangRE || d.why.rule == Rule::REBang) {
          if (rest.empty()) fail("missing formula parameter");
          d.why.parameter = parse(rest, sig);
        } else if (!rest.empty()) {
          fail("unexpected text '" + rest + "'");
        }
      } catch (const SyntaxError& e) {
        fail(e.what());
      }
    }
    if (d.number != static_cast<int>(out.size()) + 1) fail("lines must be numbered 1, 2, 3, ...");
    out.push_back(std::move(d));
  }
  return out;
}

struct DerivationResult {
  bool ok = true;
  int failing_line = 0;
  std::string message;
};

namespace detail {
// psi is phi with some occurrences of a replaced by b.
inline bool replaces(const Formula& phi, const Formula& psi, const Formula& a, const Formula& b) {
  if (phi == psi) return true;
  if (phi == a && psi == b) return true;
  if (phi.op() != psi.op()) return false;
  switch (phi.op()) {
    case Op::Atom: return false;
    case Op::Not:
    case Op::Know: return replaces(phi.arg(), psi.arg(), a, b);
    case Op::And: return replaces(phi.left(), psi.left(), a, b) && replaces(phi.right(), psi.right(), a, b);
    case Op::Intervene:
      return phi.assignment() == psi.assignment() && replaces(phi.arg(), psi.arg(), a, b);
    case Op::Announce:
      return replaces(phi.announced(), psi.announced(), a, b) && replaces(phi.arg(), psi.arg(), a, b);
  }
  return false;
}
}  // namespace detail

inline DerivationResult check_derivation(const std::vector<DerivationLine>& lines, ProofSystem system,
                                         const Signature& sig, const std::vector<Formula>& premises = {}) {
  const bool has_k = system != ProofSystem::LC;
  const bool has_ann = system == ProofSystem::LPAKC || system == ProofSystem::LPAKCO;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto& d = lines[i];
    const int n = static_cast<int>(i) + 1;
    auto bad = [&](const std::string& msg) { return DerivationResult{false, n, msg}; };
    auto ref = [&](int r) -> const Formula* {
      if (r < 1 || r >= n) return nullptr;
      return &lines[r - 1].formula;
    };
    for (int r : d.why.refs)
      if (!ref(r)) return bad("reference " + std::to_string(r) + " is not an earlier line");
    const Formula& f = d.formula;
    switch (d.why.rule) {
      case Rule::Premise:
        if (std::find(premises.begin(), premises.end(), f) == premises.end()) return bad("not a premise");
        break;
      case Rule::Axiom:
        try {
          if (!match_axiom(f, d.why.axiom, sig, system)) return bad("not an instance of " + d.why.axiom);
        } catch (const ValidationError& e) {
          return bad(e.what());
        } catch (const BudgetExceeded& e) {
          return bad(e.what());
        }
        break;
      case Rule::MP: {
        auto im = match_implies(*ref(d.why.refs[0]));
        if (!im) return bad("line " + std::to_string(d.why.refs[0]) + " is not an implication");
        if (im->first != *ref(d.why.refs[1]))
          return bad("line " + std::to_string(d.why.refs[1]) + " is not the antecedent");
        if (im->second != f) return bad("formula is not the consequent");
        break;
      }
      case Rule::NK:
        if (!has_k) return bad("nk is not a rule of " + std::string(system_name(system)));
        if (f != know(*ref(d.why.refs[0]))) return bad("formula is not K of the referenced line");
        break;
      case Rule::NEq:
        if (!has_ann) return bad("neq is not a rule of " + std::string(system_name(system)));
        if (f != box(d.why.assignment, *ref(d.why.refs[0]))) return bad("formula is not the boxed line");
        break;
      case Rule::NBang:
        if (!has_ann) return bad("nbang is not a rule of " + std::string(system_name(system)));
        if (f != bang(d.why.parameter, *ref(d.why.refs[0]))) return bad("formula is not the announced line");
        break;
      case Rule::BangRE: {
        if (!has_ann) return bad("bang_re is not a rule of " + std::string(system_name(system)));
        auto e = match_iff(*ref(d.why.refs[0]));
        if (!e) return bad("referenced line is not an equivalence");
        if (f != iff(bang(e->first, d.why.parameter), bang(e->second, d.why.parameter)))
          return bad("formula does not follow by bang_re");
        break;
      }
      case Rule::REK: {
        if (!has_k) return bad("rek needs K");
        auto e = match_iff(*ref(d.why.refs[0]));
        if (!e) return bad("referenced line is not an equivalence");
        if (f != iff(know(e->first), know(e->second))) return bad("formula does not follow by rek");
        break;
      }
      case Rule::REEq: {
        auto e = match_iff(*ref(d.why.refs[0]));
        if (!e) return bad("referenced line is not an equivalence");
        const auto& X = d.why.assignment;
        if (f != iff(box(X, e->first), box(X, e->second))) return bad("formula does not follow by req");
        break;
      }
      case Rule::REBang: {
        if (!has_ann) return bad("rebang needs announcements");
        auto e = match_iff(*ref(d.why.refs[0]));
        if (!e) return bad("referenced line is not an equivalence");
        const auto& a = d.why.parameter;
        if (f != iff(bang(a, e->first), bang(a, e->second))) return bad("formula does not follow by rebang");
        break;
      }
      case Rule::RE: {
        auto e = match_iff(*ref(d.why.refs[0]));
        auto g = match_iff(f);
        if (!e || !g) return bad("re needs equivalences");
        if (!detail::replaces(g->first, g->second, e->first, e->second))
          return bad("formula does not follow by replacement");
        if (!has_k && !in_fragment(f, Fragment::C)) return bad("formula outside LC");
        break;
      }
    }
    if (!has_k && !in_fragment(f, Fragment::C)) return bad("formula outside LC");
    if (!has_ann && !in_fragment(f, Fragment::KC)) return bad("formula outside LKC");
  }
  return {};
}

inline DerivationResult check_derivation_text(const std::string& text, ProofSystem system, const Signature& sig,
                                              const std::vector<Formula>& premises = {}) {
  return check_derivation(parse_derivation(text, sig), system, sig, premises);
}

}  // namespace ecl
