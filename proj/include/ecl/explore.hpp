#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "causal.hpp"
#include "epistemic.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "fragment.hpp"

namespace ecl {

struct Caps {
  std::size_t max_table_entries = 256;
  double max_function_sets = 1e6;
  double max_pointed_models = 5e6;
  std::size_t max_solutions = 16;  // teams are subsets of the solutions
};

// All recursive function sets where each endogenous variable reads every
// other variable. Raw tables are visited in odometer order.
class FunctionSetEnumerator {
 public:
  FunctionSetEnumerator(std::shared_ptr<const Signature> sig, const Caps& caps = {}) : sig_(std::move(sig)) {
    const std::size_t n = sig_->size(), ne = sig_->exogenous_count();
    std::size_t entries = 0;
    estimate_ = 1;
    for (std::size_t v = ne; v < n; ++v) {
      std::vector<int> parents;
      std::size_t cells = 1;
      for (std::size_t x = 0; x < n; ++x)
        if (x != v) {
          parents.push_back(static_cast<int>(x));
          cells *= sig_->range_size(static_cast<int>(x));
          if (cells > caps.max_table_entries) throw BudgetExceeded("table entries exceed cap");
        }
      entries += cells;
      estimate_ *= std::pow(static_cast<double>(sig_->range_size(static_cast<int>(v))), static_cast<double>(cells));
      parents_.push_back(parents);
      cells_.push_back(cells);
    }
    if (entries > caps.max_table_entries)
      throw BudgetExceeded("total table entries " + std::to_string(entries) + " exceed cap " +
                           std::to_string(caps.max_table_entries));
    if (estimate_ > caps.max_function_sets)
      throw BudgetExceeded("estimated " + std::to_string(estimate_) + " function sets exceed cap");
    digits_.assign(entries, 0);
  }

  // Upper bound before the recursiveness filter.
  double estimate() const { return estimate_; }

  std::optional<FunctionSet> next() {
    while (!done_) {
      std::vector<StructuralFunction> fns;
      std::size_t off = 0;
      for (std::size_t i = 0; i < parents_.size(); ++i) {
        StructuralFunction f;
        f.parents = parents_[i];
        f.table.assign(digits_.begin() + off, digits_.begin() + off + cells_[i]);
        off += cells_[i];
        fns.push_back(std::move(f));
      }
      advance();
      FunctionSet F(sig_, std::move(fns));
      if (F.recursive()) return F;
    }
    return std::nullopt;
  }

 private:
  void advance() {
    const std::size_t ne = sig_->exogenous_count();
    std::size_t k = digits_.size();
    // last digit moves fastest; digit k belongs to variable owner(k)
    while (k > 0) {
      --k;
      std::size_t owner = 0, acc = cells_.empty() ? 0 : cells_[0];
      while (k >= acc) acc += cells_[++owner];
      if (++digits_[k] < sig_->range_size(static_cast<int>(ne + owner))) return;
      digits_[k] = 0;
    }
    done_ = true;
  }

  std::shared_ptr<const Signature> sig_;
  std::vector<std::vector<int>> parents_;
  std::vector<std::size_t> cells_;
  std::vector<std::uint8_t> digits_;
  double estimate_ = 1;
  bool done_ = false;
};

// Pointed models over every enumerated function set. Single mode uses
// singleton teams; Observable mode keeps only teams constant on the
// observables.
class PointedEnumerator {
 public:
  PointedEnumerator(std::shared_ptr<const Signature> sig, Mode mode, const Caps& caps = {})
      : sig_(sig), mode_(mode), fns_(sig, caps) {
    double sols = 1;
    for (std::size_t u = 0; u < sig->exogenous_count(); ++u) sols *= sig->range_size(static_cast<int>(u));
    if (sols > caps.max_solutions) throw BudgetExceeded("too many exogenous settings for team enumeration");
    double per = mode == Mode::Single ? sols : (std::pow(2.0, sols) - 1) * sols;
    if (fns_.estimate() * per > caps.max_pointed_models)
      throw BudgetExceeded("estimated " + std::to_string(fns_.estimate() * per) + " pointed models exceed cap");
  }

  std::optional<PointedModel> next() {
    while (true) {
      if (have_f_) {
        if (member_ < team_.size()) {
          PointedModel p;
          p.model.functions = *F_;
          p.model.team = team_;
          p.actual = team_[member_++];
          return p;
        }
        if (next_team()) continue;
      }
      auto F = fns_.next();
      if (!F) return std::nullopt;
      F_ = std::move(F);
      sols_ = all_solutions(*F_);
      mask_ = 0;
      have_f_ = true;
      team_.clear();
      member_ = 0;
    }
  }

 private:
  bool next_team() {
    const std::uint64_t n = sols_.size();
    while (true) {
      if (mode_ == Mode::Single) {
        if (mask_ >= n) return false;
        team_ = {sols_[mask_++]};
        member_ = 0;
        return true;
      }
      if (++mask_ >= (std::uint64_t{1} << n)) return false;
      team_.clear();
      for (std::uint64_t i = 0; i < n; ++i)
        if (mask_ >> i & 1) team_.push_back(sols_[i]);
      if (mode_ == Mode::Observable && !observable_constant(*sig_, team_)) continue;
      member_ = 0;
      return true;
    }
  }

  std::shared_ptr<const Signature> sig_;
  Mode mode_;
  FunctionSetEnumerator fns_;
  std::optional<FunctionSet> F_;
  std::vector<Valuation> sols_;
  Team team_;
  std::uint64_t mask_ = 0;
  std::size_t member_ = 0;
  bool have_f_ = false;
};

inline std::vector<FunctionSet> enumerate_functions(std::shared_ptr<const Signature> sig, const Caps& caps = {}) {
  std::vector<FunctionSet> out;
  FunctionSetEnumerator e(std::move(sig), caps);
  while (auto F = e.next()) out.push_back(std::move(*F));
  return out;
}

inline std::vector<PointedModel> enumerate_pointed(std::shared_ptr<const Signature> sig, Mode mode,
                                                   const Caps& caps = {}) {
  std::vector<PointedModel> out;
  PointedEnumerator e(std::move(sig), mode, caps);
  while (auto p = e.next()) out.push_back(std::move(*p));
  return out;
}

struct ValidityResult {
  bool valid = true;
  std::size_t models = 0;
  std::optional<PointedModel> counterexample;
};

inline ValidityResult check_validity(const Formula& f, std::shared_ptr<const Signature> sig, Mode mode,
                                     const Caps& caps = {}) {
  ValidityResult r;
  PointedEnumerator e(std::move(sig), mode, caps);
  while (auto p = e.next()) {
    ++r.models;
    if (!evaluate(*p, f, mode)) {
      r.valid = false;
      r.counterexample = std::move(*p);
      return r;
    }
  }
  return r;
}

// ── Random formulas ─────────────────────────────────────────────────

// Deterministic across platforms for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  std::size_t below(std::size_t n) { return n <= 1 ? 0 : static_cast<std::size_t>(g_() % n); }
  std::uint64_t raw() { return g_(); }

 private:
  std::mt19937_64 g_;
};

struct SampleWeights {
  unsigned atom = 2, negation = 2, conjunction = 2, know = 2, intervene = 2, announce = 1;
};

struct SampleOptions {
  int depth = 3;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  Fragment fragment = Fragment::PAKC;
  SampleWeights weights;
  std::size_t max_assignment = 2;
};

class FormulaSampler {
 public:
  FormulaSampler(const Signature& sig, const SampleOptions& opt) : sig_(sig), opt_(opt), rng_(opt.seed) {}

  Formula sample(int depth) {
    const Fragment fr = opt_.fragment;
    const bool primed = fr == Fragment::Cp || fr == Fragment::KCp || fr == Fragment::PAKCp;
    const bool k = fr != Fragment::C && fr != Fragment::Cp;
    const bool ann = fr == Fragment::PAKC || fr == Fragment::PAKCp;
    if (depth <= 1) return leaf(primed);
    const auto& w = opt_.weights;
    unsigned ws[6] = {w.atom, w.negation, w.conjunction, k ? w.know : 0u, primed ? 0u : w.intervene,
                      ann ? w.announce : 0u};
    unsigned total = 0;
    for (unsigned x : ws) total += x;
    std::size_t r = rng_.below(total);
    int pick = 0;
    while (r >= ws[pick]) r -= ws[pick++];
    switch (pick) {
      case 0: return leaf(primed);
      case 1: return neg(sample(depth - 1));
      case 2: {
        Formula l = sample(depth - 1);
        return conj(l, sample(depth - 1));
      }
      case 3: return know(sample(depth - 1));
      case 4: {
        Assignment a = assignment();
        return box(a, sample(depth - 1));
      }
      default: {
        Formula a = sample(depth - 1);
        return bang(a, sample(depth - 1));
      }
    }
  }

  Formula atom() {
    int v = static_cast<int>(rng_.below(sig_.size()));
    return Formula::atom(sig_, v, static_cast<int>(rng_.below(sig_.range_size(v))));
  }

  Assignment assignment() {
    std::size_t k = rng_.below(std::min(opt_.max_assignment, sig_.size()) + 1);
    std::vector<int> vars;
    for (std::size_t i = 0; i < sig_.size(); ++i) vars.push_back(static_cast<int>(i));
    Assignment a;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + rng_.below(vars.size() - i);
      std::swap(vars[i], vars[j]);
      int v = vars[i];
      int x = static_cast<int>(rng_.below(sig_.range_size(v)));
      a.push_back(Atom{sig_.var(v).name, sig_.var(v).range[x], v, x});
    }
    std::sort(a.begin(), a.end(), [](const Atom& p, const Atom& q) { return p.vi < q.vi; });
    return a;
  }

  Rng& rng() { return rng_; }

 private:
  Formula leaf(bool primed) {
    if (!primed) return atom();
    Assignment a = assignment();
    return box(a, atom());
  }

  const Signature& sig_;
  SampleOptions opt_;
  Rng rng_;
};

inline std::vector<Formula> sample_formulas(const Signature& sig, const SampleOptions& opt) {
  FormulaSampler s(sig, opt);
  std::vector<Formula> out;
  out.reserve(opt.count);
  for (std::size_t i = 0; i < opt.count; ++i) out.push_back(s.sample(opt.depth));
  return out;
}

// Every partial assignment: each variable absent or set to one of its values.
inline std::vector<Assignment> all_assignments(const Signature& sig) {
  std::vector<Assignment> out{{}};
  for (std::size_t v = 0; v < sig.size(); ++v) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t x = 0; x < sig.range_size(static_cast<int>(v)); ++x) {
        Assignment a = out[i];
        a.push_back(Atom{sig.var(static_cast<int>(v)).name, sig.var(static_cast<int>(v)).range[x],
                         static_cast<int>(v), static_cast<int>(x)});
        out.push_back(std::move(a));
      }
  }
  return out;
}

// Conjunction of O=o over the observables, canonical order.
inline Formula observation_formula(const Signature& sig, const std::vector<int>& values) {
  auto obs = sig.observables();
  std::vector<Formula> atoms;
  for (std::size_t k = 0; k < obs.size(); ++k) atoms.push_back(Formula::atom(sig, obs[k], values[k]));
  return conj_all(atoms, sig);
}

// All observable value vectors, lexicographic.
inline std::vector<std::vector<int>> observable_settings(const Signature& sig) {
  auto obs = sig.observables();
  std::vector<std::vector<int>> out{{}};
  for (int o : obs) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out)
      for (std::size_t x = 0; x < sig.range_size(o); ++x) {
        auto t = s;
        t.push_back(static_cast<int>(x));
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

// [X] OR_o K O=o
inline Formula oc_instance(const Signature& sig, const Assignment& X) {
  std::vector<Formula> ds;
  for (const auto& o : observable_settings(sig)) ds.push_back(know(observation_formula(sig, o)));
  return box(X, disj_all(ds, sig));
}

struct OCAuditReport {
  std::size_t models = 0;
  std::size_t qualifying = 0;  // models satisfying every OC instance
  std::size_t comparisons = 0;
  std::size_t violations = 0;  // qualifying models where the two semantics differ
  std::optional<PointedModel> first_violation;
  std::optional<Formula> first_formula;
};

// On models satisfying all OC instances under the plain semantics, the
// observables must be constant and both semantics must agree at every member.
inline OCAuditReport oc_equivalence_audit(std::shared_ptr<const Signature> sig, const std::vector<Formula>& formulas,
                                          const Caps& caps = {}) {
  OCAuditReport r;
  std::vector<Formula> ocs;
  for (const auto& X : all_assignments(*sig)) ocs.push_back(oc_instance(*sig, X));
  PointedEnumerator e(sig, Mode::Epistemic, caps);
  while (auto p = e.next()) {
    ++r.models;
    bool all = true;
    for (const auto& oc : ocs)
      if (!evaluate(*p, oc, Mode::Epistemic)) {
        all = false;
        break;
      }
    if (!all) continue;
    ++r.qualifying;
    if (!observable_constant(*sig, p->model.team)) {
      ++r.violations;
      if (!r.first_violation) r.first_violation = *p;
      continue;
    }
    for (const auto& b : p->model.team) {
      PointedModel q(p->model, b);
      for (const auto& f : formulas) {
        ++r.comparisons;
        if (evaluate(q, f, Mode::Epistemic) != evaluate(q, f, Mode::Observable)) {
          ++r.violations;
          if (!r.first_violation) {
            r.first_violation = q;
            r.first_formula = f;
          }
        }
      }
    }
  }
  return r;
}

}  // namespace ecl
