#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "epistemic.hpp"
#include "error.hpp"
#include "formula.hpp"
#include "fragment.hpp"
#include "signature.hpp"

namespace ecl {

// Tr1:   LC    -> LCp
// Tr2:   LKC   -> LKCp
// Tr3:   LPAKC -> LPAKCp
// Tr4:   LPAKCp -> LKCp
// Full:  Tr4 after Tr3
// Tr3PD: LPAKC -> LPAKCp, pushing boxes through K by splitting on observable values
// FullPD: Tr4 after Tr3PD
enum class Translation { Tr1, Tr2, Tr3, Tr4, Full, Tr3PD, FullPD };

inline const char* translation_name(Translation t) {
  switch (t) {
    case Translation::Tr1: return "tr1";
    case Translation::Tr2: return "tr2";
    case Translation::Tr3: return "tr3";
    case Translation::Tr4: return "tr4";
    case Translation::Full: return "tr";
    case Translation::Tr3PD: return "tr3pd";
    case Translation::FullPD: return "trpd";
  }
  return "?";
}

inline Translation translation_from_name(const std::string& s) {
  for (auto t : {Translation::Tr1, Translation::Tr2, Translation::Tr3, Translation::Tr4, Translation::Full,
                 Translation::Tr3PD, Translation::FullPD})
    if (s == translation_name(t)) return t;
  throw ValidationError("unknown translation '" + s + "'");
}

inline Fragment source_fragment(Translation t) {
  switch (t) {
    case Translation::Tr1: return Fragment::C;
    case Translation::Tr2: return Fragment::KC;
    case Translation::Tr4: return Fragment::PAKCp;
    default: return Fragment::PAKC;
  }
}

inline Fragment target_fragment(Translation t) {
  switch (t) {
    case Translation::Tr1: return Fragment::Cp;
    case Translation::Tr3:
    case Translation::Tr3PD: return Fragment::PAKCp;
    default: return Fragment::KCp;
  }
}

struct TranslateOptions {
  // Assert that every recursive call is on a formula of smaller complexity.
  bool check_termination = false;
  std::size_t max_nodes = 5'000'000;
};

namespace detail {

class BoxPusher {
 public:
  BoxPusher(int level, bool pd, const Signature* sig, TranslateOptions opt)
      : level_(level), pd_(pd), sig_(sig), opt_(opt) {}

  Formula run(const Formula& f) { return go(f); }

 private:
  Measure measure() const { return level_ == 1 ? Measure::C : level_ == 2 ? Measure::KC : Measure::PAKC; }

  Formula rec(const Formula& from, const Formula& to, bool checked = true) {
    if (opt_.check_termination && checked && complexity(to, measure()) >= complexity(from, measure()))
      throw std::logic_error("translation step does not decrease complexity: " + to_string(from) + " => " +
                             to_string(to));
    return go(to);
  }

  Formula guard(Formula f) {
    if (f.size() > opt_.max_nodes) throw BudgetExceeded("translation output exceeds node budget");
    return f;
  }

  Formula go(const Formula& f) {
    switch (f.op()) {
      case Op::Atom: return box({}, f);
      case Op::Not: return guard(neg(go(f.arg())));
      case Op::And: return guard(conj(go(f.left()), go(f.right())));
      case Op::Know:
        if (level_ < 2) throw FragmentError("K outside the source fragment");
        return guard(know(go(f.arg())));
      case Op::Announce:
        if (level_ < 3) throw FragmentError("announcement outside the source fragment");
        return guard(bang(go(f.announced()), go(f.arg())));
      case Op::Intervene: return under_box(f);
    }
    return f;
  }

  Formula under_box(const Formula& f) {
    const Assignment& X = f.assignment();
    const Formula& b = f.arg();
    switch (b.op()) {
      case Op::Atom: return f;
      case Op::Not: return rec(f, neg(box(X, b.arg())));
      case Op::And: return rec(f, conj(box(X, b.left()), box(X, b.right())));
      case Op::Intervene: return rec(f, box(override_with(X, b.assignment()), b.arg()));
      case Op::Know:
        if (level_ < 2) throw FragmentError("K outside the source fragment");
        if (pd_) return split_on_observables(f);
        return rec(f, know(box(X, b.arg())));
      case Op::Announce: {
        if (level_ < 3) throw FragmentError("announcement outside the source fragment");
        const Formula& a = b.announced();
        const Formula& c = b.arg();
        switch (c.op()) {
          case Op::Atom: return rec(f, box(X, implies(a, c)));
          case Op::Not: return rec(f, box(X, implies(a, neg(bang(a, c.arg())))));
          case Op::And: return rec(f, box(X, conj(bang(a, c.left()), bang(a, c.right()))));
          case Op::Know: return rec(f, box(X, implies(a, know(implies(a, bang(a, c.arg()))))));
          case Op::Announce: return rec(f, box(X, bang(conj(a, bang(a, c.announced())), c.arg())));
          case Op::Intervene:
            return rec(f, bang(box(X, a), box(override_with(X, c.assignment()), c.arg())));
        }
      }
    }
    return f;
  }

  // [X]K g  =>  OR_o ( T([X]O=o) & [T([X]O=o) !] K T([X]g) )
  Formula split_on_observables(const Formula& f) {
    const Assignment& X = f.assignment();
    const Formula& g = f.arg().arg();
    auto obs = sig_->observables();
    Formula inner = rec(f, box(X, g));
    std::vector<Formula> ds;
    std::vector<int> o(obs.size(), 0);
    while (true) {
      std::vector<Formula> atoms;
      for (std::size_t k = 0; k < obs.size(); ++k) atoms.push_back(Formula::atom(*sig_, obs[k], o[k]));
      Formula seen = go(box(X, conj_all(atoms, *sig_)));
      ds.push_back(conj(seen, bang(seen, know(inner))));
      if (ds.size() > opt_.max_nodes) throw BudgetExceeded("too many observable settings");
      bool done = true;
      for (std::size_t k = obs.size(); k-- > 0;) {
        if (static_cast<std::size_t>(++o[k]) < sig_->range_size(obs[k])) {
          done = false;
          break;
        }
        o[k] = 0;
      }
      if (done) break;
    }
    return guard(disj_all(ds, *sig_));
  }

  int level_;
  bool pd_;
  const Signature* sig_;
  TranslateOptions opt_;
};

class BangEliminator {
 public:
  explicit BangEliminator(TranslateOptions opt) : opt_(opt) {}

  Formula go(const Formula& f) {
    switch (f.op()) {
      case Op::Intervene:
        if (f.arg().op() != Op::Atom) throw FragmentError("nested box outside the primed fragment");
        return f;
      case Op::Atom: throw FragmentError("bare atom outside the primed fragment");
      case Op::Not: return guard(neg(go(f.arg())));
      case Op::And: return guard(conj(go(f.left()), go(f.right())));
      case Op::Know: return guard(know(go(f.arg())));
      case Op::Announce: break;
    }
    const Formula& a = f.announced();
    const Formula& t = f.arg();
    switch (t.op()) {
      case Op::Intervene:
        if (t.arg().op() != Op::Atom) throw FragmentError("nested box outside the primed fragment");
        return rec(f, implies(a, t));
      case Op::Atom: throw FragmentError("bare atom outside the primed fragment");
      case Op::Not: return rec(f, implies(a, neg(bang(a, t.arg()))));
      case Op::And: return rec(f, conj(bang(a, t.left()), bang(a, t.right())));
      case Op::Know: return rec(f, implies(a, know(implies(a, bang(a, t.arg())))));
      case Op::Announce: return rec(f, bang(conj(a, bang(a, t.announced())), t.arg()));
    }
    return f;
  }

 private:
  Formula rec(const Formula& from, const Formula& to) {
    if (opt_.check_termination && complexity(to, Measure::PAKCp) >= complexity(from, Measure::PAKCp))
      throw std::logic_error("translation step does not decrease complexity: " + to_string(from) + " => " +
                             to_string(to));
    return go(to);
  }
  Formula guard(Formula f) {
    if (f.size() > opt_.max_nodes) throw BudgetExceeded("translation output exceeds node budget");
    return f;
  }
  TranslateOptions opt_;
};

}  // namespace detail

inline Formula translate(Translation t, const Formula& f, const Signature& sig, TranslateOptions opt = {}) {
  Fragment src = source_fragment(t);
  if (!in_fragment(f, src))
    throw FragmentError(std::string("formula is outside ") + fragment_name(src) + ": " + to_string(f));
  switch (t) {
    case Translation::Tr1: return detail::BoxPusher(1, false, &sig, opt).run(f);
    case Translation::Tr2: return detail::BoxPusher(2, false, &sig, opt).run(f);
    case Translation::Tr3: return detail::BoxPusher(3, false, &sig, opt).run(f);
    case Translation::Tr3PD: return detail::BoxPusher(3, true, &sig, opt).run(f);
    case Translation::Tr4: return detail::BangEliminator(opt).go(f);
    case Translation::Full:
    case Translation::FullPD: {
      Formula mid = detail::BoxPusher(3, t == Translation::FullPD, &sig, opt).run(f);
      if (!in_fragment(mid, Fragment::PAKCp)) throw std::logic_error("intermediate result outside LPAKCp");
      return detail::BangEliminator(opt).go(mid);
    }
  }
  return f;
}

inline Formula translate(Translation t, const Formula& f, TranslateOptions opt = {}) {
  if (t == Translation::Tr3PD || t == Translation::FullPD)
    throw ValidationError("this translation needs a signature with observables");
  static const Signature none;
  return translate(t, f, none, opt);
}

struct Disagreement {
  PointedModel model;
  bool left = false;
  bool right = false;
};

// First pointed model where f and g get different truth values.
template <class Models>
std::optional<Disagreement> check_equivalence(const Formula& f, const Formula& g, const Models& models, Mode mode) {
  for (const PointedModel& p : models) {
    bool a = evaluate(p, f, mode), b = evaluate(p, g, mode);
    if (a != b) return Disagreement{p, a, b};
  }
  return std::nullopt;
}

}  // namespace ecl
