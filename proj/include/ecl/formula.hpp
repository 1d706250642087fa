#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "error.hpp"
#include "signature.hpp"

namespace ecl {

enum class Op : std::uint8_t { Atom, Not, And, Know, Intervene, Announce };

// Y=y. Names are authoritative; indices are filled in by bind().
struct Atom {
  std::string var;
  std::string val;
  int vi = -1;
  int xi = -1;

  bool bound() const { return vi >= 0 && xi >= 0; }
  bool operator==(const Atom& o) const { return var == o.var && val == o.val; }
};

// Simultaneous intervention. Sorted by variable index once bound.
using Assignment = std::vector<Atom>;

inline bool contains_var(const Assignment& a, const std::string& var) {
  return std::any_of(a.begin(), a.end(), [&](const Atom& p) { return p.var == var; });
}

class Formula;

namespace detail {
struct Node;
}

class Formula {
 public:
  Formula() = default;

  static Formula atom(Atom a);
  static Formula atom(const Signature& sig, int var, int val);
  static Formula negation(Formula f);
  static Formula conjunction(Formula l, Formula r);
  static Formula know(Formula f);
  static Formula intervene(Assignment asg, Formula f);
  static Formula announce(Formula alpha, Formula chi);

  bool empty() const { return !n_; }
  Op op() const;
  const Atom& as_atom() const;
  const Assignment& assignment() const;
  // Not, Know: operand. Intervene: body. Announce: body after the announcement.
  const Formula& arg() const;
  const Formula& left() const;
  const Formula& right() const;
  // Announce: the announced formula.
  const Formula& announced() const;

  std::size_t hash() const;
  std::size_t size() const;

  bool operator==(const Formula& o) const;
  bool operator!=(const Formula& o) const { return !(*this == o); }

 private:
  explicit Formula(std::shared_ptr<const detail::Node> n) : n_(std::move(n)) {}
  std::shared_ptr<const detail::Node> n_;
};

namespace detail {
struct Node {
  Op op;
  Atom atom;
  Assignment asg;
  Formula a;
  Formula b;
  std::size_t hash = 0;
  std::size_t size = 1;
};

inline std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}
inline std::size_t atom_hash(const Atom& a) {
  return mix(std::hash<std::string>{}(a.var), std::hash<std::string>{}(a.val));
}
}  // namespace detail

inline Op Formula::op() const { return n_->op; }
inline const Atom& Formula::as_atom() const { return n_->atom; }
inline const Assignment& Formula::assignment() const { return n_->asg; }
inline const Formula& Formula::arg() const { return n_->op == Op::Announce ? n_->b : n_->a; }
inline const Formula& Formula::left() const { return n_->a; }
inline const Formula& Formula::right() const { return n_->b; }
inline const Formula& Formula::announced() const { return n_->a; }
inline std::size_t Formula::hash() const { return n_->hash; }
inline std::size_t Formula::size() const { return n_->size; }

inline bool Formula::operator==(const Formula& o) const {
  if (n_ == o.n_) return true;
  if (!n_ || !o.n_) return false;
  if (n_->hash != o.n_->hash || n_->op != o.n_->op || n_->size != o.n_->size) return false;
  switch (n_->op) {
    case Op::Atom: return n_->atom == o.n_->atom;
    case Op::Not:
    case Op::Know: return n_->a == o.n_->a;
    case Op::And:
    case Op::Announce: return n_->a == o.n_->a && n_->b == o.n_->b;
    case Op::Intervene: return n_->asg == o.n_->asg && n_->a == o.n_->a;
  }
  return false;
}

inline Formula Formula::atom(Atom a) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Atom;
  n->hash = detail::mix(1, detail::atom_hash(a));
  n->atom = std::move(a);
  return Formula(n);
}

inline Formula Formula::atom(const Signature& sig, int var, int val) {
  const auto& v = sig.var(var);
  return atom(Atom{v.name, v.range.at(val), var, val});
}

inline Formula Formula::negation(Formula f) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Not;
  n->hash = detail::mix(2, f.hash());
  n->size = 1 + f.size();
  n->a = std::move(f);
  return Formula(n);
}

inline Formula Formula::conjunction(Formula l, Formula r) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::And;
  n->hash = detail::mix(detail::mix(3, l.hash()), r.hash());
  n->size = 1 + l.size() + r.size();
  n->a = std::move(l);
  n->b = std::move(r);
  return Formula(n);
}

inline Formula Formula::know(Formula f) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Know;
  n->hash = detail::mix(4, f.hash());
  n->size = 1 + f.size();
  n->a = std::move(f);
  return Formula(n);
}

inline Formula Formula::intervene(Assignment asg, Formula f) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Intervene;
  std::size_t h = 5;
  for (const auto& p : asg) h = detail::mix(h, detail::atom_hash(p));
  n->hash = detail::mix(h, f.hash());
  n->size = 1 + f.size();
  n->asg = std::move(asg);
  n->a = std::move(f);
  return Formula(n);
}

inline Formula Formula::announce(Formula alpha, Formula chi) {
  auto n = std::make_shared<detail::Node>();
  n->op = Op::Announce;
  n->hash = detail::mix(detail::mix(6, alpha.hash()), chi.hash());
  n->size = 1 + alpha.size() + chi.size();
  n->a = std::move(alpha);
  n->b = std::move(chi);
  return Formula(n);
}

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// ── Derived connectives ─────────────────────────────────────────────

inline Formula neg(Formula f) { return Formula::negation(std::move(f)); }
inline Formula conj(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
inline Formula know(Formula f) { return Formula::know(std::move(f)); }
inline Formula box(Assignment a, Formula f) { return Formula::intervene(std::move(a), std::move(f)); }
inline Formula bang(Formula alpha, Formula chi) {
  return Formula::announce(std::move(alpha), std::move(chi));
}

// a -> b  is  ~(a & ~b)
inline Formula implies(Formula a, Formula b) { return neg(conj(std::move(a), neg(std::move(b)))); }
inline Formula iff(const Formula& a, const Formula& b) { return conj(implies(a, b), implies(b, a)); }

inline Formula falsum(const Signature& sig) {
  Formula a = Formula::atom(sig, 0, 0);
  return conj(a, neg(a));
}
inline Formula verum(const Signature& sig) { return neg(falsum(sig)); }

// Left-associated conjunction; empty list is verum.
inline Formula conj_all(const std::vector<Formula>& fs, const Signature& sig) {
  if (fs.empty()) return verum(sig);
  Formula out = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) out = conj(out, fs[i]);
  return out;
}

// ~(~d1 & ... & ~dn); a single disjunct stands alone; empty list is falsum.
inline Formula disj_all(const std::vector<Formula>& ds, const Signature& sig) {
  if (ds.empty()) return falsum(sig);
  if (ds.size() == 1) return ds[0];
  Formula inner = neg(ds[0]);
  for (std::size_t i = 1; i < ds.size(); ++i) inner = conj(inner, neg(ds[i]));
  return neg(inner);
}

inline std::vector<Formula> conjuncts(const Formula& f) {
  std::vector<Formula> out;
  const Formula* cur = &f;
  std::vector<const Formula*> rights;
  while (cur->op() == Op::And) {
    rights.push_back(&cur->right());
    cur = &cur->left();
  }
  out.push_back(*cur);
  for (auto it = rights.rbegin(); it != rights.rend(); ++it) out.push_back(**it);
  return out;
}

inline std::optional<std::pair<Formula, Formula>> match_implies(const Formula& f) {
  if (f.op() != Op::Not || f.arg().op() != Op::And || f.arg().right().op() != Op::Not)
    return std::nullopt;
  return std::make_pair(f.arg().left(), f.arg().right().arg());
}

inline std::optional<std::pair<Formula, Formula>> match_iff(const Formula& f) {
  if (f.op() != Op::And) return std::nullopt;
  auto l = match_implies(f.left());
  auto r = match_implies(f.right());
  if (!l || !r || l->first != r->second || l->second != r->first) return std::nullopt;
  return l;
}

// Disjuncts of an n-ary disjunction built by disj_all with exactly n members.
inline std::optional<std::vector<Formula>> match_disjunction(const Formula& f, std::size_t n,
                                                             const Signature& sig) {
  if (n == 0) {
    if (f == falsum(sig)) return std::vector<Formula>{};
    return std::nullopt;
  }
  if (n == 1) return std::vector<Formula>{f};
  if (f.op() != Op::Not) return std::nullopt;
  auto cs = conjuncts(f.arg());
  if (cs.size() != n) return std::nullopt;
  std::vector<Formula> out;
  for (auto& c : cs) {
    if (c.op() != Op::Not) return std::nullopt;
    out.push_back(c.arg());
  }
  return out;
}

// ── Assignments ──────────────────────────────────────────────────────

// X minus the variables set by Y, then Y; canonical order.
inline Assignment override_with(const Assignment& x, const Assignment& y) {
  Assignment out;
  for (const auto& p : x)
    if (!contains_var(y, p.var)) out.push_back(p);
  for (const auto& p : y) out.push_back(p);
  std::stable_sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.vi < b.vi; });
  return out;
}

inline Assignment bind_assignment(Assignment a, const Signature& sig) {
  for (auto& p : a) {
    p.vi = sig.index_of(p.var);
    if (p.vi < 0) throw ValidationError("unknown variable '" + p.var + "'");
    p.xi = sig.value_index(p.vi, p.val);
    if (p.xi < 0) throw ValidationError("value '" + p.val + "' out of range for '" + p.var + "'");
  }
  std::sort(a.begin(), a.end(), [](const Atom& x, const Atom& y) { return x.vi < y.vi; });
  for (std::size_t i = 1; i < a.size(); ++i)
    if (a[i].vi == a[i - 1].vi) throw ValidationError("duplicate variable '" + a[i].var + "' in intervention");
  return a;
}

// Resolve names against a signature. Throws on unknown names or values.
inline Formula bind(const Formula& f, const Signature& sig) {
  switch (f.op()) {
    case Op::Atom: {
      Atom a = f.as_atom();
      a.vi = sig.index_of(a.var);
      if (a.vi < 0) throw ValidationError("unknown variable '" + a.var + "'");
      a.xi = sig.value_index(a.vi, a.val);
      if (a.xi < 0) throw ValidationError("value '" + a.val + "' out of range for '" + a.var + "'");
      return Formula::atom(a);
    }
    case Op::Not: return neg(bind(f.arg(), sig));
    case Op::And: return conj(bind(f.left(), sig), bind(f.right(), sig));
    case Op::Know: return know(bind(f.arg(), sig));
    case Op::Intervene: return box(bind_assignment(f.assignment(), sig), bind(f.arg(), sig));
    case Op::Announce: return bang(bind(f.announced(), sig), bind(f.arg(), sig));
  }
  return f;
}

// Distinct subformulas, preorder.
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::function<void(const Formula&)> go = [&](const Formula& g) {
    if (!seen.insert(g).second) return;
    out.push_back(g);
    switch (g.op()) {
      case Op::Atom: break;
      case Op::Not:
      case Op::Know:
      case Op::Intervene: go(g.arg()); break;
      case Op::And: go(g.left()); go(g.right()); break;
      case Op::Announce: go(g.announced()); go(g.arg()); break;
    }
  };
  go(f);
  return out;
}

inline int depth(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return 1;
    case Op::Not:
    case Op::Know:
    case Op::Intervene: return 1 + depth(f.arg());
    case Op::And: return 1 + std::max(depth(f.left()), depth(f.right()));
    case Op::Announce: return 1 + std::max(depth(f.announced()), depth(f.arg()));
  }
  return 0;
}

}  // namespace ecl
