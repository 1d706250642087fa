#pragma once

#include <cstdint>
#include <algorithm>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "formula.hpp"
#include "signature.hpp"

namespace ecl {

// F_V as a lookup table over its declared parents. The table index is mixed
// radix over parent value indices, first parent most significant.
struct StructuralFunction {
  std::vector<int> parents;
  std::vector<std::uint8_t> table;

  std::uint8_t apply(const Valuation& a, const Signature& sig) const {
    std::size_t idx = 0;
    for (int p : parents) idx = idx * sig.range_size(p) + a[p];
    return table[idx];
  }
};

class FunctionSet {
 public:
  FunctionSet() = default;

  // fns holds one entry per endogenous variable, in canonical order.
  FunctionSet(std::shared_ptr<const Signature> sig, std::vector<StructuralFunction> fns) : sig_(std::move(sig)) {
    const std::size_t n = sig_->size(), ne = sig_->exogenous_count();
    if (fns.size() != n - ne) throw ValidationError("function count does not match endogenous variables");
    fns_.resize(n);
    for (std::size_t i = 0; i < fns.size(); ++i) {
      int v = static_cast<int>(ne + i);
      auto& f = fns[i];
      std::size_t cells = 1;
      for (std::size_t a = 0; a < f.parents.size(); ++a) {
        int p = f.parents[a];
        if (p < 0 || static_cast<std::size_t>(p) >= n || p == v)
          throw ValidationError("bad parent for '" + sig_->var(v).name + "'");
        for (std::size_t b = a + 1; b < f.parents.size(); ++b)
          if (f.parents[b] == p) throw ValidationError("duplicate parent for '" + sig_->var(v).name + "'");
        cells *= sig_->range_size(p);
      }
      if (f.table.size() != cells)
        throw ValidationError("table for '" + sig_->var(v).name + "' has " + std::to_string(f.table.size()) +
                              " entries, expected " + std::to_string(cells));
      for (auto x : f.table)
        if (x >= sig_->range_size(v)) throw ValidationError("table value out of range for '" + sig_->var(v).name + "'");
      fns_[v] = std::make_shared<const StructuralFunction>(std::move(f));
    }
    compute_order();
  }

  const Signature& signature() const { return *sig_; }
  const std::shared_ptr<const Signature>& signature_ptr() const { return sig_; }
  const StructuralFunction& function(int v) const { return *fns_.at(v); }
  bool recursive() const { return recursive_; }
  // Endogenous variables in an order compatible with the direct-cause graph.
  const std::vector<int>& order() const { return order_; }

  // X => V: some setting of the other variables and two values of X give different F_V.
  bool direct_cause(int x, int v) const {
    if (sig_->is_exogenous(v) || x == v) return false;
    const auto& f = *fns_[v];
    std::size_t pos = f.parents.size();
    for (std::size_t k = 0; k < f.parents.size(); ++k)
      if (f.parents[k] == x) pos = k;
    if (pos == f.parents.size()) return false;
    // stride of x in the table
    std::size_t stride = 1;
    for (std::size_t k = f.parents.size(); k-- > pos + 1;) stride *= sig_->range_size(f.parents[k]);
    const std::size_t rx = sig_->range_size(x);
    const std::size_t block = stride * rx;
    for (std::size_t base = 0; base < f.table.size(); base += block)
      for (std::size_t off = 0; off < stride; ++off)
        for (std::size_t a = 1; a < rx; ++a)
          if (f.table[base + off] != f.table[base + off + a * stride]) return true;
    return false;
  }

  std::vector<std::vector<bool>> graph() const {
    const std::size_t n = sig_->size();
    std::vector<std::vector<bool>> g(n, std::vector<bool>(n, false));
    for (std::size_t v = sig_->exogenous_count(); v < n; ++v)
      for (std::size_t x = 0; x < n; ++x) g[x][v] = direct_cause(static_cast<int>(x), static_cast<int>(v));
    return g;
  }

  // Variables of the signature whose function is replaced by a constant.
  FunctionSet intervened(const Assignment& asg) const {
    FunctionSet out = *this;
    for (const auto& p : asg) {
      if (sig_->is_exogenous(p.vi)) continue;
      out.fns_[p.vi] = std::make_shared<const StructuralFunction>(
          StructuralFunction{{}, {static_cast<std::uint8_t>(p.xi)}});
    }
    return out;
  }

  // The unique solution for the exogenous part of a.
  Valuation solve(Valuation a) const {
    if (!recursive_) throw ValidationError("function set is not recursive");
    for (int v : order_) a[v] = fns_[v]->apply(a, *sig_);
    return a;
  }

  bool complies(const Valuation& a) const {
    for (std::size_t v = sig_->exogenous_count(); v < sig_->size(); ++v)
      if (fns_[v]->apply(a, *sig_) != a[v]) return false;
    return true;
  }

  bool operator==(const FunctionSet& o) const {
    if (!(*sig_ == *o.sig_)) return false;
    for (std::size_t v = sig_->exogenous_count(); v < sig_->size(); ++v)
      if (fns_[v]->parents != o.fns_[v]->parents || fns_[v]->table != o.fns_[v]->table) return false;
    return true;
  }

 private:
  void compute_order() {
    // Kahn on the semantic graph; only endogenous nodes have incoming edges.
    const std::size_t n = sig_->size(), ne = sig_->exogenous_count();
    auto g = graph();
    std::vector<int> indeg(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t v = ne; v < n; ++v)
        if (g[x][v]) ++indeg[v];
    std::vector<int> ready;
    for (std::size_t v = ne; v < n; ++v)
      if (indeg[v] == 0) ready.push_back(static_cast<int>(v));
    // exogenous edges are satisfied from the start
    for (std::size_t x = 0; x < ne; ++x)
      for (std::size_t v = ne; v < n; ++v)
        if (g[x][v] && --indeg[v] == 0) ready.push_back(static_cast<int>(v));
    order_.clear();
    while (!ready.empty()) {
      std::sort(ready.begin(), ready.end(), std::greater<>());
      int v = ready.back();
      ready.pop_back();
      order_.push_back(v);
      for (std::size_t w = ne; w < n; ++w)
        if (g[v][w] && --indeg[w] == 0) ready.push_back(static_cast<int>(w));
    }
    recursive_ = order_.size() == n - ne;
  }

  std::shared_ptr<const Signature> sig_;
  std::vector<std::shared_ptr<const StructuralFunction>> fns_;
  std::vector<int> order_;
  bool recursive_ = false;
};

// Reflexive-free transitive closure of the direct-cause graph.
inline std::vector<std::vector<bool>> causal_closure(const FunctionSet& F) {
  auto c = F.graph();
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (c[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (c[k][j]) c[i][j] = true;
  return c;
}

// Recursiveness by two independent routes. They must agree.
inline bool acyclic_by_order(const FunctionSet& F) { return F.recursive(); }

inline bool acyclic_by_closure(const FunctionSet& F) {
  auto c = causal_closure(F);
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i)
    if (c[i][i]) return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (c[i][j] && c[j][k] && !c[i][k]) return false;
  return true;
}

inline bool is_recursive(const FunctionSet& F) {
  bool a = acyclic_by_order(F), b = acyclic_by_closure(F);
  if (a != b) throw std::logic_error("recursiveness checks disagree");
  return a;
}

inline Valuation apply_assignment(Valuation a, const Assignment& asg) {
  for (const auto& p : asg) a[p.vi] = static_cast<std::uint8_t>(p.xi);
  return a;
}

// (F, A) under X=x: intervened exogenous variables take the new value, the
// rest keep A's; endogenous variables are re-solved.
inline std::pair<FunctionSet, Valuation> intervene_causal(const FunctionSet& F, const Valuation& a,
                                                          const Assignment& asg) {
  if (asg.empty()) return {F, a};
  FunctionSet G = F.intervened(asg);
  return {G, G.solve(apply_assignment(a, asg))};
}

// All full solutions, one per exogenous combination, lexicographic.
inline std::vector<Valuation> all_solutions(const FunctionSet& F) {
  const auto& sig = F.signature();
  const std::size_t ne = sig.exogenous_count();
  std::vector<Valuation> out;
  Valuation a(sig.size());
  while (true) {
    out.push_back(F.solve(a));
    bool done = true;
    for (std::size_t k = ne; k-- > 0;) {
      if (++a[k] < sig.range_size(static_cast<int>(k))) {
        done = false;
        break;
      }
      a[k] = 0;
    }
    if (done) return out;
  }
}

// The formula expressing "X is a direct cause of V": a disjunction over
// settings z of the other variables, x1 != x2 and v1 != v2 of
//   [Z=z, X=x1] V=v1 & [Z=z, X=x2] V=v2
// enumerated lexicographically in (z, x1, x2, v1, v2).
inline Formula direct_cause_formula(const Signature& sig, int x, int v, std::size_t max_disjuncts = 200000) {
  if (x == v) throw ValidationError("direct cause needs two distinct variables");
  if (sig.is_exogenous(v)) throw ValidationError("effect variable must be endogenous");
  std::vector<int> z;
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (static_cast<int>(i) != x && static_cast<int>(i) != v) z.push_back(static_cast<int>(i));
  std::size_t nz = 1;
  for (int i : z) {
    nz *= sig.range_size(i);
    if (nz > max_disjuncts) throw BudgetExceeded("direct-cause formula too large");
  }
  const std::size_t rx = sig.range_size(x), rv = sig.range_size(v);
  std::size_t total = nz * rx * (rx - 1) * rv * (rv - 1);
  if (total > max_disjuncts) throw BudgetExceeded("direct-cause formula too large");
  std::vector<Formula> ds;
  ds.reserve(total);
  std::vector<std::size_t> zv(z.size(), 0);
  auto make = [&](std::size_t xv, std::size_t vv) {
    Assignment asg;
    for (std::size_t k = 0; k < z.size(); ++k)
      asg.push_back(Atom{sig.var(z[k]).name, sig.var(z[k]).range[zv[k]], z[k], static_cast<int>(zv[k])});
    asg.push_back(Atom{sig.var(x).name, sig.var(x).range[xv], x, static_cast<int>(xv)});
    std::sort(asg.begin(), asg.end(), [](const Atom& a, const Atom& b) { return a.vi < b.vi; });
    return box(asg, Formula::atom(sig, v, static_cast<int>(vv)));
  };
  for (std::size_t iz = 0; iz < nz; ++iz) {
    for (std::size_t x1 = 0; x1 < rx; ++x1)
      for (std::size_t x2 = 0; x2 < rx; ++x2) {
        if (x1 == x2) continue;
        for (std::size_t v1 = 0; v1 < rv; ++v1)
          for (std::size_t v2 = 0; v2 < rv; ++v2) {
            if (v1 == v2) continue;
            ds.push_back(conj(make(x1, v1), make(x2, v2)));
          }
      }
    for (std::size_t k = z.size(); k-- > 0;) {
      if (++zv[k] < sig.range_size(z[k])) break;
      zv[k] = 0;
    }
  }
  return disj_all(ds, sig);
}

}  // namespace ecl
