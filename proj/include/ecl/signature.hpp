#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "error.hpp"

namespace ecl {

struct Variable {
  std::string name;
  bool exogenous = false;
  std::vector<std::string> range;
};

// Exogenous variables first, then endogenous, each in declaration order.
class Signature {
 public:
  Signature() = default;

  Signature(std::vector<Variable> exo, std::vector<Variable> endo,
            std::vector<std::string> observables = {}) {
    for (auto& v : exo) add(std::move(v), true);
    n_exo_ = vars_.size();
    for (auto& v : endo) add(std::move(v), false);
    observable_.assign(vars_.size(), false);
    for (const auto& o : observables) {
      int i = index_of(o);
      if (i < 0) throw ValidationError("unknown observable '" + o + "'");
      observable_[i] = true;
    }
  }

  std::size_t size() const { return vars_.size(); }
  std::size_t exogenous_count() const { return n_exo_; }
  const Variable& var(int i) const { return vars_.at(i); }
  const std::vector<Variable>& vars() const { return vars_; }
  bool is_exogenous(int i) const { return static_cast<std::size_t>(i) < n_exo_; }
  std::size_t range_size(int i) const { return vars_[i].range.size(); }

  int index_of(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
  }

  int value_index(int var, const std::string& value) const {
    const auto& r = vars_[var].range;
    auto it = std::find(r.begin(), r.end(), value);
    return it == r.end() ? -1 : static_cast<int>(it - r.begin());
  }

  bool is_observable(int i) const { return observable_[i]; }
  std::vector<int> observables() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (observable_[i]) out.push_back(static_cast<int>(i));
    return out;
  }

  Signature with_observables(const std::vector<int>& obs) const {
    Signature s = *this;
    s.observable_.assign(vars_.size(), false);
    for (int i : obs) s.observable_.at(i) = true;
    return s;
  }

  bool operator==(const Signature& o) const {
    if (n_exo_ != o.n_exo_ || vars_.size() != o.vars_.size() || observable_ != o.observable_)
      return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i].name != o.vars_[i].name || vars_[i].range != o.vars_[i].range) return false;
    return true;
  }

 private:
  void add(Variable v, bool exo) {
    if (v.name.empty()) throw ValidationError("empty variable name");
    if (by_name_.count(v.name)) throw ValidationError("duplicate variable '" + v.name + "'");
    if (v.range.empty()) throw ValidationError("empty range for '" + v.name + "'");
    if (v.range.size() > 255) throw ValidationError("range too large for '" + v.name + "'");
    for (std::size_t i = 0; i < v.range.size(); ++i)
      for (std::size_t j = i + 1; j < v.range.size(); ++j)
        if (v.range[i] == v.range[j])
          throw ValidationError("duplicate value '" + v.range[i] + "' in range of '" + v.name + "'");
    v.exogenous = exo;
    by_name_[v.name] = static_cast<int>(vars_.size());
    vars_.push_back(std::move(v));
  }

  std::vector<Variable> vars_;
  std::size_t n_exo_ = 0;
  std::vector<bool> observable_;
  std::unordered_map<std::string, int> by_name_;
};

// Value index per variable, canonical variable order.
struct Valuation {
  std::vector<std::uint8_t> v;

  Valuation() = default;
  explicit Valuation(std::size_t n) : v(n, 0) {}
  explicit Valuation(std::vector<std::uint8_t> vals) : v(std::move(vals)) {}

  std::uint8_t operator[](std::size_t i) const { return v[i]; }
  std::uint8_t& operator[](std::size_t i) { return v[i]; }
  std::size_t size() const { return v.size(); }

  auto operator<=>(const Valuation&) const = default;
  bool operator==(const Valuation&) const = default;
};

inline std::string to_string(const Signature& sig, const Valuation& val) {
  std::string s = "(";
  for (std::size_t i = 0; i < val.size(); ++i) {
    if (i) s += ", ";
    s += sig.var(static_cast<int>(i)).name + "=" + sig.var(static_cast<int>(i)).range[val[i]];
  }
  return s + ")";
}

// Convenience: all binary variables with range {0,1}.
inline Signature binary_signature(const std::vector<std::string>& exo,
                                  const std::vector<std::string>& endo,
                                  const std::vector<std::string>& observables = {}) {
  std::vector<Variable> u, v;
  for (const auto& n : exo) u.push_back({n, true, {"0", "1"}});
  for (const auto& n : endo) v.push_back({n, false, {"0", "1"}});
  return Signature(u, v, observables);
}

}  // namespace ecl
