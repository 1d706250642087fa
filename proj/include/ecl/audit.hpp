#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "epistemic.hpp"
#include "explore.hpp"
#include "proof.hpp"

namespace ecl {

// Random literal instances of a schema. Metavariables are filled with
// sampled formulas of the given fragment.
class InstanceGenerator {
 public:
  InstanceGenerator(const Signature& sig, Fragment frag, std::uint64_t seed, int depth = 2)
      : sig_(sig), sampler_(sig, make_opts(frag, seed, depth)), depth_(depth) {}

  // nullopt when the signature admits no instance (e.g. A6 without endogenous variables).
  std::optional<Formula> instance(const std::string& name) {
    auto& r = sampler_.rng();
    auto phi = [&] { return sampler_.sample(1 + static_cast<int>(r.below(depth_))); };
    auto X = [&] { return sampler_.assignment(); };
    auto var_with = [&](auto pred) -> int {
      std::vector<int> ok;
      for (std::size_t v = 0; v < sig_.size(); ++v)
        if (pred(static_cast<int>(v))) ok.push_back(static_cast<int>(v));
      return ok.empty() ? -1 : ok[r.below(ok.size())];
    };
    auto val = [&](int v) { return static_cast<int>(r.below(sig_.range_size(v))); };
    auto atom = [&](int v, int x) { return Formula::atom(sig_, v, x); };
    auto pair = [&](int v, int x) { return Atom{sig_.var(v).name, sig_.var(v).range[x], v, x}; };

    if (name == "P") {
      Formula p = phi(), q = phi(), s = phi();
      switch (r.below(7)) {
        case 0: return implies(p, implies(q, p));
        case 1: return implies(implies(p, implies(q, s)), implies(implies(p, q), implies(p, s)));
        case 2: return implies(implies(neg(p), neg(q)), implies(q, p));
        case 3: return implies(conj(p, q), p);
        case 4: return iff(p, neg(neg(p)));
        case 5: return implies(iff(p, q), implies(p, q));
        default: return implies(implies(p, q), implies(implies(q, p), iff(p, q)));
      }
    }
    if (name == "A1") {
      int y = var_with([&](int v) { return sig_.range_size(v) >= 2; });
      if (y < 0) return std::nullopt;
      int a = val(y), b = (a + 1 + static_cast<int>(r.below(sig_.range_size(y) - 1))) % sig_.range_size(y);
      auto x = X();
      return implies(box(x, atom(y, a)), neg(box(x, atom(y, b))));
    }
    if (name == "A2") {
      int y = var_with([](int) { return true; });
      auto x = X();
      std::vector<Formula> ds;
      for (std::size_t k = 0; k < sig_.range_size(y); ++k) ds.push_back(box(x, atom(y, static_cast<int>(k))));
      return disj_all(ds, sig_);
    }
    if (name == "A3") {
      auto x = X();
      int y = var_with([&](int v) { return !contains_var(x, sig_.var(v).name); });
      if (y < 0) return std::nullopt;
      int z = var_with([](int) { return true; });
      Atom py = pair(y, val(y));
      Formula az = atom(z, val(z));
      return implies(conj(box(x, Formula::atom(py)), box(x, az)), box(detail::add_pair(x, py), az));
    }
    if (name == "A4") {
      auto x = X();
      int y = var_with([](int) { return true; });
      Atom py = pair(y, val(y));
      return box(override_with(x, {py}), Formula::atom(py));
    }
    if (name == "A5") {
      auto x = X();
      int y = var_with([&](int v) { return !contains_var(x, sig_.var(v).name); });
      int z = var_with([&](int v) { return v != y && !contains_var(x, sig_.var(v).name); });
      if (y < 0 || z < 0) return std::nullopt;
      Atom py = pair(y, val(y)), pz = pair(z, val(z));
      return implies(conj(box(detail::add_pair(x, py), Formula::atom(pz)), box(detail::add_pair(x, pz), Formula::atom(py))),
                     box(x, Formula::atom(pz)));
    }
    if (name == "A6") {
      int x0 = var_with([&](int v) { return !sig_.is_exogenous(v); });
      if (x0 < 0 || sig_.size() < 2) return std::nullopt;
      std::size_t k = 1 + r.below(2);
      std::vector<int> chain{x0};
      for (std::size_t i = 0; i < k; ++i) {
        int prev = chain.back();
        bool final_step = i + 1 == k;
        int next = var_with([&](int v) {
          return v != prev && !sig_.is_exogenous(v) && !(final_step && v == x0);
        });
        if (next < 0) {
          if (chain.size() < 2) return std::nullopt;
          break;
        }
        chain.push_back(next);
      }
      std::vector<Formula> links;
      for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        links.push_back(direct_cause_formula(sig_, chain[i], chain[i + 1]));
      Formula ante = links[0];
      for (std::size_t i = 1; i < links.size(); ++i) ante = conj(ante, links[i]);
      return implies(ante, neg(direct_cause_formula(sig_, chain.back(), chain.front())));
    }
    if (name == "A7") {
      auto x = X();
      int u = var_with([&](int v) { return sig_.is_exogenous(v) && !contains_var(x, sig_.var(v).name); });
      if (u < 0) return std::nullopt;
      Formula a = atom(u, val(u));
      return iff(box({}, a), box(x, a));
    }
    if (name == "A_box") {
      int y = var_with([](int) { return true; });
      Formula a = atom(y, val(y));
      return iff(a, box({}, a));
    }
    if (name == "A_neg") {
      auto x = X();
      Formula p = phi();
      return iff(box(x, neg(p)), neg(box(x, p)));
    }
    if (name == "A_and") {
      auto x = X();
      Formula p = phi(), q = phi();
      return iff(box(x, conj(p, q)), conj(box(x, p), box(x, q)));
    }
    if (name == "A_boxbox") {
      auto x = X(), y = X();
      Formula p = phi();
      return iff(box(x, box(y, p)), box(override_with(x, y), p));
    }
    if (name == "K") {
      Formula p = phi(), q = phi();
      return implies(know(implies(p, q)), implies(know(p), know(q)));
    }
    if (name == "T") {
      Formula p = phi();
      return implies(know(p), p);
    }
    if (name == "4") {
      Formula p = phi();
      return implies(know(p), know(know(p)));
    }
    if (name == "5") {
      Formula p = phi();
      return implies(neg(know(p)), know(neg(know(p))));
    }
    if (name == "CM") {
      auto x = X();
      Formula p = phi();
      return iff(box(x, know(p)), know(box(x, p)));
    }
    if (name == "KL") {
      int y = var_with([&](int v) { return !sig_.is_exogenous(v); });
      if (y < 0) return std::nullopt;
      Assignment x;
      for (std::size_t v = 0; v < sig_.size(); ++v)
        if (static_cast<int>(v) != y) x.push_back(pair(static_cast<int>(v), val(static_cast<int>(v))));
      Formula p = box(x, atom(y, val(y)));
      return implies(p, know(p));
    }
    if (name == "Bang_eq") {
      Formula a = phi();
      auto x = X();
      int y = var_with([](int) { return true; });
      Formula t = box(x, atom(y, val(y)));
      return iff(bang(a, t), implies(a, t));
    }
    if (name == "Bang_neg") {
      Formula a = phi(), c = phi();
      return iff(bang(a, neg(c)), implies(a, neg(bang(a, c))));
    }
    if (name == "Bang_and") {
      Formula a = phi(), c1 = phi(), c2 = phi();
      return iff(bang(a, conj(c1, c2)), conj(bang(a, c1), bang(a, c2)));
    }
    if (name == "Bang_K") {
      Formula a = phi(), c = phi();
      return iff(bang(a, know(c)), implies(a, know(implies(a, bang(a, c)))));
    }
    if (name == "Bang_bang") {
      Formula a1 = phi(), a2 = phi(), c = phi();
      return iff(bang(a1, bang(a2, c)), bang(conj(a1, bang(a1, a2)), c));
    }
    if (name == "K_bang") {
      Formula a = phi(), c1 = phi(), c2 = phi();
      return implies(bang(a, implies(c1, c2)), implies(bang(a, c1), bang(a, c2)));
    }
    if (name == "Eq_bang") {
      auto x = X();
      Formula a = phi(), c = phi();
      return iff(box(x, bang(a, c)), bang(box(x, a), box(x, c)));
    }
    if (name == "OC") return oc_instance(sig_, X());
    if (name == "PD") {
      auto x = X();
      Formula p = phi();
      Formula inner = know(box(x, p));
      std::vector<Formula> ds;
      for (const auto& o : observable_settings(sig_)) {
        Formula seen = box(x, observation_formula(sig_, o));
        ds.push_back(conj(seen, bang(seen, inner)));
      }
      return iff(box(x, know(p)), disj_all(ds, sig_));
    }
    throw ValidationError("unknown axiom '" + name + "'");
  }

 private:
  static SampleOptions make_opts(Fragment frag, std::uint64_t seed, int depth) {
    SampleOptions o;
    o.fragment = frag;
    o.seed = seed;
    o.depth = depth;
    return o;
  }

  const Signature& sig_;
  FormulaSampler sampler_;
  int depth_;
};

struct Counterexample {
  Formula instance;
  PointedModel model;
  // For equivalences: "ltr" when the left side holds and the right fails, "rtl" otherwise.
  std::string direction;
};

struct SchemaAudit {
  std::string name;
  std::size_t instances = 0;
  std::size_t evaluations = 0;
  // One entry per failing instance, with the first model that refutes it.
  std::vector<Counterexample> counterexamples;
};

struct AuditOptions {
  std::size_t instances_per_schema = 50;
  std::uint64_t seed = 1;
  int depth = 2;
  Caps caps;
  // Empty means the schemas of the system.
  std::vector<std::string> schemas;
  // Overrides the semantics of the system.
  std::optional<Mode> mode;
};

struct AuditReport {
  ProofSystem system;
  Mode mode;
  std::size_t models = 0;
  std::vector<SchemaAudit> schemas;

  std::size_t total_counterexamples() const {
    std::size_t n = 0;
    for (const auto& s : schemas) n += s.counterexamples.size();
    return n;
  }
};

inline std::string failing_direction(const Formula& f, const PointedModel& p, Mode mode) {
  auto bi = match_iff(f);
  if (!bi) return "";
  return evaluate(p, bi->first, mode) ? "ltr" : "rtl";
}

inline AuditReport audit_soundness(ProofSystem system, std::shared_ptr<const Signature> sig,
                                   const AuditOptions& opt = {}) {
  AuditReport rep;
  rep.system = system;
  rep.mode = opt.mode.value_or(system_mode(system));
  auto models = enumerate_pointed(sig, rep.mode, opt.caps);
  rep.models = models.size();
  auto names = opt.schemas.empty() ? schemas(system) : opt.schemas;
  std::uint64_t salt = 0;
  for (const auto& name : names) {
    SchemaAudit sa;
    sa.name = name;
    InstanceGenerator gen(*sig, system_fragment(system), opt.seed * 1000003 + salt++, opt.depth);
    // Some draws admit no instance (say X already covers every variable); retry those.
    const std::size_t attempts = opt.instances_per_schema * 20;
    for (std::size_t i = 0; i < attempts && sa.instances < opt.instances_per_schema; ++i) {
      auto inst = gen.instance(name);
      if (!inst) continue;
      ++sa.instances;
      for (const auto& p : models) {
        ++sa.evaluations;
        if (!evaluate(p, *inst, rep.mode)) {
          sa.counterexamples.push_back({*inst, p, failing_direction(*inst, p, rep.mode)});
          break;
        }
      }
    }
    rep.schemas.push_back(std::move(sa));
  }
  return rep;
}

}  // namespace ecl
