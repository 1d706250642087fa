#pragma once

#include <string>
#include <vector>

#include <ecl/ecl.hpp>

namespace ecl::testing {

struct GoldenSchema {
  std::string name;
  std::string instance;
  std::vector<std::string> mutations;
};

// Over U1, U2 exogenous and V1 endogenous, observables {V1}. A6 is built
// in code because direct-cause formulas are long.
inline const std::vector<GoldenSchema>& golden_schemas() {
  static const std::vector<GoldenSchema> g{
      {"P", "V1=1 -> (U1=0 -> V1=1)", {"V1=1 -> (U1=0 -> V1=0)", "V1=1 & (U1=0 -> V1=1)"}},
      {"A1", "[U1=1] V1=1 -> ~[U1=1] V1=0", {"[U1=1] V1=1 -> ~[U1=1] V1=1", "[U1=1] V1=1 -> ~[U1=0] V1=0"}},
      {"A2", "[U1=1] V1=0 | [U1=1] V1=1", {"[U1=1] V1=0 | [U1=0] V1=1", "[U1=1] V1=0 | [U1=1] V1=0"}},
      {"A3",
       "[U1=1] U2=0 & [U1=1] V1=1 -> [U1=1, U2=0] V1=1",
       {"[U1=1] U2=0 & [U1=1] V1=1 -> [U1=1, U2=1] V1=1", "[U1=1] U2=0 & [U1=1] V1=1 -> [U1=1] V1=1"}},
      {"A4", "[U1=1, V1=0] V1=0", {"[U1=1, V1=0] V1=1", "[U1=1] V1=0"}},
      {"A5",
       "[U1=1, U2=0] V1=1 & [U1=1, V1=1] U2=0 -> [U1=1] V1=1",
       {"[U1=1, U2=0] V1=1 & [U1=1, V1=1] U2=0 -> [U1=0] V1=1",
        "[U1=1, U2=1] V1=1 & [U1=1, V1=1] U2=0 -> [U1=1] V1=1"}},
      {"A7", "[] U1=1 <-> [V1=0] U1=1", {"[] V1=1 <-> [U1=0] V1=1", "[] U1=1 <-> [U1=0] U1=1"}},
      {"A_box", "V1=1 <-> [] V1=1", {"V1=1 <-> [] V1=0", "V1=1 <-> [U1=0] V1=1"}},
      {"A_neg",
       "[U1=1] ~K V1=1 <-> ~[U1=1] K V1=1",
       {"[U1=1] ~K V1=1 <-> ~[U1=0] K V1=1", "[U1=1] ~K V1=1 <-> [U1=1] K V1=1"}},
      {"A_and",
       "[U1=1] (V1=1 & U2=0) <-> [U1=1] V1=1 & [U1=1] U2=0",
       {"[U1=1] (V1=1 & U2=0) <-> [U1=1] V1=1 & [U1=0] U2=0",
        "[U1=1] (V1=1 & U2=0) <-> [U1=1] V1=1 & [U1=1] U2=1"}},
      {"A_boxbox",
       "[U1=1, V1=0] [V1=1] U2=0 <-> [U1=1, V1=1] U2=0",
       {"[U1=1, V1=0] [V1=1] U2=0 <-> [U1=1, V1=0] U2=0", "[U1=1, V1=0] [V1=1] U2=0 <-> [V1=1] U2=0"}},
      {"K",
       "K (V1=1 -> U1=0) -> (K V1=1 -> K U1=0)",
       {"K (V1=1 -> U1=0) -> (K V1=1 -> K U1=1)", "K (V1=1 -> U1=0) -> (K U1=0 -> K V1=1)"}},
      {"T", "K V1=1 -> V1=1", {"K V1=1 -> V1=0", "K V1=1 -> U1=1"}},
      {"4", "K V1=1 -> K K V1=1", {"K V1=1 -> K V1=1", "K V1=1 -> K K V1=0"}},
      {"5", "~K V1=1 -> K ~K V1=1", {"~K V1=1 -> K K V1=1", "~K V1=1 -> K ~K V1=0"}},
      {"CM",
       "[U1=1] K V1=1 <-> K [U1=1] V1=1",
       {"[U1=1] K V1=1 <-> K [U1=0] V1=1", "[U1=1] K V1=1 <-> K V1=1"}},
      {"KL",
       "[U1=1, U2=0] V1=1 -> K [U1=1, U2=0] V1=1",
       {"[U1=1] V1=1 -> K [U1=1] V1=1", "[U1=1, V1=0] U2=1 -> K [U1=1, V1=0] U2=1"}},
      {"Bang_eq",
       "[U1=1 !] [V1=0] U2=1 <-> (U1=1 -> [V1=0] U2=1)",
       {"[U1=1 !] [V1=0] U2=1 <-> (U1=0 -> [V1=0] U2=1)", "[U1=1 !] [V1=0] U2=1 <-> (U1=1 -> [V1=1] U2=1)"}},
      {"Bang_neg",
       "[U1=1 !] ~V1=1 <-> (U1=1 -> ~[U1=1 !] V1=1)",
       {"[U1=1 !] ~V1=1 <-> (U1=1 -> [U1=1 !] V1=1)", "[U1=1 !] ~V1=1 <-> (U1=0 -> ~[U1=1 !] V1=1)"}},
      {"Bang_and",
       "[U1=1 !] (V1=1 & U2=0) <-> [U1=1 !] V1=1 & [U1=1 !] U2=0",
       {"[U1=1 !] (V1=1 & U2=0) <-> [U1=1 !] V1=1 & [U1=0 !] U2=0",
        "[U1=1 !] (V1=1 & U2=0) <-> [U1=1 !] V1=1 & [U1=1 !] U2=1"}},
      {"Bang_K",
       "[U1=1 !] K V1=1 <-> (U1=1 -> K (U1=1 -> [U1=1 !] V1=1))",
       {"[U1=1 !] K V1=1 <-> (U1=1 -> K (U1=0 -> [U1=1 !] V1=1))",
        "[U1=1 !] K V1=1 <-> (U1=1 -> K (U1=1 -> [U1=1 !] V1=0))"}},
      {"Bang_bang",
       "[U1=1 !] [V1=1 !] U2=0 <-> [U1=1 & [U1=1 !] V1=1 !] U2=0",
       {"[U1=1 !] [V1=1 !] U2=0 <-> [U1=1 & [U1=1 !] V1=0 !] U2=0",
        "[U1=1 !] [V1=1 !] U2=0 <-> [U1=1 & [U1=0 !] V1=1 !] U2=0"}},
      {"K_bang",
       "[U1=1 !] (V1=1 -> U2=0) -> ([U1=1 !] V1=1 -> [U1=1 !] U2=0)",
       {"[U1=1 !] (V1=1 -> U2=0) -> ([U1=0 !] V1=1 -> [U1=1 !] U2=0)",
        "[U1=1 !] (V1=1 -> U2=0) -> ([U1=1 !] V1=1 -> [U1=1 !] U2=1)"}},
      {"Eq_bang",
       "[U2=0] [V1=1 !] K U1=1 <-> [[U2=0] V1=1 !] [U2=0] K U1=1",
       {"[U2=0] [V1=1 !] K U1=1 <-> [[U2=1] V1=1 !] [U2=0] K U1=1",
        "[U2=0] [V1=1 !] K U1=1 <-> [V1=1 !] [U2=0] K U1=1"}},
      {"OC", "[U1=1] (K V1=0 | K V1=1)", {"[U1=1] (K V1=0 | K V1=0)", "[U1=1] (K V1=0 | V1=1)"}},
      {"PD",
       "[U1=1] K U2=0 <-> ([U1=1] V1=0 & [[U1=1] V1=0 !] K [U1=1] U2=0) | ([U1=1] V1=1 & [[U1=1] V1=1 !] K [U1=1] U2=0)",
       {"[U1=1] K U2=0 <-> ([U1=1] V1=0 & [[U1=1] V1=0 !] K [U1=1] U2=0) | ([U1=1] V1=1 & [[U1=1] V1=0 !] K [U1=1] U2=0)",
        "[U1=1] K U2=0 <-> ([U1=1] V1=0 & [[U1=1] V1=0 !] K [U1=0] U2=0) | ([U1=1] V1=1 & [[U1=1] V1=1 !] K [U1=1] U2=0)"}},
  };
  return g;
}

inline Signature golden_signature() { return binary_signature({"U1", "U2"}, {"V1"}, {"V1"}); }

// A6 needs two endogenous variables to close a cycle.
inline Signature chain_signature() { return binary_signature({"U1"}, {"V1", "V2"}); }

struct A6Golden {
  Formula instance;
  std::vector<Formula> mutations;
};

inline A6Golden golden_a6() {
  Signature s = chain_signature();
  Formula v12 = direct_cause_formula(s, 1, 2), v21 = direct_cause_formula(s, 2, 1);
  Formula u1 = direct_cause_formula(s, 0, 1);
  return {implies(v12, neg(v21)), {implies(v12, v21), implies(v12, neg(v12)), implies(u1, neg(v21))}};
}

}  // namespace ecl::testing
