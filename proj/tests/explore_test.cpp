#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ecl;
using ecl::testing::sig_ptr;

TEST(Enumerate, SmallCounts) {
  auto s = sig_ptr({"U1"}, {"V1"});
  EXPECT_EQ(enumerate_functions(s).size(), 4u);
  EXPECT_EQ(enumerate_pointed(s, Mode::Epistemic).size(), 16u);
  EXPECT_EQ(enumerate_pointed(s, Mode::Single).size(), 8u);
  EXPECT_EQ(enumerate_functions(sig_ptr({"U1", "U2"}, {})).size(), 1u);
}

TEST(Enumerate, CountsMatchClosedForm) {
  // k binary exogenous variables, one binary endogenous: 2^(2^k) function
  // sets; each has 2^k solutions and sum_t |t| = 2^k * 2^(2^k - 1) points.
  for (std::size_t k = 1; k <= 3; ++k) {
    std::vector<std::string> exo;
    for (std::size_t i = 0; i < k; ++i) exo.push_back("U" + std::to_string(i + 1));
    auto s = sig_ptr(exo, {"V1"});
    std::size_t sols = std::size_t{1} << k;
    std::size_t fsets = std::size_t{1} << sols;
    EXPECT_EQ(enumerate_functions(s).size(), fsets);
    PointedEnumerator e(s, Mode::Epistemic);
    std::size_t n = 0;
    while (e.next()) ++n;
    EXPECT_EQ(n, fsets * sols * (std::size_t{1} << (sols - 1)));
  }
}

TEST(Enumerate, ObservableModeKeepsConstantTeams) {
  auto s = sig_ptr({"U1"}, {"V1"}, {"V1"});
  auto ps = enumerate_pointed(s, Mode::Observable);
  for (const auto& p : ps) EXPECT_TRUE(observable_constant(*s, p.model.team));
  // constant functions admit the full team, the two others only singletons
  EXPECT_EQ(ps.size(), 2u * 4u + 2u * 2u);
}

TEST(Enumerate, RecursiveOnlyAndDeterministic) {
  auto s = sig_ptr({"U1"}, {"V1", "V2"});
  auto a = enumerate_functions(s);
  auto b = enumerate_functions(s);
  ASSERT_EQ(a.size(), 112u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(is_recursive(a[i]));
    EXPECT_EQ(a[i], b[i]);
  }
}

TEST(Enumerate, BudgetsCheckedUpFront) {
  auto big = sig_ptr({"U1", "U2", "U3"}, {"V1", "V2", "V3"});
  EXPECT_THROW(FunctionSetEnumerator(big, Caps{}), BudgetExceeded);
  Caps tight;
  tight.max_table_entries = 3;
  EXPECT_THROW(enumerate_functions(sig_ptr({"U1", "U2"}, {"V1"}), tight), BudgetExceeded);
  Caps few;
  few.max_pointed_models = 10;
  EXPECT_THROW(enumerate_pointed(sig_ptr({"U1"}, {"V1"}), Mode::Epistemic, few), BudgetExceeded);
}

TEST(Validity, FirstCounterexampleInOrder) {
  auto s = sig_ptr({"U1"}, {"V1"});
  Formula f = parse("K V1=1 | K V1=0", *s);
  auto r = check_validity(f, s, Mode::Epistemic);
  ASSERT_FALSE(r.valid);
  auto all = enumerate_pointed(s, Mode::Epistemic);
  std::size_t i = 0;
  while (evaluate(all[i], f, Mode::Epistemic)) ++i;
  EXPECT_EQ(*r.counterexample, all[i]);
  EXPECT_EQ(r.models, i + 1);
  auto ok = check_validity(parse("K V1=1 -> V1=1", *s), s, Mode::Epistemic);
  EXPECT_TRUE(ok.valid);
  EXPECT_EQ(ok.models, 16u);
}

TEST(Sample, DeterministicAndInFragment) {
  auto s = binary_signature({"U1"}, {"V1", "V2"});
  for (auto fr : {Fragment::C, Fragment::Cp, Fragment::KC, Fragment::KCp, Fragment::PAKC, Fragment::PAKCp}) {
    SampleOptions o;
    o.depth = 4;
    o.count = 100;
    o.seed = 42;
    o.fragment = fr;
    auto a = sample_formulas(s, o), b = sample_formulas(s, o);
    ASSERT_EQ(a, b);
    for (const auto& f : a) {
      ASSERT_TRUE(in_fragment(f, fr)) << to_string(f);
      ASSERT_LE(depth(f), 4 + (fr == Fragment::Cp || fr == Fragment::KCp || fr == Fragment::PAKCp));
    }
    o.seed = 43;
    EXPECT_NE(sample_formulas(s, o), a);
  }
}

TEST(Sample, DepthOneIsAtoms) {
  auto s = binary_signature({"U1"}, {"V1"});
  SampleOptions o;
  o.depth = 1;
  o.count = 50;
  o.fragment = Fragment::C;
  for (const auto& f : sample_formulas(s, o)) EXPECT_EQ(f.op(), Op::Atom);
}

TEST(Sample, KnowledgeFractionStrictlyBetween) {
  auto s = binary_signature({"U1"}, {"V1", "V2"});
  SampleOptions o;
  o.depth = 4;
  o.count = 400;
  o.fragment = Fragment::KC;
  std::size_t with_k = 0;
  for (const auto& f : sample_formulas(s, o))
    for (const auto& g : subformulas(f))
      if (g.op() == Op::Know) {
        ++with_k;
        break;
      }
  EXPECT_GT(with_k, 0u);
  EXPECT_LT(with_k, 400u);
}

TEST(Assignments, AllPartial) {
  auto s = binary_signature({"U1"}, {"V1"});
  EXPECT_EQ(all_assignments(s).size(), 9u);
}

TEST(OCAudit, PlainAndObservableAgreeWhereOCHolds) {
  auto s = sig_ptr({"U1", "U2"}, {"V1"}, {"V1"});
  SampleOptions o;
  o.depth = 3;
  o.count = 40;
  auto r = oc_equivalence_audit(s, sample_formulas(*s, o));
  EXPECT_GT(r.qualifying, 0u);
  EXPECT_LT(r.qualifying, r.models);
  EXPECT_EQ(r.violations, 0u);
}
