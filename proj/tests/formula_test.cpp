#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace ecl;
using ecl::testing::sig_ptr;

namespace {

const Signature& flash() {
  static const Signature s = binary_signature({"B", "P"}, {"L"}, {"P", "L"});
  return s;
}

}  // namespace

TEST(Printer, CanonicalForms) {
  for (const char* s : {"[] B=0", "K B=1", "[[P=1] L=0 !] K B=0", "~(B=0 & P=1)", "B=0 & P=1 & L=0",
                        "B=0 & (P=1 & L=0)", "[B=0, P=1] L=1", "K ~K B=0", "~[P=1] L=0"})
    EXPECT_EQ(to_string(parse(s, flash())), s);
}

TEST(Printer, AssignmentsAreCanonicallyOrdered) {
  EXPECT_EQ(to_string(parse("[P=1, B=0] L=0", flash())), "[B=0, P=1] L=0");
  EXPECT_EQ(parse("[P=1, B=0] L=0", flash()), parse("[B=0, P=1] L=0", flash()));
}

TEST(Parser, SugarDesugars) {
  Formula a = parse("B=0", flash()), b = parse("P=1", flash()), c = parse("L=1", flash());
  EXPECT_EQ(parse("B=0 -> P=1", flash()), neg(conj(a, neg(b))));
  EXPECT_EQ(parse("B=0 | P=1", flash()), neg(conj(neg(a), neg(b))));
  EXPECT_EQ(parse("B=0 | P=1 | L=1", flash()), neg(conj(conj(neg(a), neg(b)), neg(c))));
  // right associative
  EXPECT_EQ(parse("B=0 -> P=1 -> L=1", flash()), implies(a, implies(b, c)));
  EXPECT_EQ(parse("B=0 <-> P=1", flash()), iff(a, b));
  EXPECT_EQ(parse("B=0 & P=1 | L=1", flash()), neg(conj(neg(conj(a, b)), neg(c))));
}

TEST(Parser, WhitespaceInsignificant) {
  EXPECT_EQ(parse("[[P=1]L=0!]K B=0", flash()), parse("[ [ P = 1 ] L = 0 ! ] K  B = 0", flash()));
}

TEST(Parser, VariableNamedK) {
  auto s = binary_signature({"K"}, {"V"});
  Formula f = parse("K K=1", s);
  EXPECT_EQ(f.op(), Op::Know);
  EXPECT_EQ(f.arg().op(), Op::Atom);
  EXPECT_EQ(to_string(f), "K K=1");
}

TEST(Parser, ErrorsCarryPositions) {
  try {
    parse("[P=1 L=0", flash());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  try {
    parse("B=0 &", flash());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 5u);
  }
  try {
    parse("B=0 # P=1", flash());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse("(B=0", flash()), SyntaxError);
  EXPECT_THROW(parse("B=0)", flash()), SyntaxError);
}

TEST(Parser, BindingErrors) {
  EXPECT_THROW(parse("Q=0", flash()), ValidationError);
  EXPECT_THROW(parse("B=2", flash()), ValidationError);
  EXPECT_THROW(parse("[B=0, B=1] L=0", flash()), SyntaxError);
  EXPECT_NO_THROW(parse_unbound("Q=7"));
}

TEST(Parser, RoundTripOnSampledFormulas) {
  for (auto fr : {Fragment::C, Fragment::KC, Fragment::PAKC, Fragment::PAKCp}) {
    SampleOptions o;
    o.depth = 5;
    o.count = 300;
    o.seed = 11;
    o.fragment = fr;
    for (const auto& f : sample_formulas(flash(), o)) {
      std::string s = to_string(f);
      Formula g = parse(s, flash());
      ASSERT_EQ(g, f) << s;
      ASSERT_EQ(to_string(g), s);
    }
  }
}

TEST(Fragments, Classification) {
  using F = Fragment;
  EXPECT_EQ(fragments(parse("B=0", flash())), (std::set<F>{F::C, F::KC, F::PAKC}));
  EXPECT_EQ(fragments(parse("[B=0] L=1", flash())), (std::set<F>{F::C, F::Cp, F::KC, F::KCp, F::PAKC, F::PAKCp}));
  EXPECT_EQ(fragments(parse("[B=0 !] K B=0", flash())), (std::set<F>{F::PAKC}));
  EXPECT_EQ(fragments(parse("K [] B=0", flash())), (std::set<F>{F::KC, F::KCp, F::PAKC, F::PAKCp}));
  EXPECT_EQ(fragments(parse("[[] B=0 !] K [] B=0", flash())), (std::set<F>{F::PAKC, F::PAKCp}));
  EXPECT_EQ(fragments(parse("[B=0] [P=1] L=1", flash())), (std::set<F>{F::C, F::KC, F::PAKC}));
  EXPECT_EQ(fragments(parse("[B=0] ~L=1", flash())), (std::set<F>{F::C, F::KC, F::PAKC}));
}

TEST(Complexity, Values) {
  auto c = [](const char* s, Measure m) { return complexity(parse(s, flash()), m); };
  EXPECT_EQ(c("B=0", Measure::C), 1u);
  EXPECT_EQ(c("~B=0", Measure::C), 2u);
  EXPECT_EQ(c("B=0 & ~P=1", Measure::C), 3u);
  EXPECT_EQ(c("[P=1] L=0", Measure::C), 2u);
  EXPECT_EQ(c("[P=1] ~L=0", Measure::C), 4u);
  EXPECT_EQ(c("K B=0", Measure::KC), 2u);
  EXPECT_EQ(c("[P=1] K B=0", Measure::KC), 4u);
  EXPECT_EQ(c("[B=0 !] L=0", Measure::PAKC), 8u);
  EXPECT_EQ(c("[[P=1] L=0 !] K B=0", Measure::PAKC), (7u + 2u) * 2u);
  EXPECT_EQ(c("[P=1] L=0", Measure::PAKCp), 1u);
  EXPECT_EQ(c("[[P=1] L=0 !] K [] B=0", Measure::PAKCp), 16u);
  EXPECT_THROW(c("K B=0", Measure::C), FragmentError);
  EXPECT_THROW(c("[B=0 !] L=0", Measure::KC), FragmentError);
  EXPECT_THROW(c("B=0", Measure::PAKCp), FragmentError);
}

TEST(Complexity, AlwaysPositiveAndSubformulasSmaller) {
  SampleOptions o;
  o.depth = 4;
  o.count = 300;
  o.seed = 5;
  for (const auto& f : sample_formulas(flash(), o)) {
    auto cf = complexity(f, Measure::PAKC);
    ASSERT_GE(cf, 1u);
    for (const auto& g : subformulas(f))
      if (g != f) ASSERT_LT(complexity(g, Measure::PAKC), cf) << to_string(f);
  }
}

TEST(Subformulas, DistinctPreorder) {
  auto subs = subformulas(parse("B=0 & (B=0 & K B=0)", flash()));
  ASSERT_EQ(subs.size(), 4u);
  EXPECT_EQ(to_string(subs[1]), "B=0");
  EXPECT_EQ(to_string(subs[3]), "K B=0");
}

TEST(Formula, StructuralEqualityAndHash) {
  Formula a = parse("[[P=1] L=0 !] K B=0", flash());
  Formula b = parse("[[P=1] L=0 !] K B=0", flash());
  Formula c = parse("[[P=1] L=1 !] K B=0", flash());
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_NE(a, c);
}
