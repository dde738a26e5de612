#include <gtest/gtest.h>

#include <string>

#include "markovdf/diagram.hpp"
#include "markovdf/diagram/random.hpp"

using namespace markovdf;
using namespace markovdf::diagram;

namespace {

const char* kPrelude = R"(
object X, Y, Z, W
gen f : X -> Y
gen g : Y -> Z
gen g2 : Z -> W
gen s : I -> X
)";

Term term(const std::string& expr) { return parse(std::string(kPrelude) + expr); }

}  // namespace

// ============================================================================
// parse

TEST(Parse, CounitTerm) {
  const Term t = term("copy[X] ; (id[X] * discard[X])");
  EXPECT_EQ(t.kind(), TermKind::Seq);
  EXPECT_EQ(t.dom(), ObjectList{"X"});
  EXPECT_EQ(t.cod(), ObjectList{"X"});
}

TEST(Parse, SequentialTyping) {
  const Term t = term("f ; g");
  EXPECT_EQ(t.dom(), ObjectList{"X"});
  EXPECT_EQ(t.cod(), ObjectList{"Z"});
}

TEST(Parse, PrecedenceSeqLooserThanPar) {
  const Term t = term("f * id[Y] ; g * g");
  EXPECT_EQ(t.kind(), TermKind::Seq);
  EXPECT_EQ(t.dom(), (ObjectList{"X", "Y"}));
  EXPECT_EQ(t.cod(), (ObjectList{"Z", "Z"}));
}

TEST(Parse, TypeErrorNamesMismatchedObjects) {
  try {
    term("f ; g2");
    FAIL() << "expected a type error";
  } catch (const TypeError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("[Y]"), std::string::npos) << msg;
    EXPECT_NE(msg.find("[Z]"), std::string::npos) << msg;
    EXPECT_GT(e.location().line, 0u);
  }
}

TEST(Parse, SyntaxErrorHasLocation) {
  try {
    parse("object X\ngen f : X -> X\nf ; ; f");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.location().line, 3u);
    EXPECT_EQ(e.location().column, 5u);
  }
  EXPECT_THROW(parse("object X\ncopy[Q]"), TypeError);
  EXPECT_THROW(parse("object X\n$"), ParseError);
  EXPECT_THROW(parse("object X"), ParseError);
}

TEST(Parse, DefinitionsAndComments) {
  const Script s = parse_script(R"(
# counit
object X
def lhs = copy[X] ; (id[X] * discard[X])
def rhs = id[X]
def twice = lhs ; lhs
)");
  ASSERT_NE(s.find("lhs"), nullptr);
  ASSERT_NE(s.find("twice"), nullptr);
  EXPECT_FALSE(s.main.has_value());
  EXPECT_TRUE(equal(*s.find("lhs"), *s.find("rhs")));
}

TEST(Parse, ToStringRoundTrips) {
  Rng rng(1);
  const Signature sig = default_signature();
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(sig, random_objects(sig, rng, 2), rng);
    const Term back = parse_expression(sig, t.to_string());
    EXPECT_EQ(back.to_string(), t.to_string());
  }
}

// ============================================================================
// interface

TEST(Interface, StructuralTerms) {
  EXPECT_EQ(interface(term("id[X]")), std::make_pair(ObjectList{"X"}, ObjectList{"X"}));
  EXPECT_EQ(interface(term("copy[X]")),
            std::make_pair(ObjectList{"X"}, ObjectList{"X", "X"}));
  EXPECT_EQ(interface(term("discard[X]")), std::make_pair(ObjectList{"X"}, ObjectList{}));
}

// ============================================================================
// normalize / equal

TEST(Normalize, CounitCollapsesToIdentity) {
  EXPECT_EQ(normalize(term("copy[X] ; (id[X] * discard[X])")).serialize(),
            normalize(term("id[X]")).serialize());
}

TEST(Normalize, DiscardedBoxIsDeleted) {
  const NormalForm nf = normalize(term("f ; discard[Y]"));
  EXPECT_TRUE(nf.boxes.empty());
  EXPECT_EQ(nf.serialize(), normalize(term("discard[X]")).serialize());
}

TEST(Normalize, CopyThenSwapIsCopy) {
  EXPECT_TRUE(equal(term("copy[X] ; swap[X,X]"), term("copy[X]")));
}

TEST(Normalize, DiscardedStateIsDeleted) {
  EXPECT_TRUE(equal(term("s * id[X] ; discard[X] * id[X]"), term("id[X]")));
}

TEST(Normalize, PartiallyUsedBoxSurvives) {
  const Script s = parse_script(
      "object X, Y\ngen k : X -> X, Y\ndef t = k ; id[X] * discard[Y]\n");
  const NormalForm nf = normalize(*s.find("t"));
  ASSERT_EQ(nf.boxes.size(), 1u);
  EXPECT_EQ(nf.serialize(), "dom [X]\ncod [X]\nb0 = k(i0)\nout (b0.0)\n");
}

TEST(Normalize, SerializationIsStableAcrossAlphaEquivalentTerms) {
  // Same graph, different bracketing and box ordering in the term.
  const Term a = term("(f * f) ; (g * g)");
  const Term b = term("(f ; g) * (f ; g)");
  EXPECT_EQ(normalize(a).serialize(), normalize(b).serialize());
}

TEST(Equal, MultiplicativityInstance) {
  const Term lhs = copy_list({"X", "Y"});
  const Term rhs = term("copy[X] * copy[Y] ; id[X] * swap[X,Y] * id[Y]");
  EXPECT_TRUE(equal(lhs, rhs));
}

TEST(Equal, CopyIsNotNaturalForGenericBoxes) {
  EXPECT_FALSE(equal(term("copy[X] ; (f * f)"), term("f ; copy[Y]")));
}

TEST(Equal, CopyNaturalityFailsUnderRandomInterpretation) {
  // Independent evidence: a random stochastic f separates the two sides.
  Rng rng(3);
  Signature sig;
  sig.add_object("X");
  sig.add_object("Y");
  sig.add_generator({"f", {"X"}, {"Y"}});
  const Interpretation interp = random_interpretation(sig, rng);
  const Term lhs = parse_expression(sig, "copy[X] ; (f * f)");
  const Term rhs = parse_expression(sig, "f ; copy[Y]");
  EXPECT_GT(compare(evaluate(lhs, interp), evaluate(rhs, interp), 0.0).max_deviation, 1e-3);
}

TEST(Equal, Reflexive) {
  const Term t = term("(f * s) ; (g * f)");
  EXPECT_TRUE(equal(t, t));
}

TEST(Equal, InterfaceMismatchThrows) {
  EXPECT_THROW(equal(term("f"), term("id[X]")), TypeError);
}

TEST(Axioms, AllBuiltInInstancesDecideAsExpected) {
  const auto checks = check_axioms(default_signature(), 3);
  EXPECT_GT(checks.size(), 100u);
  for (const auto& c : checks) EXPECT_TRUE(c.passed()) << c.instance.name;
}

// ============================================================================
// evaluate

TEST(Evaluate, CopyKernel) {
  Interpretation interp;
  interp.objects.emplace("X", FinSpace::range(2));
  const Kernel k = evaluate(term("copy[X]"), interp);
  EXPECT_EQ(k.rows(), 2u);
  EXPECT_EQ(k.cols(), 4u);
  EXPECT_EQ(k.entries(), (std::vector<double>{1, 0, 0, 0, 0, 0, 0, 1}));
}

TEST(Evaluate, CounitIsIdentity) {
  Interpretation interp;
  interp.objects.emplace("X", FinSpace::range(3));
  const Kernel k = evaluate(term("copy[X] ; (id[X] * discard[X])"), interp);
  EXPECT_TRUE(compare(k, identity(FinSpace::range(3)), 0.0).holds);
}

TEST(Evaluate, MissingGeneratorAndShapeMismatch) {
  Interpretation interp;
  interp.objects.emplace("X", FinSpace::range(2));
  interp.objects.emplace("Y", FinSpace::range(2));
  EXPECT_THROW(evaluate(term("f"), interp), InvalidArgument);
  interp.generators.emplace("f", identity(FinSpace::range(3)));
  EXPECT_THROW(evaluate(term("f"), interp), DomainMismatch);
}

// ============================================================================
// properties

TEST(Properties, NormalizeIsIdempotent) {
  Rng rng(4);
  const Signature sig = default_signature();
  for (int i = 0; i < 200; ++i) {
    const Term t = random_term(sig, random_objects(sig, rng, 3), rng);
    const NormalForm nf = normalize(t);
    EXPECT_EQ(normalize(readback(nf)).serialize(), nf.serialize()) << t.to_string();
    EXPECT_EQ(interface(readback(nf)), interface(t));
  }
}

TEST(Properties, RewritesAreDecidedEqualAndSound) {
  Rng rng(5);
  const Signature sig = default_signature();
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(sig, random_objects(sig, rng, 3), rng);
    Term u = random_rewrite(t, sig, rng);
    u = random_rewrite(u, sig, rng);
    ASSERT_TRUE(equal(t, u)) << t.to_string() << "\n  vs\n" << u.to_string();
    for (int k = 0; k < 3; ++k) {
      const Interpretation interp = random_interpretation(sig, rng, 0.2);
      if (evaluation_size(u, interp) > (1 << 16)) continue;  // rewrites can blow up tensor width
      EXPECT_LE(compare(evaluate(t, interp), evaluate(u, interp), 0.0).max_deviation, 1e-9);
    }
  }
}

TEST(Properties, DeadCodeEliminationPreservesSemantics) {
  Rng rng(6);
  const Signature sig = default_signature();
  for (int i = 0; i < 100; ++i) {
    const Term t = random_term(sig, random_objects(sig, rng, 3), rng);
    const Interpretation interp = random_interpretation(sig, rng);
    const Kernel before = evaluate(t, interp);
    const Kernel after = evaluate(normalize(t), interp);
    EXPECT_LE(compare(before, after, 0.0).max_deviation, 1e-9);
  }
}
