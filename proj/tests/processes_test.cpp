#include <gtest/gtest.h>

#include <cmath>

#include "markovdf/io.hpp"
#include "markovdf/processes.hpp"

using namespace markovdf;

TEST(Generate, PolyaPairs) {
  const auto p = generate(ProcessSpec::polya(1, 1, 2));
  EXPECT_EQ(p.form(), FamilyForm::Count);
  EXPECT_NEAR(p.sequence_probability({1, 1}), 1.0 / 3, 1e-15);
  EXPECT_NEAR(p.sequence_probability({1, 0}), 1.0 / 6, 1e-15);
}

TEST(Generate, IidPatterns) {
  const auto p = generate(ProcessSpec::iid(0.3, 9));
  for (std::size_t j = 0; j <= 9; ++j)
    EXPECT_NEAR(p.count_probability({9 - j, j}), std::pow(0.3, j) * std::pow(0.7, 9 - j), 1e-15);
}

TEST(Generate, UrnWithoutReplacement) {
  const auto p = generate(ProcessSpec::without_replacement(2, 2, 10));
  EXPECT_EQ(p.depth(), 4u);  // capped at the urn size
  EXPECT_NEAR(p.sequence_probability({1, 1}), 0.5 * (1.0 / 3), 1e-15);
  EXPECT_EQ(p.sequence_probability({1, 1, 1}), 0.0);
  EXPECT_NEAR(p.sequence_probability({1, 0, 1, 0}), 1.0 / 6, 1e-15);
}

TEST(Generate, DiagonalAndChain) {
  const auto d = generate(ProcessSpec::diagonal({0.25, 0.75}, 5));
  EXPECT_EQ(d.count_probability({5, 0}), 0.25);
  EXPECT_EQ(d.count_probability({0, 5}), 0.75);
  EXPECT_EQ(d.count_probability({2, 3}), 0.0);
  const auto c = generate(ProcessSpec::markov_chain({0.5, 0.5}, {{0.9, 0.1}, {0.4, 0.6}}, 3));
  EXPECT_EQ(c.form(), FamilyForm::Dense);
  EXPECT_NEAR(c.sequence_probability({0, 0, 1}), 0.5 * 0.9 * 0.1, 1e-15);
}

TEST(Generate, RejectsInvalidParameters) {
  EXPECT_THROW(generate(ProcessSpec::polya(0, 1, 3)), InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::iid(1.3, 3)), InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::without_replacement(0, 2, 3)), InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::diagonal({0.5, 0.6}, 3)), InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::markov_chain({0.5, 0.5}, {{1, 0}}, 3)), InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::markov_chain({0.5, 0.5}, {{1, 0}, {0, 1}}, 40)),
               InvalidArgument);
  EXPECT_THROW(generate(ProcessSpec::polya(1, 1, 0)), InvalidArgument);
}

TEST(Generate, ExchangeableKindsPassChecks) {
  const ProcessSpec specs[] = {
      ProcessSpec::polya(1, 1, 30),
      ProcessSpec::polya(0.5, 4, 30),
      ProcessSpec::iid(0.3, 60),
      ProcessSpec::iid({0.1, 0.2, 0.7}, 12),
      ProcessSpec::without_replacement(5, 3, 8),
      ProcessSpec::diagonal({0.2, 0.3, 0.5}, 10),
      ProcessSpec::of_mixture(MixingMeasure(2, {{{0.2, 0.8}, 0.4}, {{0.9, 0.1}, 0.6}}), 20),
  };
  for (const auto& s : specs) {
    const auto p = generate(s);
    EXPECT_TRUE(check_consistency(p).holds) << to_string(s.kind);
    EXPECT_TRUE(check_exchangeability(p).holds) << to_string(s.kind);
    const auto d = p.to_dense(8);
    EXPECT_TRUE(check_exchangeability(d).holds) << to_string(s.kind);
  }
}

TEST(Generate, AsymmetricChainIsNotExchangeable) {
  EXPECT_FALSE(
      check_exchangeability(generate(ProcessSpec::markov_chain({0.5, 0.5}, {{0.9, 0.1}, {0.4, 0.6}}, 5)))
          .holds);
}

// ============================================================================
// analytic_mixing

TEST(AnalyticMixing, Examples) {
  const auto iid = analytic_mixing(ProcessSpec::iid(0.3, 5), 101);
  ASSERT_TRUE(iid);
  ASSERT_EQ(iid->atoms().size(), 1u);
  EXPECT_NEAR(iid->atoms()[0].q[0], 0.7, 1e-15);
  EXPECT_EQ(iid->atoms()[0].weight, 1.0);

  const auto diag = analytic_mixing(ProcessSpec::diagonal({0.5, 0.5}, 5), 101);
  ASSERT_TRUE(diag);
  ASSERT_EQ(diag->atoms().size(), 2u);
  EXPECT_EQ(diag->atoms()[0].q, (std::vector<double>{1, 0}));
  EXPECT_EQ(diag->atoms()[1].q, (std::vector<double>{0, 1}));
  EXPECT_EQ(diag->atoms()[0].weight, 0.5);

  const auto beta = analytic_mixing(ProcessSpec::polya(1, 1, 5), 101);
  ASSERT_TRUE(beta);
  ASSERT_EQ(beta->atoms().size(), 101u);
  for (const auto& a : beta->atoms()) EXPECT_NEAR(a.weight, 1.0 / 101, 1e-15);
  EXPECT_NEAR(beta->atoms()[50].q[1], 0.5, 1e-12);

  EXPECT_FALSE(analytic_mixing(ProcessSpec::without_replacement(2, 2, 4), 101));
  EXPECT_FALSE(analytic_mixing(ProcessSpec::markov_chain({1, 0}, {{1, 0}, {0, 1}}, 4), 101));
}

TEST(AnalyticMixing, MomentsMatchGeneratedFamilies) {
  for (const auto& s : {ProcessSpec::polya(1, 1, 10), ProcessSpec::polya(2, 3, 10),
                        ProcessSpec::iid(0.3, 10), ProcessSpec::diagonal({0.4, 0.6}, 10)}) {
    const auto mu = *analytic_mixing(s, 1001);
    const auto m = moments(generate(s));
    for (std::size_t j = 0; j <= 10; ++j) EXPECT_NEAR(m.binary[j], mu.moment(j), 1e-3);
  }
}

TEST(BetaCdf, Endpoints) {
  EXPECT_EQ(beta_cdf(2, 3, 0), 0.0);
  EXPECT_EQ(beta_cdf(2, 3, 1), 1.0);
  EXPECT_NEAR(beta_cdf(1, 1, 0.37), 0.37, 1e-15);
}

// ============================================================================
// files

TEST(Json, FamilyRoundTrip) {
  for (const auto& p : {generate(ProcessSpec::polya(2, 3, 6)),
                        generate(ProcessSpec::markov_chain({0.5, 0.5}, {{0.9, 0.1}, {0.4, 0.6}}, 4))}) {
    const auto back = family_from_json(parse_json(to_json(p).dump(), "test"));
    EXPECT_EQ(back.form(), p.form());
    EXPECT_EQ(back.depth(), p.depth());
    EXPECT_EQ(to_json(back).dump(), to_json(p).dump());
  }
}

TEST(Json, FamilyErrors) {
  EXPECT_THROW(family_from_json(parse_json(R"({"alphabet":["0","1"],"depth":1,"form":"dense","levels":{"1":[0.5]}})", "t")),
               InvalidArgument);
  EXPECT_THROW(family_from_json(parse_json(R"({"alphabet":["0","1"],"depth":2,"form":"count","levels":{"1":{"1,0":0.5}}})", "t")),
               InvalidArgument);
  EXPECT_THROW(family_from_json(parse_json(R"({"alphabet":["0","1"],"depth":1,"form":"count","levels":{"1":{"x":0.5}}})", "t")),
               InvalidArgument);
  EXPECT_THROW(parse_json("{", "t"), InvalidArgument);
}

TEST(Json, ProcessSpecs) {
  const auto s = process_from_json(parse_json(R"({"process":"polya","alpha":1,"beta":1,"depth":40})", "t"));
  EXPECT_EQ(s.kind, ProcessKind::Polya);
  EXPECT_EQ(s.depth, 40u);
  const auto iid = process_from_json(parse_json(R"({"process":"iid","theta":0.3,"depth":400})", "t"));
  EXPECT_NEAR(iid.q[1], 0.3, 1e-15);
  const auto back = process_from_json(parse_json(to_json(iid).dump(), "t"));
  EXPECT_EQ(back.q, iid.q);
  EXPECT_THROW(process_from_json(parse_json(R"({"process":"urn","depth":4})", "t")), InvalidArgument);
  EXPECT_THROW(process_from_json(parse_json(R"({"process":"polya","alpha":-1,"beta":1,"depth":4})", "t")),
               InvalidArgument);
  EXPECT_THROW(process_from_json(parse_json(R"({"process":"without_replacement","red":1.5,"black":2,"depth":4})", "t")),
               InvalidArgument);
}

TEST(Json, MeasureAndKernelRoundTrip) {
  const MixingMeasure mu(2, {{{0.2, 0.8}, 0.4}, {{0.9, 0.1}, 0.6}});
  EXPECT_EQ(to_json(measure_from_json(to_json(mu))).dump(), to_json(mu).dump());
  const Kernel f = Kernel::from_rows(FinSpace({"a", "b"}), FinSpace::range(3),
                                     {{0.2, 0.3, 0.5}, {1, 0, 0}});
  EXPECT_EQ(to_json(kernel_from_json(to_json(f))).dump(), to_json(f).dump());
  const Kernel s = Kernel::state(FinSpace::range(2), {0.5, 0.5});
  EXPECT_TRUE(kernel_from_json(to_json(s)).is_state());
}

TEST(Json, DigestIsStable) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}
