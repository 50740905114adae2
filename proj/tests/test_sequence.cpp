#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "qtseq/qhm.hpp"
#include "qtseq/sequence.hpp"

using namespace qtseq;

namespace {

oracle::Quad random_quad(std::mt19937& rng, int n) {
  oracle::Quad q;
  for (auto& s : q) s = oracle::seq_from_bits(static_cast<std::uint32_t>(rng()), n);
  return q;
}

}  // namespace

TEST(BinarySequence, BasicsAndOrder) {
  const auto s = BinarySequence::parse("+--+-");
  EXPECT_EQ(s.size(), 5u);
  EXPECT_EQ(s.rowsum(), -1);
  EXPECT_EQ(s.to_string(), "+--+-");
  EXPECT_EQ(s.negated().to_string(), "-++-+");
  EXPECT_TRUE(BinarySequence::parse("+-+-").is_palindromic());  // a_i = a_{n-i}
  EXPECT_FALSE(BinarySequence::parse("++--").is_palindromic());
  EXPECT_LT(BinarySequence::parse("-+"), BinarySequence::parse("+-"));
  EXPECT_THROW(BinarySequence::parse("+x"), std::invalid_argument);
}

TEST(Correlation, BinaryMatchesOracle) {
  std::mt19937 rng(1);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = oracle::seq_from_bits(static_cast<std::uint32_t>(rng()), n);
      const auto b = oracle::seq_from_bits(static_cast<std::uint32_t>(rng()), n);
      const auto q = oracle::to_quadruple({a, b, a, b});
      for (int t = 0; t < n; ++t) EXPECT_EQ(crosscorrelation(q[0], q[1], t), oracle::paf(a, b, t));
    }
  }
}

TEST(Correlation, QuaternionDefinitionUsesConjugateOnSecond) {
  using namespace quat;
  const std::vector<ExactQuaternion> a{i, one}, b{j, k};
  // t = 0: i j* + 1 k* = -i j - k = -2k
  EXPECT_EQ(crosscorrelation(a, b, 0), ExactQuaternion(0, 0, 0, -4));
  // t = 1: a_0 b_1* + a_1 b_0* = i(-k) + (-j) = j - j = 0
  EXPECT_EQ(crosscorrelation(a, b, 1), ExactQuaternion(0, 0, 0, 0));
}

TEST(Perfection, AppendixSequencesArePerfectInBothSenses) {
  for (const auto& e : oracle::appendix()) {
    const auto s = decode_symbols(e.sequence);
    EXPECT_TRUE(is_perfect(s, /*self_test=*/true)) << e.sequence;
    EXPECT_FALSE(first_imperfect_shift(s).has_value());
  }
}

TEST(Perfection, ImperfectSequenceReportsShift) {
  const auto s = decode_symbols("++i");
  EXPECT_FALSE(is_perfect(s));
  ASSERT_TRUE(first_imperfect_shift(s).has_value());
  EXPECT_EQ(*first_imperfect_shift(s), 1u);
}

// Random quadruples plus every solution of the autocorrelation condition for
// small n: the exact predicates agree with the oracle.
TEST(QtConditions, MatchOracleExhaustively) {
  for (int n = 1; n <= 6; ++n) {
    const auto bf = oracle::brute_force(n);
    std::size_t qt = 0;
    for (const auto& quad : bf.qt) {
      const auto q = oracle::to_quadruple(quad);
      EXPECT_TRUE(is_qt_quadruple(q));
      ++qt;
    }
    std::size_t lib_qt = 0;
    for (std::uint32_t v = 0; v < (1u << (4 * n)) && n <= 4; ++v) {
      oracle::Quad quad;
      for (int x = 0; x < 4; ++x) quad[x] = oracle::seq_from_bits((v >> (x * n)) & ((1u << n) - 1), n);
      if (is_qt_quadruple(oracle::to_quadruple(quad))) ++lib_qt;
    }
    if (n <= 4) {
      EXPECT_EQ(lib_qt, qt) << "n=" << n;
    }
  }
}

TEST(QtConditions, FailureReportsConditionAndShift) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 8);
    const auto quad = random_quad(rng, n);
    const auto c = check_qt_quadruple(oracle::to_quadruple(quad));
    const bool expected = oracle::autocorrelation_condition(quad) && oracle::qt_cross_conditions(quad);
    EXPECT_EQ(c.ok, expected);
    if (!c.ok) {
      EXPECT_GE(c.condition, 0);
      EXPECT_LE(c.condition, 3);
      EXPECT_LT(c.shift, static_cast<std::size_t>(n));
    }
  }
}

TEST(Spectral, DftMatchesDirectSum) {
  std::mt19937 rng(5);
  for (int n = 1; n <= 24; ++n) {
    const auto a = oracle::seq_from_bits(static_cast<std::uint32_t>(rng()), n);
    std::vector<double> ad(a.begin(), a.end());
    const auto ref = oracle::dft(ad);
    std::vector<int8_t> a8(a.begin(), a.end());
    const auto sp = spectral_profile(std::span<const int8_t>(a8));
    ASSERT_EQ(sp.dft.size(), static_cast<std::size_t>(n / 2 + 1));
    for (int t = 0; t <= n / 2; ++t) {
      EXPECT_NEAR(sp.dft[t].real(), ref[t].real(), 1e-9);
      EXPECT_NEAR(sp.dft[t].imag(), ref[t].imag(), 1e-9);
      EXPECT_NEAR(sp.psd[t], std::norm(ref[t]), 1e-9);
    }
  }
}

TEST(Spectral, PsdEqualsTransformOfAutocorrelation) {
  std::mt19937 rng(9);
  for (int n = 2; n <= 16; ++n) {
    const auto a = oracle::seq_from_bits(static_cast<std::uint32_t>(rng()), n);
    std::vector<double> paf(n);
    for (int t = 0; t < n; ++t) paf[t] = oracle::paf(a, a, t);
    const auto ref = oracle::dft(paf);
    const auto sp = spectral_profile(oracle::to_quadruple({a, a, a, a})[0]);
    for (int t = 0; t <= n / 2; ++t) EXPECT_NEAR(sp.psd[t], ref[t].real(), 1e-9);
  }
}

// The frequency-domain conditions agree with the time-domain ones.
TEST(Spectral, FrequencyConditionsAgreeWithExact) {
  for (int n = 2; n <= 7; ++n) {
    const auto bf = oracle::brute_force(n);
    for (const auto& quad : bf.wt) {
      const auto q = oracle::to_quadruple(quad);
      EXPECT_TRUE(psd_condition_holds(q));
      EXPECT_EQ(cpsd_conditions_hold(q), oracle::qt_cross_conditions(quad));
    }
  }
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 10);
    const auto quad = random_quad(rng, n);
    const auto q = oracle::to_quadruple(quad);
    EXPECT_EQ(psd_condition_holds(q), oracle::autocorrelation_condition(quad));
    if (oracle::autocorrelation_condition(quad)) {
      EXPECT_EQ(cpsd_conditions_hold(q), oracle::qt_cross_conditions(quad));
    }
  }
}

TEST(Predicates, WilliamsonTypeAndSymmetry) {
  for (const auto& e : oracle::appendix()) {
    if (e.n > 13) continue;
    const auto q = perfect_to_qt(decode_symbols(e.sequence));
    EXPECT_TRUE(is_williamson_type(q)) << e.sequence;
    EXPECT_TRUE(is_amicable(q));
  }
  const auto pal = QTQuadruple::parse("+ + + +");
  EXPECT_TRUE(is_symmetric(pal));
  EXPECT_FALSE(is_symmetric(QTQuadruple::parse("++- +++ +++ +++")));
}
