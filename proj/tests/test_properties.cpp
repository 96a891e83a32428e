#include "wseq/indices.hpp"
#include "wseq/properties.hpp"
#include "wseq/sequence.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wseq;

namespace {

WeightSequence custom_copy(const WeightSequence& s) { return from_log_table(s.logM()); }

// M_{0,beta}: m_p = log^beta(e+p+1)
WeightSequence m0beta(double beta, std::size_t n) {
  std::vector<double> logm(n - 1);
  for (std::size_t p = 0; p + 1 < n; ++p) logm[p] = beta * std::log(std::log(M_E + p + 1.0));
  return from_log_quotients(logm);
}

void expect_consistent(const PropertyReport& r) {
  if (r.mg.holds()) EXPECT_TRUE(r.dc.holds());
  if (r.snq.holds()) EXPECT_TRUE(r.nq.holds());
  bool sr = r.lc.holds() || r.lc.status == Status::HoldsOnPrefix;
  sr = sr && r.mg.holds() && r.snq.holds();
  EXPECT_EQ(r.strongly_regular.holds(), sr);
}

} // namespace

TEST(Properties, LcExamples) {
  EXPECT_EQ(check_lc(make_gevrey(1.5, 1000)).status, Status::HoldsOnPrefix);
  EXPECT_EQ(check_lc(make_qpow(1.1, 1000)).status, Status::HoldsOnPrefix);
  auto v = check_lc(from_log_table({0, std::log(4.0), std::log(6.0)}));
  ASSERT_EQ(v.status, Status::FailsAt);
  EXPECT_EQ(*v.index, 1u);
  // re-evaluating the inequality at the reported index reproduces the violation
  std::vector<double> t{0, 1, 3, 4, 6, 9};
  auto s = from_log_table(t);
  auto w = check_lc(s);
  ASSERT_EQ(w.status, Status::FailsAt);
  std::size_t p = *w.index;
  EXPECT_LT(t[p + 1] - t[p], t[p] - t[p - 1]);
  for (std::size_t k = 1; k < p; ++k) EXPECT_GE(t[k + 1] - t[k], t[k] - t[k - 1]);
}

TEST(Properties, LcMatchesQuotientMonotonicity) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> logm(40);
    double acc = 0;
    for (auto& x : logm) x = acc += 0.5 + n01(rng) * (trial % 2 ? 0.1 : 1.0);
    bool mono = true;
    for (std::size_t k = 1; k < logm.size(); ++k) mono = mono && logm[k] >= logm[k - 1];
    EXPECT_EQ(check_lc(from_log_quotients(logm)).status == Status::HoldsOnPrefix, mono);
  }
}

TEST(Properties, RootBelowPreviousQuotient) {
  for (const auto& s : {make_gevrey(0.7, 3000), make_mab(1, -2, 3000), make_qpow(1.2, 500)}) {
    ASSERT_EQ(check_lc(s).status, Status::HoldsOnPrefix);
    for (std::size_t p = 1; p < s.size(); ++p)
      EXPECT_LE(s.logM()[p] / p, s.log_quotient(p - 1) + 1e-12 * std::max(1.0, s.logM()[p] / p)) << p;
  }
}

TEST(Properties, DcWitnessGevrey) {
  // oracle: sup log((p+1)^alpha)/(p+1) is reached at p+1 = 3
  for (double a : {0.5, 1.0, 2.0}) {
    auto v = check_dc(custom_copy(make_gevrey(a, 4000)));
    ASSERT_TRUE(v.witness);
    EXPECT_NEAR(*v.witness, std::pow(3.0, a / 3.0), 1e-12);
    EXPECT_TRUE(v.holds());
  }
}

TEST(Properties, MgWitness) {
  for (double a : {0.5, 1.0, 2.0}) {
    auto v = check_mg(custom_copy(make_gevrey(a, 20000)));
    EXPECT_TRUE(v.holds()) << v.note;
    // oracle: sup m_p / M_p^(1/p) from log-gamma
    double best = -INFINITY;
    for (int p = 1; p < 19999; ++p) best = std::max(best, a * std::log(p + 1.0) - a * std::lgamma(p + 1.0) / p);
    EXPECT_NEAR(std::log(*v.witness), best, 1e-9);
    EXPECT_LE(*v.witness, std::exp(a) * 1.0001);
  }
  for (double b : {0.0, 0.5, 2.0}) EXPECT_TRUE(check_mg(custom_copy(make_mab(1, b, 20000))).holds()) << b;
  // for beta < 0 the witness creeps up like -beta/log p and only settles at long prefixes
  auto slow = check_mg(custom_copy(make_mab(1, -1, 20000)));
  EXPECT_EQ(slow.status, Status::HoldsOnPrefix);
  EXPECT_FALSE(slow.stabilized);
  EXPECT_TRUE(check_mg(custom_copy(make_mab(1, -1, 1000000))).holds());
}

TEST(Properties, QPowNotMg) {
  auto v = check_mg(custom_copy(make_qpow(2, 400)));
  EXPECT_FALSE(v.stabilized);
  EXPECT_TRUE(v.fails());
  EXPECT_NE(v.note.find("stabilize"), std::string::npos);
  // witness is 2^(p+1) at the last index
  EXPECT_NEAR(std::log2(*v.witness), 399.0, 1e-6);
}

TEST(Properties, MgPairwiseScanOnNonLc) {
  // lc fails at one spot but the sequence is otherwise Gevrey-like
  auto t = make_gevrey(1, 3000).logM();
  t[1] += 0.5;
  auto v = check_mg(from_log_table(t));
  EXPECT_NE(v.note.find("pairwise"), std::string::npos);
  EXPECT_TRUE(v.holds());
  // oracle: brute force over the capped prefix
  double mx = -INFINITY;
  for (std::size_t s = 2; s < 2048; ++s)
    for (std::size_t p = 1; p <= s / 2; ++p) mx = std::max(mx, (t[s] - t[p] - t[s - p]) / double(s));
  EXPECT_NEAR(std::log(*v.witness), mx, 1e-12);
}

TEST(Properties, NqAndSnq) {
  auto g2 = custom_copy(make_gevrey(2, 50000));
  EXPECT_EQ(check_nq(g2).status, Status::HoldsOnPrefix);
  EXPECT_TRUE(check_snq(g2).holds());

  std::vector<double> logm(100000);
  for (std::size_t p = 0; p < logm.size(); ++p) logm[p] = std::log(std::log(M_E + p));
  auto slow = from_log_quotients(logm);
  EXPECT_EQ(check_lc(slow).status, Status::HoldsOnPrefix);
  EXPECT_TRUE(check_nq(slow).fails());

  for (double b : {0.5, 2.0, 3.0}) {
    auto s = m0beta(b, 100000);
    EXPECT_TRUE(check_snq(s).fails()) << b;
    EXPECT_TRUE(check_mg(s).holds()) << b;
  }
}

TEST(Properties, SnqWitnessOracle) {
  // Gevrey 1: m_p sum_{q>=p} 1/(q+1)^2 is largest at p = 0, where it is zeta(2)
  auto v = check_snq(custom_copy(make_gevrey(1, 20000)));
  ASSERT_TRUE(v.witness);
  EXPECT_NEAR(*v.witness, M_PI * M_PI / 6.0, 1e-6);
  EXPECT_TRUE(v.holds());
}

TEST(Properties, ShortPrefixIsInconclusive) {
  auto s = make_gevrey(1, 8);
  EXPECT_EQ(check_dc(s).status, Status::Inconclusive);
  EXPECT_EQ(check_mg(s).status, Status::Inconclusive);
  EXPECT_EQ(check_snq(s).status, Status::Inconclusive);
}

TEST(Properties, Weight) {
  EXPECT_TRUE(check_weight(make_gevrey(1, 100)).holds());
  std::vector<double> flat(200, 0.3);
  auto bounded = from_log_quotients(flat);
  EXPECT_TRUE(quotients_bounded(bounded));
  EXPECT_TRUE(check_weight(bounded).fails());
  EXPECT_FALSE(quotients_bounded(make_gevrey(0.1, 1000)));
}

TEST(Properties, FullReports) {
  auto mab = full_report(make_mab(1, 0.5, 2000));
  EXPECT_EQ(mab.strongly_regular.status, Status::AnalyticYes);
  expect_consistent(mab);

  auto q = full_report(make_qpow(1.1, 2000));
  EXPECT_TRUE(q.lc.holds());
  EXPECT_TRUE(q.snq.holds());
  EXPECT_TRUE(q.mg.fails());
  EXPECT_TRUE(q.strongly_regular.fails());
  expect_consistent(q);

  auto qn = full_report(custom_copy(make_qpow(1.1, 2000)));
  EXPECT_TRUE(qn.mg.fails());
  EXPECT_TRUE(qn.snq.holds());
  EXPECT_TRUE(qn.strongly_regular.fails());
  expect_consistent(qn);

  auto z = full_report(m0beta(2, 100000));
  EXPECT_TRUE(z.lc.holds() || z.lc.status == Status::HoldsOnPrefix);
  EXPECT_TRUE(z.mg.holds());
  EXPECT_TRUE(z.snq.fails());
  EXPECT_FALSE(z.strongly_regular.holds());
  expect_consistent(z);

  auto g = full_report(custom_copy(make_gevrey(1, 20000)));
  EXPECT_TRUE(g.strongly_regular.holds());
  expect_consistent(g);
}

TEST(Properties, SnqImpliesPositiveGamma) {
  for (const auto& s : {make_gevrey(0.5, 4096), make_mab(1, 2, 4096), make_mab(2, -1, 4096)}) {
    auto r = full_report(custom_copy(s));
    ASSERT_TRUE(r.snq.holds());
    auto g = gamma_almost_increasing(custom_copy(s));
    EXPECT_TRUE(g.infinite || g.value > 0.02);
  }
}
