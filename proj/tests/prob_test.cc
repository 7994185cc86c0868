// Copyright 2026 The coreg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "coreg/categorical.h"
#include "coreg/dirichlet.h"
#include "coreg/rng.h"

namespace coreg {
namespace {

Categorical Make(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return Categorical(v);
}

// Random distribution with occasional exact zeros.
Categorical RandomCategorical(int n, Rng& rng) {
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    w[i] = rng.Uniform() < 0.2 ? 0.0 : -std::log(1.0 - rng.Uniform());
  }
  if (w.sum() == 0.0) w[0] = 1.0;
  return Categorical::FromWeights(w);
}

// Plain-loop Shannon entropy, independent of the library's.
double RefEntropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0) h -= x * std::log(x);
  }
  return h;
}

std::vector<double> ToStd(const Categorical& p) {
  return std::vector<double>(p.probs().data(), p.probs().data() + p.size());
}

TEST(CategoricalTest, AcceptsValidAndRenormalizesSmallDrift) {
  Eigen::VectorXd v(3);
  v << 0.2, 0.3, 0.5 + 5e-7;
  const Categorical p(v);
  EXPECT_NEAR(p.probs().sum(), 1.0, 1e-12);
  EXPECT_EQ(p.size(), 3);
}

TEST(CategoricalTest, RejectsInvalidInput) {
  EXPECT_THROW(Categorical(Eigen::VectorXd()), std::invalid_argument);
  EXPECT_THROW(Make({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(Make({1.2, -0.2}), std::invalid_argument);
  EXPECT_THROW(Make({NAN, 1.0}), std::invalid_argument);
  EXPECT_THROW(Make({0.5, 0.5 + 1e-5}), std::invalid_argument);
  EXPECT_THROW(Categorical::OneHot(3, 3), std::out_of_range);
  EXPECT_THROW(Categorical::FromWeights(Eigen::VectorXd::Zero(4)),
               std::invalid_argument);
}

TEST(CategoricalTest, FactoryHelpers) {
  const auto u = Categorical::Uniform(4);
  for (int i = 0; i < 4; ++i) EXPECT_DOUBLE_EQ(u[i], 0.25);
  const auto h = Categorical::OneHot(5, 3);
  EXPECT_TRUE(h.IsOneHot());
  EXPECT_DOUBLE_EQ(h[3], 1.0);
  EXPECT_FALSE(u.IsOneHot());
}

TEST(EntropyTest, Examples) {
  EXPECT_DOUBLE_EQ(Entropy(Make({1, 0, 0})), 0.0);
  EXPECT_NEAR(Entropy(Categorical::Uniform(4)), 1.3862943611198906, 1e-12);
  EXPECT_NEAR(Entropy(Make({0.5, 0.5, 0, 0})), 0.6931471805599453, 1e-12);
}

TEST(EntropyTest, ZeroExactlyOnOneHotAndMaximalAtUniform) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(10));
    const Categorical p = RandomCategorical(n, rng);
    const double h = Entropy(p);
    EXPECT_NEAR(h, RefEntropy(ToStd(p)), 1e-12);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(n) + 1e-12);
    EXPECT_EQ(h == 0.0, p.IsOneHot());
  }
}

TEST(KlTest, Examples) {
  EXPECT_NEAR(KlDivergence(Categorical::Uniform(36), Categorical::Uniform(36)), 0.0,
              1e-15);
  EXPECT_NEAR(KlDivergence(Make({1, 0}), Make({0.5, 0.5})), std::log(2.0), 1e-12);
  const double expected = 0.8 * std::log(0.8 / 0.5) + 0.2 * std::log(0.2 / 0.5);
  EXPECT_NEAR(KlDivergence(Make({0.8, 0.2}), Make({0.5, 0.5})), expected, 1e-12);
  EXPECT_NEAR(expected, 0.1927, 5e-5);
}

TEST(KlTest, DimensionMismatchThrows) {
  EXPECT_THROW(KlDivergence(Categorical::Uniform(3), Categorical::Uniform(4)),
               DimensionError);
  EXPECT_THROW(JsDivergence(Categorical::Uniform(3), Categorical::Uniform(4)),
               DimensionError);
}

TEST(KlTest, SmoothingKeepsZeroReferenceFinite) {
  // Oracle: clamp q at 1e-12, renormalize, then evaluate directly.
  const double floor = 1e-12;
  const double z = 1.0 + floor;
  const double expected =
      0.5 * std::log(0.5 / (1.0 / z)) + 0.5 * std::log(0.5 / (floor / z));
  const double kl = KlDivergence(Make({0.5, 0.5}), Make({1, 0}));
  EXPECT_TRUE(std::isfinite(kl));
  EXPECT_NEAR(kl, expected, 1e-9);
}

TEST(KlTest, NonNegativeZeroOnlyOnEqualAndAsymmetric) {
  Rng rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(8));
    const Categorical p = RandomCategorical(n, rng);
    const Categorical q = RandomCategorical(n, rng);
    EXPECT_GE(KlDivergence(p, q), 0.0);
    // Zero cells are clamped to 1e-12 before renormalizing, so the
    // self-divergence is bounded by ln(1 + n * 1e-12) rather than exactly 0.
    EXPECT_NEAR(KlDivergence(p, p), 0.0, n * 1e-12);
    if ((p.probs() - q.probs()).cwiseAbs().maxCoeff() > 1e-3) {
      EXPECT_GT(KlDivergence(p, q), 0.0);
    }
  }
  const Categorical p = Make({0.9, 0.1});
  const Categorical q = Make({0.5, 0.5});
  EXPECT_GT(std::abs(KlDivergence(p, q) - KlDivergence(q, p)), 0.01);
}

TEST(JsTest, Examples) {
  EXPECT_DOUBLE_EQ(JsDivergence(Make({0.3, 0.7}), Make({0.3, 0.7})), 0.0);
  EXPECT_NEAR(JsDivergence(Make({1, 0}), Make({0, 1})), std::log(2.0), 1e-12);
  // Independent route: JS = H(M) - (H(p) + H(q)) / 2.
  const double oracle =
      RefEntropy({0.75, 0.25}) - 0.5 * (RefEntropy({0.5, 0.5}) + RefEntropy({1, 0}));
  EXPECT_NEAR(JsDivergence(Make({0.5, 0.5}), Make({1, 0})), oracle, 1e-12);
  EXPECT_NEAR(oracle, 0.2158, 5e-5);
}

TEST(JsTest, SymmetricBoundedAndMatchesEntropyForm) {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformInt(40));
    const Categorical p = RandomCategorical(n, rng);
    const Categorical q = RandomCategorical(n, rng);
    const double js = JsDivergence(p, q);
    EXPECT_NEAR(js, JsDivergence(q, p), 1e-12);
    EXPECT_GE(js, 0.0);
    EXPECT_LE(js, std::log(2.0) + 1e-12);
    std::vector<double> m(n);
    for (int i = 0; i < n; ++i) m[i] = 0.5 * (p[i] + q[i]);
    const double oracle =
        RefEntropy(m) - 0.5 * (RefEntropy(ToStd(p)) + RefEntropy(ToStd(q)));
    EXPECT_NEAR(js, oracle, 1e-10);
    EXPECT_DOUBLE_EQ(JsDivergence(p, p), 0.0);
  }
}

TEST(SoftmaxNegTest, Examples) {
  const Categorical eq = SoftmaxNeg(Eigen::Vector3d(2.0, 2.0, 2.0));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(eq[i], 1.0 / 3.0, 1e-15);
  const Categorical s = SoftmaxNeg(Eigen::Vector2d(0.0, std::log(2.0)));
  EXPECT_NEAR(s[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s[1], 1.0 / 3.0, 1e-15);
  const Categorical big = SoftmaxNeg(Eigen::Vector2d(0.0, 1000.0));
  EXPECT_NEAR(big[0], 1.0, 1e-15);
  EXPECT_NEAR(big[1], 0.0, 1e-15);
  EXPECT_TRUE(std::isfinite(big[1]));
}

TEST(SoftmaxNegTest, ShiftInvariantAndOrderReversing) {
  Rng rng(14);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd v(5);
    for (int i = 0; i < 5; ++i) v[i] = 20.0 * rng.Uniform() - 10.0;
    const double c = 200.0 * rng.Uniform() - 100.0;
    const Categorical a = SoftmaxNeg(v);
    const Categorical b = SoftmaxNeg(v.array() + c);
    EXPECT_LE((a.probs() - b.probs()).cwiseAbs().maxCoeff(), 1e-12);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        if (v[i] < v[j]) EXPECT_GE(a[i], a[j]);
      }
    }
  }
}

TEST(RngTest, KnownVectors) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(SplitMix64(0), 0xe220a8397b1dcdafULL);
  // The 10000th output of mt19937_64 with its default seed is fixed by the
  // C++ standard.
  Rng rng(5489);
  for (int i = 0; i < 9999; ++i) rng.NextU64();
  EXPECT_EQ(rng.NextU64(), 9981545732273789042ULL);
  EXPECT_EQ(rng.position(), 10000u);
}

TEST(RngTest, DeriveSeedComposition) {
  const std::uint64_t parent = 42;
  EXPECT_EQ(DeriveSeed(parent, 2, 7),
            SplitMix64(SplitMix64(SplitMix64(parent) + 2) + 7));
  EXPECT_NE(DeriveSeed(parent, 0, 1), DeriveSeed(parent, 1, 0));
  EXPECT_EQ(Rng(9).Split(3, 4).seed(), DeriveSeed(9, 3, 4));
}

TEST(RngTest, IdenticalSeedsGiveIdenticalStreams) {
  Rng a(123), b(123), c(124);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs = differs || x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RngTest, UniformRangeAndUniformInt) {
  Rng rng(5);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const double u = rng.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = rng.UniformInt(7);
    ASSERT_LT(k, 7u);
    ++counts[k];
  }
  for (int c : counts) EXPECT_NEAR(c / 70000.0, 1.0 / 7.0, 0.01);
  EXPECT_THROW(rng.UniformInt(0), std::invalid_argument);
  EXPECT_EQ(rng.UniformInt(1), 0u);
}

TEST(SampleTest, Examples) {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(Sample(Categorical::OneHot(5, 3), rng), 3);
  std::vector<int> counts(5, 0);
  const auto u = Categorical::Uniform(5);
  for (int i = 0; i < 100000; ++i) ++counts[Sample(u, rng)];
  for (int c : counts) EXPECT_NEAR(c / 100000.0, 0.2, 0.01);
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(Sample(u, a), Sample(u, b));
}

TEST(SampleTest, NeverReturnsZeroProbabilityIndex) {
  Rng rng(2);
  const Categorical p = Make({0.0, 0.5, 0.0, 0.5, 0.0});
  for (int i = 0; i < 10000; ++i) {
    const int k = Sample(p, rng);
    EXPECT_TRUE(k == 1 || k == 3);
  }
}

TEST(PermutationTest, IsPermutationAndUniform) {
  Rng rng(3);
  for (int n : {0, 1, 2, 17, 100}) {
    auto perm = RandomPermutation(n, rng);
    std::sort(perm.begin(), perm.end());
    std::vector<int> ident(n);
    std::iota(ident.begin(), ident.end(), 0);
    EXPECT_EQ(perm, ident);
  }
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < 60000; ++i) ++counts[RandomPermutation(3, rng)];
  ASSERT_EQ(counts.size(), 6u);
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c / 60000.0, 1.0 / 6.0, 0.01);
}

TEST(DirichletTest, FlatPriorMeanIsUniform) {
  DirichletParams d(36, 36, 1.0);
  const Eigen::MatrixXd m = d.Mean();
  EXPECT_NEAR(m.maxCoeff(), 1.0 / 36.0, 1e-15);
  EXPECT_NEAR(m.minCoeff(), 1.0 / 36.0, 1e-15);
  EXPECT_DOUBLE_EQ(d.TotalMass(), 36.0 * 36.0);
}

TEST(DirichletTest, RepeatedOneHotCountsFollowMeanFormula) {
  DirichletParams d(36, 36, 1.0);
  Eigen::VectorXd row = Eigen::VectorXd::Zero(36);
  row[10] = 1.0;
  Eigen::VectorXd col = Eigen::VectorXd::Zero(36);
  col[14] = 1.0;
  for (int n = 1; n <= 5; ++n) {
    d.AddOuter(col, row);
    EXPECT_DOUBLE_EQ(d.concentrations()(14, 10), 1.0 + n);
    EXPECT_NEAR(d.Mean()(14, 10), (1.0 + n) / (36.0 + n), 1e-15);
  }
}

TEST(DirichletTest, AddToRowAndValidation) {
  DirichletParams d(3, 2, 0.5);
  d.AddToRow(1, Eigen::Vector2d(1.0, 0.25));
  EXPECT_DOUBLE_EQ(d.concentrations()(1, 0), 1.5);
  EXPECT_DOUBLE_EQ(d.concentrations()(1, 1), 0.75);
  EXPECT_NEAR(d.ColumnMean(0)[1], 1.5 / 2.5, 1e-15);
  EXPECT_THROW(d.AddToRow(1, Eigen::Vector2d(-0.1, 0.0)), std::invalid_argument);
  EXPECT_THROW(d.AddToRow(3, Eigen::Vector2d(0.1, 0.0)), std::out_of_range);
  EXPECT_THROW(d.AddToRow(0, Eigen::Vector3d(0.1, 0.0, 0.0)), DimensionError);
  EXPECT_THROW(DirichletParams(2, 2, 0.0), std::invalid_argument);
  EXPECT_THROW(DirichletParams(Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST(DirichletTest, SlicesStayValidUnderRandomSoftCounts) {
  Rng rng(4);
  DirichletParams d(6, 4, 0.01);
  for (int step = 0; step < 2000; ++step) {
    const Categorical a = RandomCategorical(6, rng);
    const Categorical b = RandomCategorical(4, rng);
    const double before = d.TotalMass();
    d.AddOuter(a.probs(), b.probs());
    EXPECT_NEAR(d.TotalMass() - before, 1.0, 1e-9);
  }
  EXPECT_GT(d.concentrations().minCoeff(), 0.0);
  for (int c = 0; c < d.cols(); ++c) {
    EXPECT_NO_THROW(d.ColumnMean(c));
    EXPECT_NEAR(d.Mean().col(c).sum(), 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace coreg
