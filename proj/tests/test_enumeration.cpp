#include <gtest/gtest.h>

#include <algorithm>

#include "coxfold/coxfold.hpp"
#include "oracle.hpp"

using namespace coxfold;

namespace {

std::vector<long long> histogram(const std::vector<std::vector<Element>>& layers) {
  std::vector<long long> h;
  for (const auto& l : layers) h.push_back(static_cast<long long>(l.size()));
  return h;
}

std::vector<long long> coeffs(const QSeries& s) {
  std::vector<long long> out;
  for (const auto& c : s.coeffs()) out.push_back(static_cast<long long>(c));
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

std::vector<GeneratorSet> all_subsets(std::size_t rank) {
  std::vector<GeneratorSet> out;
  for (unsigned bits = 0; bits < (1u << rank); ++bits) {
    GeneratorSet J;
    for (Generator i = 0; i < rank; ++i)
      if (bits >> i & 1u) J.insert(i);
    out.push_back(J);
  }
  return out;
}

}  // namespace

TEST(Enumeration, TypeA2Histogram) {
  const auto layers = enumerate_layers(build_system("A2"), 3);
  EXPECT_EQ(histogram(layers), (std::vector<long long>{1, 2, 2, 1}));
}

TEST(Enumeration, CutoffZeroIsIdentityOnly) {
  for (const auto& label : {"A3", "affine-C2", "I2(inf)"}) {
    const auto sys = build_system(label);
    const auto all = enumerate_up_to(sys, 0);
    ASSERT_EQ(all.size(), 1u);
    EXPECT_TRUE(all[0].is_identity());
  }
}

TEST(Enumeration, InfiniteDihedralHasTwoElementsPerLength) {
  const auto layers = enumerate_layers(build_system("affine-A1"), 4);
  EXPECT_EQ(histogram(layers), (std::vector<long long>{1, 2, 2, 2, 2}));
}

TEST(Enumeration, BudgetIsEnforced) {
  EnumerationOptions tight;
  tight.budget = 10;
  EXPECT_THROW(enumerate_all(build_system("A3"), tight), ResourceLimit);
}

TEST(Enumeration, PoincareSeriesIsExactOnlyWhenExhausted) {
  EXPECT_TRUE(poincare_series(build_system("A2"), 10).is_exact());
  const auto s = poincare_series(build_system("affine-A2"), 5);
  EXPECT_FALSE(s.is_exact());
  EXPECT_EQ(s.order(), 5u);
}

// Poincare polynomials against product formulas and an independent model.
struct FiniteCase {
  std::string label;
  oracle::Poly product;
  long long order;
};

class PoincareAgreement : public ::testing::TestWithParam<FiniteCase> {};

TEST_P(PoincareAgreement, MatchesProductFormulaAndModel) {
  const auto& c = GetParam();
  const auto sys = build_system(c.label);
  const auto p = coeffs(poincare_polynomial(sys));
  EXPECT_EQ(p, oracle::trim(c.product));
  long long total = 0;
  for (auto x : p) total += x;
  EXPECT_EQ(total, c.order);
  EXPECT_TRUE(std::equal(p.begin(), p.end(), p.rbegin())) << "not palindromic";
  if (!sys.is_dihedral()) EXPECT_EQ(p, oracle::make_group(c.label).histogram(100));
}

std::vector<FiniteCase> finite_cases() {
  using oracle::mul;
  using oracle::qint;
  std::vector<FiniteCase> out;
  for (int n = 1; n <= 4; ++n) {
    oracle::Poly p{1};
    long long fact = 1;
    for (int k = 1; k <= n + 1; ++k) p = mul(p, qint(k)), fact *= k;
    out.push_back({"A" + std::to_string(n), p, fact});
  }
  for (int n = 2; n <= 3; ++n) {
    oracle::Poly p{1};
    long long order = 1;
    for (int k = 1; k <= n; ++k) p = mul(p, qint(2 * k)), order *= 2 * k;
    out.push_back({"B" + std::to_string(n), p, order});
  }
  out.push_back({"D4", mul(mul(qint(2), qint(4)), mul(qint(4), qint(6))), 192});
  for (int m = 2; m <= 8; ++m) out.push_back({"I2(" + std::to_string(m) + ")", mul(qint(2), qint(m)), 2 * m});
  return out;
}

INSTANTIATE_TEST_SUITE_P(Finite, PoincareAgreement, ::testing::ValuesIn(finite_cases()), [](const auto& info) {
  std::string s = info.param.label;
  s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return !std::isalnum(ch); }), s.end());
  return s;
});

TEST(Enumeration, AffineHistogramMatchesModel) {
  for (const std::string label : {"affine-A2", "affine-B3", "affine-C2", "affine-D4"}) {
    const auto sys = build_system(label);
    EXPECT_EQ(histogram(enumerate_layers(sys, 7)), oracle::make_group(label).histogram(7)) << label;
  }
}

TEST(Parabolic, FactorizationOfPoincarePolynomial) {
  for (const auto& label : {"A3", "B3", "D4", "I2(6)"}) {
    const auto sys = build_system(label);
    const auto full = poincare_polynomial(sys);
    for (const auto& J : all_subsets(sys.rank())) {
      std::vector<Integer> q, p;
      for (const auto& l : minimal_coset_reps(sys, J, 100)) q.emplace_back(l.size());
      for (const auto& l : parabolic_subgroup(sys, J, 100)) p.emplace_back(l.size());
      EXPECT_EQ(QSeries::exact(q) * QSeries::exact(p), full) << label;
    }
  }
}

TEST(Parabolic, CosetRepresentativesOfB3) {
  const auto sys = build_system("B3");
  const auto layers = minimal_coset_reps(sys, GeneratorSet{1, 2}, 100);
  EXPECT_EQ(histogram(layers), (std::vector<long long>{1, 1, 1, 1, 1, 1}));
  for (const auto& l : layers)
    for (const auto& w : l) {
      EXPECT_FALSE(sys.has_right_descent(w, 1));
      EXPECT_FALSE(sys.has_right_descent(w, 2));
    }
}

TEST(Parabolic, CosetRepresentativeEdgeCases) {
  const auto a3 = build_system("A3");
  EXPECT_EQ(histogram(minimal_coset_reps(a3, {}, 4)), histogram(enumerate_layers(a3, 4)));
  EXPECT_EQ(histogram(minimal_coset_reps(a3, GeneratorSet::all(3), 4)), (std::vector<long long>{1}));
}

TEST(Parabolic, CosetRepresentativesMatchDescentFilter) {
  const auto sys = build_system("affine-C2");
  for (const auto& J : all_subsets(sys.rank())) {
    if (J.size() == sys.rank()) continue;
    std::vector<long long> expected(7, 0);
    for (const auto& w : enumerate_up_to(sys, 6)) {
      bool ok = true;
      for (auto j : J.members()) ok = ok && !sys.has_right_descent(w, j);
      if (ok) ++expected[w.length()];
    }
    auto got = histogram(minimal_coset_reps(sys, J, 6));
    got.resize(7, 0);
    EXPECT_EQ(got, expected);
  }
}

TEST(Parabolic, DecomposeExamples) {
  const auto a3 = build_system("A3");
  auto [h0, t0] = parabolic_decompose(a3, a3.identity(), GeneratorSet{0, 2});
  EXPECT_TRUE(h0.is_identity());
  EXPECT_TRUE(t0.is_identity());

  auto [h, t] = parabolic_decompose(a3, a3.parse("s2s1s3s2"), GeneratorSet{1});
  EXPECT_EQ(h, a3.parse("s2s1s3"));
  EXPECT_EQ(t, a3.parse("s2"));

  const auto b2 = build_system("I2(4)");
  auto [hb, tb] = parabolic_decompose(b2, b2.parse("s1s2s1"), GeneratorSet{1});
  EXPECT_EQ(hb, b2.parse("s1s2s1"));
  EXPECT_TRUE(tb.is_identity());
}

TEST(Parabolic, DecompositionIsSound) {
  for (const auto& label : {"A3", "B3", "affine-C2"}) {
    const auto sys = build_system(label);
    const auto elems = enumerate_up_to(sys, 6);
    for (const auto& J : all_subsets(sys.rank())) {
      for (const auto& w : elems) {
        auto [head, tail] = parabolic_decompose(sys, w, J);
        EXPECT_EQ(sys.multiply(head, tail), w);
        EXPECT_EQ(head.length() + tail.length(), w.length());
        for (auto j : J.members()) EXPECT_FALSE(sys.has_right_descent(head, j));
        for (auto s : sys.reduced_word(tail)) EXPECT_TRUE(J.contains(s));
      }
    }
  }
}

TEST(Parabolic, LongestElementOfBlock) {
  const auto a3 = build_system("A3");
  EXPECT_EQ(a3.format(longest_element(a3, GeneratorSet{0, 2})), "s1s3");
  EXPECT_EQ(longest_element(a3, GeneratorSet{1, 2}).length(), 3u);
}

// Bruhat order against the subword criterion.
namespace {

bool subword_leq(const CoxeterSystem& sys, const Element& v, const Element& w) {
  const Word rw = sys.reduced_word(w);
  for (unsigned mask = 0; mask < (1u << rw.size()); ++mask) {
    Word sub;
    for (std::size_t k = 0; k < rw.size(); ++k)
      if (mask >> k & 1u) sub.push_back(rw[k]);
    if (sys.from_word(sub) == v) return true;
  }
  return false;
}

}  // namespace

TEST(Bruhat, Examples) {
  const auto a3 = build_system("A3");
  for (const auto& w : enumerate_up_to(a3, 6)) EXPECT_TRUE(bruhat_leq(a3, a3.identity(), w));
  EXPECT_FALSE(bruhat_leq(a3, a3.parse("s2"), a3.parse("s1s3")));
  EXPECT_TRUE(bruhat_leq(a3, a3.parse("s1s3"), a3.parse("s2s1s3s2")));
}

TEST(Bruhat, AgreesWithSubwordCriterion) {
  for (const auto& label : {"A3", "B3", "I2(5)"}) {
    const auto sys = build_system(label);
    const auto elems = enumerate_up_to(sys, 100);
    for (const auto& v : elems)
      for (const auto& w : elems) ASSERT_EQ(bruhat_leq(sys, v, w), subword_leq(sys, v, w)) << label;
  }
}

TEST(Enumeration, IndependentOfWorkerCount) {
  for (const auto& label : {"affine-C3", "D4", "affine-A3"}) {
    const auto sys = build_system(label);
    std::vector<std::vector<std::vector<std::int64_t>>> runs;
    for (unsigned workers : {1u, 2u, 4u}) {
      EnumerationOptions opts;
      opts.workers = workers;
      std::vector<std::vector<std::int64_t>> keys;
      for (const auto& layer : enumerate_layers(sys, 8, opts))
        for (const auto& w : layer) {
          keys.push_back(w.key());
          keys.back().push_back(w.length());
        }
      runs.push_back(std::move(keys));
    }
    EXPECT_EQ(runs[0], runs[1]) << label;
    EXPECT_EQ(runs[0], runs[2]) << label;
  }
}
