#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "coxfold/coxfold.hpp"
#include "oracle.hpp"

using namespace coxfold;

namespace {

const std::vector<std::string> kFinite = {"A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "I2(5)", "I2(8)"};
const std::vector<std::string> kAffine = {"affine-A1", "affine-A3", "affine-B3", "affine-C2", "affine-C3",
                                          "affine-D4"};

Word word(std::initializer_list<Generator> printed) {  // 1-based letters
  Word w;
  for (auto g : printed) w.push_back(g - 1);
  return w;
}

}  // namespace

TEST(CoxeterMatrix, BuildsTypeAFromLabel) {
  const auto a3 = build_system("A3");
  EXPECT_EQ(a3.rank(), 3u);
  EXPECT_EQ(a3.matrix()(0, 1), 3);
  EXPECT_EQ(a3.matrix()(1, 2), 3);
  EXPECT_EQ(a3.matrix()(0, 2), 2);
  EXPECT_EQ(a3.ring(), Ring::Integers);
}

TEST(CoxeterMatrix, DihedralLabelUsesDihedralBackend) {
  const auto i24 = build_system("I2(4)");
  EXPECT_EQ(i24.rank(), 2u);
  EXPECT_EQ(i24.matrix()(0, 1), 4);
  EXPECT_TRUE(i24.is_dihedral());
  EXPECT_TRUE(build_system("I2(inf)").is_dihedral());
}

TEST(CoxeterMatrix, AffineCHasTwoFourEdges) {
  const auto c2 = build_system("affine-C2");
  EXPECT_EQ(c2.rank(), 3u);
  EXPECT_EQ(c2.matrix()(0, 1), 4);
  EXPECT_EQ(c2.matrix()(1, 2), 4);
  EXPECT_EQ(c2.matrix()(0, 2), 2);
  EXPECT_EQ(c2.ring(), Ring::IntegersSqrt2);
  EXPECT_EQ(c2.format(c2.generator(0)), "s0");
}

TEST(CoxeterMatrix, RejectsInvalidMatrices) {
  EXPECT_THROW(CoxeterMatrix(2, {1, 3, 2, 1}), InvalidMatrix);           // asymmetric
  EXPECT_THROW(CoxeterMatrix(2, {2, 3, 3, 1}), InvalidMatrix);           // diagonal
  EXPECT_THROW(CoxeterMatrix(2, {1, 1, 1, 1}), InvalidMatrix);           // off-diagonal 1
  EXPECT_THROW(CoxeterMatrix(3, {1, 5, 2, 5, 1, 3, 2, 3, 1}), InvalidMatrix);  // 5 at rank 3
  EXPECT_THROW(CoxeterMatrix(0, {}), InvalidMatrix);
  EXPECT_NO_THROW(CoxeterMatrix(2, {1, 7, 7, 1}));
}

TEST(CoxeterMatrix, RejectsUnsupportedLabels) {
  EXPECT_THROW(build_system(CoxeterMatrix::from_edges(3, {{0, 1, 6}, {1, 2, 3}})), UnsupportedLabel);
  EXPECT_THROW(build_system("E8"), UnsupportedLabel);
  EXPECT_THROW(build_system("affine-B2"), UnsupportedLabel);
  EXPECT_THROW(build_system("I2(1)"), UnsupportedLabel);
}

TEST(CoxeterSystem, ApplyGeneratorExamples) {
  const auto a3 = build_system("A3");
  const auto s1 = a3.apply(a3.identity(), 0, Side::Right);
  EXPECT_EQ(s1.length(), 1u);
  EXPECT_TRUE(a3.apply(s1, 0, Side::Right).is_identity());
  const auto w = a3.apply(a3.from_word(word({1, 2})), 2, Side::Right);
  EXPECT_EQ(w.length(), 3u);
  EXPECT_EQ(a3.format(w), "s1s2s3");
  EXPECT_THROW(a3.apply(s1, 3, Side::Right), IndexOutOfRange);
}

TEST(CoxeterSystem, LengthExamples) {
  const auto a3 = build_system("A3");
  EXPECT_EQ(a3.identity().length(), 0u);
  const auto top = longest_element(a3, GeneratorSet::all(3));
  EXPECT_EQ(top.length(), 6u);
  const auto w = a3.parse("s1 s3 s2 s1 s3 s2");
  EXPECT_EQ(w.length(), 6u);
  EXPECT_EQ(w, top);
}

TEST(CoxeterSystem, RightDescentExamples) {
  const auto a3 = build_system("A3");
  EXPECT_TRUE(a3.right_descents(a3.identity()).empty());
  EXPECT_EQ(a3.right_descents(longest_element(a3, GeneratorSet::all(3))), (std::vector<Generator>{0, 1, 2}));
  EXPECT_EQ(a3.right_descents(a3.parse("s1s3")), (std::vector<Generator>{0, 2}));
}

TEST(CoxeterSystem, ShortLexExamples) {
  const auto a2 = build_system("A2");
  EXPECT_TRUE(a2.shortlex_normal_form(a2.identity()).empty());
  const auto s2s1 = a2.from_word(word({2, 1}));
  EXPECT_EQ(a2.shortlex_normal_form(s2s1), word({2, 1}));
  EXPECT_NE(a2.from_word(word({1, 2})), s2s1);

  const auto i24 = build_system("I2(4)");
  EXPECT_EQ(i24.shortlex_normal_form(longest_element(i24, GeneratorSet::all(2))), word({1, 2, 1, 2}));
}

TEST(CoxeterSystem, ParseAndFormatRoundTrip) {
  for (const auto& label : {"A3", "B3", "affine-C2", "I2(7)"}) {
    const auto sys = build_system(label);
    for (const auto& w : enumerate_up_to(sys, 5)) EXPECT_EQ(sys.parse(sys.format(w)), w) << label;
  }
  EXPECT_EQ(build_system("A3").format(build_system("A3").identity()), "e");
}

// Group-level properties over every test system.

class SystemProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(SystemProperties, GeneratorsAreInvolutionsOnBothSides) {
  const auto sys = build_system(GetParam());
  for (const auto& w : enumerate_up_to(sys, 6))
    for (Generator i = 0; i < sys.rank(); ++i)
      for (auto side : {Side::Left, Side::Right}) EXPECT_EQ(sys.apply(sys.apply(w, i, side), i, side), w);
}

TEST_P(SystemProperties, LengthChangesByExactlyOne) {
  const auto sys = build_system(GetParam());
  for (const auto& w : enumerate_up_to(sys, 6)) {
    for (Generator i = 0; i < sys.rank(); ++i) {
      const auto x = sys.apply(w, i, Side::Right);
      const long d = static_cast<long>(x.length()) - static_cast<long>(w.length());
      EXPECT_EQ(std::abs(d), 1);
      EXPECT_EQ(d < 0, sys.has_right_descent(w, i));
      const auto y = sys.apply(w, i, Side::Left);
      EXPECT_EQ(y.length() < w.length(), sys.has_left_descent(w, i));
    }
  }
}

TEST_P(SystemProperties, NormalFormIsLeastReducedWord) {
  const auto sys = build_system(GetParam());
  for (const auto& w : enumerate_up_to(sys, 5)) {
    const Word nf = sys.shortlex_normal_form(w);
    EXPECT_EQ(nf.size(), w.length());
    EXPECT_EQ(sys.from_word(nf), w);
    const auto all = sys.all_reduced_words(w);
    EXPECT_EQ(*std::min_element(all.begin(), all.end()), nf);
    for (const auto& r : all) EXPECT_EQ(sys.from_word(r), w);
  }
}

TEST_P(SystemProperties, MultiplyAndInverseAgreeWithWords) {
  const auto sys = build_system(GetParam());
  const auto elems = enumerate_up_to(sys, 3);
  for (const auto& x : elems) {
    EXPECT_TRUE(sys.multiply(x, sys.inverse(x)).is_identity());
    for (std::size_t k = 0; k < elems.size(); k += 3) {
      Word wx = sys.reduced_word(x), wy = sys.reduced_word(elems[k]);
      wx.insert(wx.end(), wy.begin(), wy.end());
      EXPECT_EQ(sys.multiply(x, elems[k]), sys.from_word(wx));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Finite, SystemProperties, ::testing::ValuesIn(kFinite),
                         [](const auto& info) {
                           std::string s = info.param;
                           s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return !std::isalnum(c); }),
                                   s.end());
                           return s;
                         });
INSTANTIATE_TEST_SUITE_P(Affine, SystemProperties, ::testing::ValuesIn(kAffine),
                         [](const auto& info) {
                           std::string s = info.param;
                           s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return !std::isalnum(c); }),
                                   s.end());
                           return s;
                         });

TEST(CoxeterSystem, LengthCountsInvertedRootsInFiniteTypes) {
  for (const auto& label : {"A3", "B3", "D4", "A4"}) {
    const auto sys = build_system(label);
    for (const auto& layer : enumerate_all(sys))
      for (const auto& w : layer) EXPECT_EQ(sys.count_inversions(w), w.length()) << label;
  }
}

// Lengths agree with Cayley-graph distances in an independent realisation.
TEST(CoxeterSystem, LengthsMatchIndependentModel) {
  for (const std::string label : {"A3", "B3", "D4", "affine-A2", "affine-B3", "affine-C2", "affine-D4"}) {
    const auto sys = build_system(label);
    const auto model = oracle::make_group(label);
    ASSERT_EQ(model.gens.size(), sys.rank());
    for (std::size_t i = 0; i < sys.rank(); ++i)
      for (std::size_t j = i + 1; j < sys.rank(); ++j) EXPECT_EQ(model.order(i, j), sys.matrix()(i, j)) << label;
    const auto dist = model.lengths(6);
    std::size_t count = 0;
    for (const auto& w : enumerate_up_to(sys, 6)) {
      const auto it = dist.find(model.word(sys.reduced_word(w)).key());
      ASSERT_NE(it, dist.end()) << label;
      EXPECT_EQ(static_cast<std::uint32_t>(it->second), w.length()) << label;
      ++count;
    }
    EXPECT_EQ(count, dist.size()) << label;
  }
}

TEST(CoxeterSystem, DihedralLengthsAndOrders) {
  for (int m = 2; m <= 9; ++m) {
    const auto sys = build_system("I2(" + std::to_string(m) + ")");
    std::size_t total = 0;
    for (const auto& layer : enumerate_all(sys)) total += layer.size();
    EXPECT_EQ(total, static_cast<std::size_t>(2 * m));
    const auto top = longest_element(sys, GeneratorSet::all(2));
    EXPECT_EQ(top.length(), static_cast<std::uint32_t>(m));
    EXPECT_EQ(sys.right_descents(top).size(), 2u);
  }
}

TEST(CoxeterSystem, ElementKeysSeparateDistinctElements) {
  const auto sys = build_system("B3");
  std::set<std::vector<std::int64_t>> keys;
  std::size_t total = 0;
  for (const auto& layer : enumerate_all(sys))
    for (const auto& w : layer) {
      keys.insert(w.key());
      ++total;
    }
  EXPECT_EQ(total, 48u);
  EXPECT_EQ(keys.size(), 48u);
}
