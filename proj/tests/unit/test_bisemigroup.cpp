#include <gtest/gtest.h>

#include <set>

#include "bisheaf/bisemigroup.hpp"
#include "generators.hpp"

using namespace bisheaf;

namespace {

Mat2 mat(int a, int b, int c, int d) { return Mat2{{{Rational(a), Rational(b)}, {Rational(c), Rational(d)}}}; }

Bielement random_bielement(gen::Rng& rng) {
  auto r = [&] { return gen::small_rational(rng, 9); };
  Mat2 right{{{r(), Rational(0)}, {r(), r()}}};
  Mat2 left{{{r(), r()}, {Rational(0), r()}}};
  return {TriangularElement(Side::Right, right), TriangularElement(Side::Left, left)};
}

}  // namespace

TEST(Bisemigroup, CrossComposeEntrywise) {
  Bielement a{TriangularElement(Side::Right, mat(1, 0, 2, 3)), TriangularElement(Side::Left, mat(1, 4, 0, 2))};
  Bielement b{TriangularElement(Side::Right, mat(0, 0, 1, 1)), TriangularElement(Side::Left, mat(2, 1, 0, 0))};
  Bielement c = cross_compose(a, b);
  EXPECT_EQ(c.right.entries(), mat(1, 0, 3, 4));
  EXPECT_EQ(c.left.entries(), mat(3, 5, 0, 2));
}

TEST(Bisemigroup, ZeroIsIdentity) {
  gen::Rng rng(1);
  Bielement x = random_bielement(rng);
  EXPECT_EQ(cross_compose(x, Bielement::zero()), x);
  EXPECT_EQ(cross_compose(Bielement::zero(), x), x);
}

TEST(Bisemigroup, TriangularityEnforced) {
  EXPECT_THROW(TriangularElement(Side::Left, mat(1, 0, 1, 1)), Error);
  EXPECT_THROW(TriangularElement(Side::Right, mat(1, 1, 0, 1)), Error);
  EXPECT_NO_THROW(TriangularElement(Side::Left, mat(1, 1, 0, 1)));
  EXPECT_NO_THROW(TriangularElement(Side::Right, mat(1, 0, 1, 1)));
}

TEST(Bisemigroup, MisplacedSidesRejected) {
  Bielement bad{TriangularElement::zero(Side::Left), TriangularElement::zero(Side::Left)};
  EXPECT_THROW(cross_compose(bad, Bielement::zero()), Error);
}

TEST(BisemigroupProperty, CommutativeAssociativeTriangular) {
  gen::Rng rng(50);
  for (int trial = 0; trial < 50; ++trial) {
    Bielement a = random_bielement(rng), b = random_bielement(rng), c = random_bielement(rng);
    EXPECT_EQ(cross_compose(a, b), cross_compose(b, a));
    EXPECT_EQ(cross_compose(cross_compose(a, b), c), cross_compose(a, cross_compose(b, c)));
    Bielement s = cross_compose(a, b);
    EXPECT_TRUE(s.right.entries()[0][1].is_zero());
    EXPECT_TRUE(s.left.entries()[1][0].is_zero());
  }
}

TEST(Bisemigroup, ClassRepresentatives) {
  EXPECT_EQ(class_representatives(build_tower({1, 0, 2, {2, 2}, {}})),
            (std::vector<ClassIndex>{{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  EXPECT_EQ(class_representatives(build_tower({1, 0, 1, {}, {}})), (std::vector<ClassIndex>{{1, 1}}));
  EXPECT_EQ(class_representatives(build_tower({1, 0, 4, {1, 2, 3, 4}, {}})).size(), 10u);
}

TEST(BisemigroupProperty, RepresentativesBijectOntoRectangle) {
  gen::Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    Tower t = build_tower(gen::tower_config(rng));
    auto reps = class_representatives(t);
    std::set<ClassIndex> unique(reps.begin(), reps.end());
    EXPECT_EQ(unique.size(), reps.size());
    EXPECT_EQ(reps.size(), t.class_count());
    for (ClassIndex i : reps) EXPECT_TRUE(t.contains(i));
    EXPECT_TRUE(std::is_sorted(reps.begin(), reps.end()));
  }
}

TEST(Expansion, TwoLevels) {
  auto terms = expand_sum_product({{Level::ST, "a"}, {Level::MG, "b"}}, {{Level::ST, "c"}, {Level::MG, "d"}});
  ASSERT_EQ(terms.size(), 4u);
  EXPECT_EQ(terms[0], (LabeledTerm{Level::ST, Level::ST, TermKind::Free, "a (x) c"}));
  EXPECT_EQ(terms[1], (LabeledTerm{Level::MG, Level::MG, TermKind::Free, "b (x) d"}));
  EXPECT_EQ(terms[2], (LabeledTerm{Level::ST, Level::MG, TermKind::Interaction, "a (x) d"}));
  EXPECT_EQ(terms[3], (LabeledTerm{Level::MG, Level::ST, TermKind::Interaction, "b (x) c"}));
}

TEST(Expansion, ThreeLevelsAndOne) {
  std::vector<LevelPart> parts{{Level::ST, "s"}, {Level::MG, "g"}, {Level::M, "m"}};
  auto terms = expand_sum_product(parts, parts);
  ASSERT_EQ(terms.size(), 9u);
  EXPECT_EQ(std::count_if(terms.begin(), terms.end(), [](auto& t) { return t.kind == TermKind::Free; }), 3);
  auto one = expand_sum_product({{Level::ST, "s"}}, {{Level::ST, "s"}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].kind, TermKind::Free);
}

TEST(Expansion, Errors) {
  EXPECT_THROW(expand_sum_product({}, {{Level::ST, "s"}}), Error);
  EXPECT_THROW(expand_sum_product({{Level::ST, "a"}, {Level::ST, "b"}}, {{Level::ST, "s"}}), Error);
}

TEST(ExpansionProperty, CountsAndPartition) {
  gen::Rng rng(4);
  const std::vector<Level> all{Level::ST, Level::MG, Level::M};
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<LevelPart> right, left;
    for (Level l : all) {
      if (gen::uniform(rng, 0, 1)) right.emplace_back(l, "r");
      if (gen::uniform(rng, 0, 1)) left.emplace_back(l, "l");
    }
    if (right.empty() || left.empty()) continue;
    auto terms = expand_sum_product(right, left);
    EXPECT_EQ(terms.size(), right.size() * left.size());
    for (const auto& t : terms) EXPECT_EQ(t.kind == TermKind::Free, t.right_label == t.left_label);
    auto first_interaction = std::find_if(terms.begin(), terms.end(),
                                          [](auto& t) { return t.kind == TermKind::Interaction; });
    EXPECT_TRUE(std::all_of(first_interaction, terms.end(), [](auto& t) { return t.kind == TermKind::Interaction; }));
  }
}
