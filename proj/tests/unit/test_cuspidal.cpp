#include <gtest/gtest.h>

#include <set>

#include "bisheaf/cuspidal.hpp"
#include "generators.hpp"
#include "oracle.hpp"

using namespace bisheaf;

namespace {

std::shared_ptr<const Tower> make_tower(TowerConfig c) { return std::make_shared<const Tower>(c); }

EllipticSemimodule modes(std::vector<Mode> m) {
  EllipticSemimodule e;
  e.modes = std::move(m);
  return e;
}

std::vector<oracle::PlainMode> plain(const EllipticSemimodule& e) {
  std::vector<oracle::PlainMode> out;
  for (const Mode& m : e.modes) out.push_back({m.mu, m.amplitude, m.sign});
  return out;
}

}  // namespace

TEST(Compactify, SingleLeftSection) {
  auto t = make_tower({2, 0, 3, {}, {}});
  Semisheaf s(t, Side::Left, Level::ST, Nature::S, {{{3, 1}, Side::Left, Germ::power(2), 1, std::nullopt}});
  EllipticSemimodule e = compactify(s, unit_amplitude());
  ASSERT_EQ(e.modes.size(), 1u);
  EXPECT_EQ(e.modes[0], (Mode{3, 1, 1.0, +1, 6}));
}

TEST(Compactify, EmptyRejected) {
  auto t = make_tower({2, 0, 3, {}, {}});
  Semisheaf s(t, Side::Left, Level::ST, Nature::S, {});
  EXPECT_THROW(compactify(s, unit_amplitude()), Error);
}

TEST(Compactify, CountsSignsAndDegrees) {
  auto t = make_tower({3, 1, 3, {2, 2, 2}, {}});
  Bisemisheaf b = gen::full_bisemisheaf(t);
  EllipticSemimodule l = compactify(b.left(), unit_amplitude());
  EllipticSemimodule r = compactify(b.right(), unit_amplitude());
  EXPECT_EQ(l.modes.size(), 6u);
  std::set<ClassIndex> idx;
  for (const Mode& m : l.modes) {
    EXPECT_TRUE(idx.insert({m.mu, m.m}).second);
    EXPECT_EQ(m.sign, +1);
    EXPECT_EQ(m.degree, 3 * m.mu);
  }
  for (const Mode& m : r.modes) EXPECT_EQ(m.sign, -1);
}

TEST(Compactify, EvenClassConvention) {
  auto t = make_tower({2, 0, 5, {}, {}});
  Bisemisheaf b = gen::full_bisemisheaf(t);
  EllipticSemimodule e = compactify(b.left(), unit_amplitude(), {true});
  ASSERT_EQ(e.modes.size(), 2u);
  EXPECT_EQ(e.modes[0].mu, 2);
  EXPECT_EQ(e.modes[0].degree, 4);
  EXPECT_EQ(e.modes[1].degree, 8);
  auto one = make_tower({2, 0, 1, {}, {}});
  EXPECT_THROW(compactify(gen::full_bisemisheaf(one).left(), unit_amplitude(), {true}), Error);
}

TEST(Compactify, BadAmplitudeRejected) {
  auto t = make_tower({2, 0, 2, {}, {}});
  Bisemisheaf b = gen::full_bisemisheaf(t);
  EXPECT_THROW(compactify(b.left(), [](ClassIndex) { return -1.0; }), Error);
  EXPECT_THROW(compactify(b.left(), [](ClassIndex) { return std::nan(""); }), Error);
}

TEST(Evaluate, ClosedForms) {
  auto z = evaluate(modes({{1, 1, 1.0, +1, 0}}), 0.0);
  EXPECT_DOUBLE_EQ(z.real(), 1.0);
  EXPECT_DOUBLE_EQ(z.imag(), 0.0);
  auto w = evaluate(modes({{2, 1, 1.0, +1, 0}}), 0.5);
  EXPECT_NEAR(w.real(), -1.0, 1e-15);
  EXPECT_NEAR(w.imag(), 0.0, 1e-15);
  auto s = evaluate(modes({{1, 1, 1.0, +1, 0}, {1, 2, 1.0, +1, 0}}), 0.0);
  EXPECT_DOUBLE_EQ(s.real(), 2.0);
}

TEST(EvaluateProperty, MatchesOracleAdditiveHomogeneous) {
  gen::Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    EllipticSemimodule a, b;
    for (int k = 0; k < gen::uniform(rng, 1, 6); ++k)
      a.modes.push_back({gen::uniform(rng, 1, 12), 1, gen::uniform_real(rng, 0, 3), gen::uniform(rng, 0, 1) ? 1 : -1, 0});
    for (int k = 0; k < gen::uniform(rng, 1, 6); ++k)
      b.modes.push_back({gen::uniform(rng, 1, 12), 1, gen::uniform_real(rng, 0, 3), gen::uniform(rng, 0, 1) ? 1 : -1, 0});
    double x = gen::uniform_real(rng, -2, 2);
    EXPECT_LT(std::abs(evaluate(a, x) - oracle::phasor_sum(plain(a), x)), 1e-12);
    EllipticSemimodule ab = a;
    ab.modes.insert(ab.modes.end(), b.modes.begin(), b.modes.end());
    EXPECT_LT(std::abs(evaluate(ab, x) - evaluate(a, x) - evaluate(b, x)), 1e-12);
    EllipticSemimodule scaled = a;
    for (Mode& m : scaled.modes) m.amplitude *= 2.5;
    EXPECT_LT(std::abs(evaluate(scaled, x) - 2.5 * evaluate(a, x)), 1e-12);
  }
}

TEST(Bistring, ConstantModulus) {
  std::vector<double> xs;
  gen::Rng rng(5);
  for (int k = 0; k < 100; ++k) xs.push_back(gen::uniform_real(rng, -5, 5));
  for (double v : bistring_modulus({4, 1, 1.0, -1, 0}, {4, 1, 1.0, +1, 0}, xs)) EXPECT_NEAR(v, 1.0, 1e-14);
  auto six = bistring_modulus({3, 1, 2.0, -1, 0}, {3, 1, 3.0, +1, 0}, xs);
  double mean = 0, var = 0;
  for (double v : six) mean += v / six.size();
  for (double v : six) var += (v - mean) * (v - mean) / six.size();
  EXPECT_NEAR(mean, 6.0, 1e-12);
  EXPECT_LT(var, 1e-12);
}

TEST(Bistring, Contracts) {
  EXPECT_THROW(bistring_modulus({3, 1, 1.0, -1, 0}, {4, 1, 1.0, +1, 0}, {0.0}), Error);
  EXPECT_THROW(bistring_modulus({3, 1, 1.0, +1, 0}, {3, 1, 1.0, +1, 0}, {0.0}), Error);
}

TEST(Lgc, SmallTowers) {
  auto c2 = lgc(gen::full_bisemisheaf(make_tower({1, 0, 2, {}, {}})), unit_amplitude());
  ASSERT_EQ(c2.levels.size(), 1u);
  EXPECT_EQ(c2.levels[0].weil_side.size(), 2u);
  EXPECT_EQ(c2.levels[0].cusp_side.reduced->right.modes.size(), 2u);
  EXPECT_EQ(c2.levels[0].cusp_side.reduced->left.modes.size(), 2u);
  EXPECT_TRUE(c2.bijection_holds());
  auto c1 = lgc(gen::full_bisemisheaf(make_tower({1, 0, 1, {}, {}})), unit_amplitude());
  EXPECT_EQ(c1.levels[0].weil_side.size(), 1u);
}

TEST(Lgc, WeilDegrees) {
  auto c = lgc(gen::full_bisemisheaf(make_tower({3, 2, 2, {1, 2}, {}})), unit_amplitude());
  const auto& w = c.levels[0].weil_side;
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2], (ClassDescriptor{{2, 2}, 8, 8}));
}

TEST(Lggc, DegenerateAndCountedSplits) {
  auto t = make_tower({1, 0, 3, {2, 2, 2}, {}});
  Bisemisheaf b = gen::full_bisemisheaf(t);
  auto all = lggc_st(b, [](ClassIndex) { return true; }, 3, unit_amplitude());
  EXPECT_FALSE(all.levels[0].cusp_side.orthogonal.has_value());
  auto plain_lgc = lgc(b, unit_amplitude());
  EXPECT_EQ(all.levels[0].weil_side, plain_lgc.levels[0].weil_side);
  auto odd = lggc_st(b, [](ClassIndex i) { return i.mu % 2 == 1; }, 3, unit_amplitude());
  EXPECT_EQ(odd.levels[0].cusp_side.reduced->left.modes.size(), 4u);
  EXPECT_EQ(odd.levels[0].cusp_side.orthogonal->left.modes.size(), 2u);
  EXPECT_EQ(odd.levels[0].cusp_side.pair_count(), 6u);
  EXPECT_TRUE(odd.bijection_holds());
}

TEST(LggcProperty, DiagramAndBijectionOnRandomDraws) {
  gen::Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = gen::tower(rng);
    Bisemisheaf b = gen::full_bisemisheaf(t);
    auto pred = gen::predicate(rng, *t);
    int dims = gen::uniform(rng, 2, 3);
    EXPECT_TRUE(diagram_commutes(b, pred, dims, unit_amplitude()));
    EXPECT_TRUE(lggc_st(b, pred, dims, unit_amplitude()).bijection_holds());
    EXPECT_TRUE(lgc(b, unit_amplitude()).bijection_holds());
    CompactifyOptions even{true};
    EXPECT_TRUE(diagram_commutes(b, pred, dims, unit_amplitude(), even));
    EXPECT_TRUE(lggc_st(b, pred, dims, unit_amplitude(), even).bijection_holds());
  }
}

TEST(LggcProperty, ModeMultisetsAgreeWithLgc) {
  gen::Rng rng(78);
  for (int trial = 0; trial < 20; ++trial) {
    auto t = gen::tower(rng);
    Bisemisheaf b = gen::full_bisemisheaf(t);
    auto split = lggc_st(b, gen::predicate(rng, *t), 3, unit_amplitude());
    auto whole = lgc(b, unit_amplitude());
    std::multiset<ClassIndex> a, c;
    for (const auto* p : {&split.levels[0].cusp_side.reduced, &split.levels[0].cusp_side.orthogonal})
      if (*p)
        for (ClassIndex i : (*p)->left.index_set()) a.insert(i);
    for (ClassIndex i : whole.levels[0].cusp_side.reduced->left.index_set()) c.insert(i);
    EXPECT_EQ(a, c);
  }
}

TEST(CuspidalProperty, ModeCountConservation) {
  gen::Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    auto t = gen::tower(rng);
    Bisemisheaf b = gen::sparse_bisemisheaf(rng, t, 0.6);
    if (b.size() == 0) continue;
    EXPECT_EQ(compactify(b.left(), unit_amplitude()).modes.size(), b.size());
    EXPECT_EQ(compactify(b.right(), unit_amplitude()).modes.size(), b.size());
  }
}

TEST(Cuspidal, BrokenBijectionDetected) {
  LevelRecord rec;
  rec.weil_side.push_back({{1, 1}, 1, 1});
  rec.weil_side.push_back({{2, 1}, 2, 2});
  SemimodulePair p;
  p.left = modes({{1, 1, 1.0, +1, 1}});
  p.right = modes({{1, 1, 1.0, -1, 1}});
  rec.cusp_side.reduced = p;
  EXPECT_FALSE(rec.bijection_holds());
}
