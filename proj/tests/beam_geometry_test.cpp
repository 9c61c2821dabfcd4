#include "beamloop/beam_geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "beamloop/arc_set.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

namespace beamloop {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Angles, Wrap) {
  EXPECT_DOUBLE_EQ(wrap_angle(kTwoPi + 1.0), 1.0);
  EXPECT_DOUBLE_EQ(wrap_angle(-1.0), kTwoPi - 1.0);
  EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
  EXPECT_DOUBLE_EQ(ccw_offset(1.0, 5.0), kTwoPi - 4.0);
}

TEST(AngularInterval, HalfOpenMembership) {
  const auto arc = AngularInterval::arc(1.0, 2.0);
  EXPECT_FALSE(arc.contains(1.0));
  EXPECT_TRUE(arc.contains(2.0));
  EXPECT_TRUE(arc.contains(1.5 + kTwoPi));
  EXPECT_DOUBLE_EQ(arc.width(), 1.0);

  const auto wrapping = AngularInterval::arc(6.0, 0.5);
  EXPECT_TRUE(wrapping.contains(0.1));
  EXPECT_TRUE(wrapping.contains(kTwoPi));
  EXPECT_FALSE(wrapping.contains(3.0));
  EXPECT_NEAR(wrapping.width(), 0.5 + kTwoPi - 6.0, 1e-15);

  EXPECT_TRUE(AngularInterval::full_circle(2.0).contains(2.0));
  EXPECT_DOUBLE_EQ(AngularInterval::full_circle().width(), kTwoPi);
  EXPECT_TRUE(AngularInterval::empty_at(1.0).is_empty());
  EXPECT_FALSE(AngularInterval::empty_at(1.0).contains(1.0));
  EXPECT_EQ(AngularInterval::empty_at(1.0).width(), 0.0);
}

TEST(ComponentBeamLoop, EqualPartition) {
  const auto c = ComponentBeamLoop::equal_partition(4);
  ASSERT_EQ(c.size(), 4u);
  for (double w : c.widths()) EXPECT_NEAR(w, kPi / 2, 1e-15);
  EXPECT_EQ(c.locate(0.1), 0u);
  EXPECT_EQ(c.locate(kPi / 2), 0u);
  EXPECT_EQ(c.locate(kTwoPi), 3u);
  EXPECT_TRUE(c.span(1, 4).is_full());
  EXPECT_TRUE(c.span(1, 0).is_empty());
  EXPECT_NEAR(c.span(3, 2).width(), kPi, 1e-15);
}

TEST(ComponentBeamLoop, ZeroWidthAndSingleComponent) {
  const auto c = ComponentBeamLoop::from_endpoints({1.0, 1.0, 2.0});
  EXPECT_EQ(c.width(0), 0.0);
  EXPECT_DOUBLE_EQ(c.width(1), 1.0);
  EXPECT_DOUBLE_EQ(c.width(2), kTwoPi - 1.0);
  EXPECT_EQ(ComponentBeamLoop::from_endpoints({3.0}).width(0), kTwoPi);
  EXPECT_TRUE(ComponentBeamLoop::from_endpoints({3.0}).interval(0).is_full());
  const auto two = ComponentBeamLoop::from_endpoints({1.0, 1.0 + kTwoPi});
  EXPECT_EQ(two.width(0), kTwoPi);
  EXPECT_EQ(two.width(1), 0.0);
}

TEST(ComponentBeamLoop, RejectsBadInput) {
  EXPECT_THROW(ComponentBeamLoop::from_endpoints({}), std::invalid_argument);
  EXPECT_THROW(ComponentBeamLoop::from_endpoints({2.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ComponentBeamLoop::from_endpoints({0.0, 7.0}), std::invalid_argument);
  EXPECT_THROW(ComponentBeamLoop::from_widths(0.0, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(ComponentBeamLoop::from_widths(0.0, {kTwoPi + 1.0, -1.0}), std::invalid_argument);
}

TEST(ScanningBeamSet, PrefixDiscipline) {
  ScanningBeamSet s(4, 3);
  EXPECT_EQ(s.prefix_length(3), 0u);
  EXPECT_EQ(s.prefix_length(4), 1u);
  EXPECT_THROW(s.set_beam(4, Column{}, AngularInterval::full_circle()), std::invalid_argument);
  EXPECT_THROW(s.set_beam(5, Column{}, AngularInterval::full_circle()), std::out_of_range);
  EXPECT_THROW(s.beam(4, Column{1}), std::out_of_range);
  EXPECT_THROW(ScanningBeamSet(0, 1), std::invalid_argument);
}

TEST(ConstructScanningSet, WorkedExample) {
  const auto comps = ComponentBeamLoop::equal_partition(10);
  const auto beams = construct_scanning_set(comps, test::example_l43());
  const auto expected = test::example_beam_set();
  EXPECT_EQ(beams.beam(4, Column{1}), comps.span(2, 1));
  EXPECT_EQ(beams.beam(4, Column{0}), comps.span(6, 2));
  for (int slot = 1; slot <= 3; ++slot) EXPECT_EQ(beams.beam(slot, Column{}), expected.beam(slot, Column{}));
  EXPECT_EQ(beams.beam_count(), 5u);
}

TEST(ConstructScanningSet, EdgeBeams) {
  // b = 1: one beam over the first component.
  const auto comps = ComponentBeamLoop::equal_partition(2);
  const auto one = construct_scanning_set(comps, build_mcl(1, 1));
  EXPECT_NEAR(one.beam(1, Column{}).width(), kPi, 1e-15);
  // A prefix class whose bits are all ones.
  const auto loop = test::from_rows({"1100", "1001"}, 1);
  const auto c4 = ComponentBeamLoop::equal_partition(4);
  const auto s = construct_scanning_set(c4, loop);
  EXPECT_EQ(s.beam(2, Column{1}), c4.span(0, 1));
  EXPECT_EQ(s.beam(2, Column{0}), c4.span(3, 1));
  EXPECT_THROW(construct_scanning_set(c4, test::from_rows({"1010"}, 1)), std::invalid_argument);
  EXPECT_THROW(construct_scanning_set(comps, loop), std::invalid_argument);
}

TEST(Decompose, WorkedExampleRecoversLoop) {
  const auto dec = decompose(test::example_beam_set());
  EXPECT_EQ(dec.feedback, test::example_l43());
  EXPECT_EQ(dec.components.size(), 10u);
  for (double w : dec.components.widths()) EXPECT_NEAR(w, kTwoPi / 10, 1e-12);
}

TEST(Decompose, RoundTripOnRandomPairs) {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + static_cast<int>(gen() % 4);
    const int b = 1 + static_cast<int>(gen() % 5);
    const auto loop = test::random_valid_loop(b, d, gen);
    const auto comps = test::random_components(loop.size(), gen);
    const auto dec = decompose(construct_scanning_set(comps, loop));
    ASSERT_EQ(dec.feedback, loop);
    EXPECT_LT(oracle::circular_mismatch(dec.components.endpoints(), comps.endpoints()), 1e-12);
  }
}

TEST(UncertaintyRegions, PartitionAndContainment) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + static_cast<int>(gen() % 3);
    const int b = 1 + static_cast<int>(gen() % 5);
    const auto loop = test::random_valid_loop(b, d, gen);
    const auto comps = test::random_components(loop.size(), gen);
    const auto urs = uncertainty_regions(comps, loop);
    EXPECT_EQ(urs.size(), loop.unique_count());
    double total = 0.0;
    for (const auto& r : urs) total += r.width;
    EXPECT_NEAR(total, kTwoPi, 1e-12);
    const auto beams = construct_scanning_set(comps, loop);
    for (int k = 0; k < 50; ++k) {
      const double psi = angle(gen);
      const Column fb = feedback_for_aod(beams, psi);
      const auto* region = urs.find(fb);
      ASSERT_NE(region, nullptr);
      const auto set = ArcSet::union_of(region->intervals);
      EXPECT_TRUE(set.contains(psi));
      const auto located = ArcSet::union_of(beam_for_aod(beams, psi));
      EXPECT_NEAR(located.measure(), region->width, 1e-12);
      EXPECT_NEAR(located.intersect(set).measure(), region->width, 1e-12);
    }
  }
}

TEST(UncertaintyRegions, ContiguousForMaxCardinalityLoops) {
  std::mt19937_64 gen(21);
  for (int d = 2; d <= 5; ++d) {
    for (int b = 1; b <= 8; ++b) {
      const auto loop = build_mcl(b, d);
      const auto urs = uncertainty_regions(test::random_components(loop.size(), gen), loop);
      for (const auto& r : urs) EXPECT_EQ(ArcSet::union_of(r.intervals).arcs().size(), 1u);
    }
  }
}

TEST(UncertaintyRegions, RepeatedColumnSplitsItsRegion) {
  const auto urs = uncertainty_regions(ComponentBeamLoop::equal_partition(10), test::example_l43());
  const auto* r = urs.find(Column{1, 0, 0, 0});
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(ArcSet::union_of(r->intervals).arcs().size(), 2u);
}

TEST(ArcSet, Operations) {
  const auto a = ArcSet::of(AngularInterval::arc(1.0, 3.0));
  const auto b = ArcSet::of(AngularInterval::arc(2.0, 4.0));
  EXPECT_NEAR(a.intersect(b).measure(), 1.0, 1e-15);
  EXPECT_NEAR(a.complement().measure(), kTwoPi - 2.0, 1e-15);
  EXPECT_TRUE(ArcSet::full().complement().is_empty());
  const auto wrap = ArcSet::of(AngularInterval::arc(6.0, 0.5));
  EXPECT_EQ(wrap.pieces().size(), 2u);
  ASSERT_EQ(wrap.arcs().size(), 1u);
  EXPECT_DOUBLE_EQ(wrap.arcs()[0].start(), 6.0);
  EXPECT_TRUE(wrap.contains(kTwoPi));
  EXPECT_FALSE(wrap.contains(6.0));
  const auto joined = ArcSet::union_of({AngularInterval::arc(1.0, 2.0), AngularInterval::arc(2.0, 3.0)});
  EXPECT_EQ(joined.pieces().size(), 1u);
  EXPECT_TRUE(ArcSet::full().arcs().front().is_full());
}

}  // namespace
}  // namespace beamloop
