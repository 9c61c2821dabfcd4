#include "beamloop/loop.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace beamloop {
namespace {

using test::bits_of;
using test::from_rows;

TEST(Loop, EqualityIgnoresRotation) {
  Loop<int> a({1, 2, 3, 4});
  Loop<int> b({3, 4, 1, 2});
  Loop<int> mirrored({4, 3, 2, 1});
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == mirrored);
  EXPECT_FALSE(a == Loop<int>({1, 2, 3}));
}

TEST(Loop, EmptyLoopIsRejected) { EXPECT_THROW(Loop<int>(std::vector<int>{}), std::invalid_argument); }

TEST(Loop, IndexWrapsAround) {
  Loop<int> a({5, 6, 7});
  EXPECT_EQ(a[3], 5);
  EXPECT_EQ(a[7], 6);
}

TEST(Loop, MinRotationMatchesBruteForce) {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + gen() % 12;
    std::vector<int> v(n);
    for (auto& x : v) x = static_cast<int>(gen() % 3);
    Loop<int> loop(v);
    std::vector<int> best = v;
    for (std::size_t s = 0; s < n; ++s) best = std::min(best, loop.rotated(s).elements());
    EXPECT_EQ(loop.canonical().elements(), best);
    EXPECT_EQ(loop, loop.rotated(gen() % n));
  }
}

TEST(Column, PackingAndText) {
  const Column c{0, 1, 1, 0};
  EXPECT_EQ(c.packed(), 6u);
  EXPECT_EQ(c.to_string(), "0110");
  EXPECT_EQ(c.prefix(2), (Column{0, 1}));
  EXPECT_EQ(c.with_appended(1), (Column{0, 1, 1, 0, 1}));
  EXPECT_EQ(c.without_last(3), (Column{0}));
  EXPECT_LT((Column{0, 1, 1}), (Column{1, 0, 0}));
}

TEST(Unimodal, Examples) {
  EXPECT_TRUE(is_unimodal(bits_of("0001000")));
  EXPECT_TRUE(is_unimodal(bits_of("1000000111")));
  EXPECT_TRUE(is_unimodal(bits_of("0000")));
  EXPECT_TRUE(is_unimodal(bits_of("111")));
  EXPECT_FALSE(is_unimodal(bits_of("0010001100")));
  EXPECT_FALSE(is_unimodal(bits_of("0101")));
}

TEST(Unimodal, MatchesBruteForceOnAllShortLoops) {
  for (std::size_t n = 1; n <= 10; ++n) {
    for (std::uint32_t v = 0; v < (1U << n); ++v) {
      std::vector<std::uint8_t> bits(n);
      for (std::size_t i = 0; i < n; ++i) bits[i] = (v >> i) & 1U;
      const BinaryLoop loop(bits);
      ASSERT_EQ(is_unimodal(loop), oracle::unimodal(bits));
      if (oracle::unimodal(bits)) {
        const auto [first, last] = oracle::run_ends(bits);
        const auto f = flip_positions(loop);
        if (first == 0) {
          EXPECT_TRUE(f.infinite());
        } else {
          EXPECT_EQ(f.first, first);
          EXPECT_EQ(f.last, last);
        }
      }
    }
  }
}

TEST(FlipPositions, Examples) {
  const auto f = flip_positions(bits_of("0001000"));
  EXPECT_EQ(f.first, 4u);
  EXPECT_EQ(f.last, 4u);
  const auto g = flip_positions(bits_of("1000000111"));
  EXPECT_EQ(g.first, 8u);
  EXPECT_EQ(g.last, 1u);
  EXPECT_TRUE(flip_positions(bits_of("1111")).infinite());
  EXPECT_THROW(flip_positions(bits_of("0101")), std::invalid_argument);
}

TEST(BinaryLoop, RotationEquality) {
  EXPECT_EQ(bits_of("0011"), bits_of("1001"));
  EXPECT_EQ(bits_of("0110").count_ones(), 2u);
}

TEST(FeedbackLoop, RowsAndCanonicalForm) {
  const auto loop = test::example_l43();
  EXPECT_EQ(loop.rows(), 4);
  EXPECT_EQ(loop.size(), 10u);
  EXPECT_EQ(loop.row(3), bits_of("0000111110"));
  EXPECT_EQ(loop.unique_count(), 9u);
  EXPECT_EQ(loop, loop.rotated(3));
  EXPECT_EQ(loop.canonical(), loop);
  EXPECT_THROW(loop.row(5), std::out_of_range);
  EXPECT_THROW(FeedbackLoop({Column{1, 0}, Column{1}}, 2, 1), std::invalid_argument);
}

TEST(FeedbackLoop, DelayIsPartOfIdentity) {
  EXPECT_FALSE(from_rows({"10"}, 1) == from_rows({"10"}, 2));
}

TEST(FeedbackLoop, RemoveConsecutiveRepetitionsIsCyclic) {
  const auto loop = from_rows({"110011"}, 1);
  EXPECT_EQ(remove_consecutive_repetitions(loop), from_rows({"10"}, 1));
  const auto same = from_rows({"1111"}, 1);
  EXPECT_EQ(remove_consecutive_repetitions(same).size(), 1u);
}

TEST(SubLoops, SplitByFirstRow) {
  const auto subs = subloops_by_prefix(test::example_l43(), 1);
  ASSERT_EQ(subs.size(), 2u);
  EXPECT_EQ(subs[0].prefix, Column{1});
  EXPECT_EQ(subs[0].loop, from_rows({"11111", "10000", "00001", "00100"}, 3));
  EXPECT_EQ(subs[1].loop, from_rows({"00000", "00111", "11110", "01100"}, 3));
  EXPECT_EQ(subs[1].positions, (std::vector<std::size_t>{5, 6, 7, 8, 9}));
}

TEST(SubLoops, ZeroPrefixIsWholeLoop) {
  const auto loop = test::example_l33();
  const auto subs = subloops_by_prefix(loop, 0);
  ASSERT_EQ(subs.size(), 1u);
  EXPECT_EQ(subs[0].loop, loop);
}

TEST(ParentLoop, ChainOfExamples) {
  EXPECT_EQ(parent_loop(test::example_l43(), 1), test::example_l33());
  EXPECT_EQ(parent_loop(test::example_l33(), 1), test::example_l23());
  EXPECT_EQ(parent_loop(test::example_l43(), 2), test::example_l23());
  EXPECT_EQ(parent_loop(test::example_l43(), 3), from_rows({"10"}, 3));
}

}  // namespace
}  // namespace beamloop
