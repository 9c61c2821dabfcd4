#include "beamloop/unimodal.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace beamloop {
namespace {

using test::bits_of;
using test::from_rows;

std::vector<std::uint32_t> packed_columns(const FeedbackLoop& loop) {
  std::vector<std::uint32_t> out;
  for (const auto& c : loop.columns()) out.push_back(static_cast<std::uint32_t>(c.packed()));
  return out;
}

BinaryLoop random_unimodal(std::size_t n, std::mt19937& gen) {
  std::vector<std::uint8_t> bits(n, 0);
  const std::size_t ones = gen() % (n + 1);
  const std::size_t start = gen() % n;
  for (std::size_t k = 0; k < ones; ++k) bits[(start + k) % n] = 1;
  return BinaryLoop(bits);
}

TEST(BdUnimodal, WorkedExamples) {
  EXPECT_TRUE(is_bd_unimodal(test::example_l43()));
  EXPECT_TRUE(is_bd_unimodal(test::example_l33()));
  EXPECT_TRUE(is_bd_unimodal(test::example_mcl43_a()));
  EXPECT_TRUE(is_bd_unimodal(test::example_mcl43_b()));
  // The last row is not unimodal on its own, only per first-row class.
  EXPECT_FALSE(is_bd_unimodal(from_rows({"1111100000", "1000000111", "0000111110", "0010001100"}, 4)));
  EXPECT_FALSE(is_bd_unimodal(from_rows({"1100"}, 1)));
  EXPECT_TRUE(is_bd_unimodal(from_rows({"1"}, 1)));
}

TEST(BdUnimodal, MatchesBruteForceOnRandomLoops) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 3000; ++trial) {
    const int b = 1 + static_cast<int>(gen() % 4);
    const int d = 1 + static_cast<int>(gen() % 4);
    const std::size_t n = 1 + gen() % 9;
    std::vector<Column> cols;
    std::vector<std::uint32_t> packed;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint8_t> bits(static_cast<std::size_t>(b));
      for (auto& x : bits) x = gen() & 1U;
      cols.emplace_back(bits);
      packed.push_back(static_cast<std::uint32_t>(cols.back().packed()));
    }
    ASSERT_EQ(is_bd_unimodal(FeedbackLoop(cols, b, d)), oracle::bd_unimodal(packed, b, d));
  }
}

TEST(ConstructChild, ThreeChildrenOfSmallLoop) {
  const auto parent = test::example_l23();
  const auto child = [&](const char* row) { return construct_child(parent, {ConcatRow{bits_of(row), 0}}); };
  EXPECT_EQ(child("111000000000"), from_rows({"1100", "1001", "1000"}, 3));
  EXPECT_EQ(child("010000000000"), from_rows({"111100", "111001", "010000"}, 3));
  EXPECT_EQ(child("011110000000"), from_rows({"111100", "110001", "011000"}, 3));
}

TEST(ConstructChild, TwoSubLoopsRecombine) {
  const auto out = construct_child(test::example_l33(),
                                   {ConcatRow{bits_of("000010000"), 0}, ConcatRow{bits_of("001100000"), 1}});
  EXPECT_EQ(out, test::example_l43());
}

TEST(ConstructChild, RejectsBadRows) {
  const auto parent = test::example_l33();
  EXPECT_THROW(construct_child(parent, {ConcatRow{bits_of("000010000"), 0}}), std::invalid_argument);
  EXPECT_THROW(construct_child(parent, {ConcatRow{bits_of("010010000"), 0}, ConcatRow{bits_of("001100000"), 1}}),
               std::invalid_argument);
  EXPECT_THROW(construct_child(parent, {ConcatRow{bits_of("0100"), 0}, ConcatRow{bits_of("001100000"), 1}}),
               std::invalid_argument);
  EXPECT_THROW(construct_child(parent, {ConcatRow{bits_of("000010000"), 0}, ConcatRow{bits_of("001100000"), 0}}),
               std::invalid_argument);
}

TEST(ConstructChild, RandomRowsGiveValidChildrenOrThrow) {
  std::mt19937 gen(5);
  int built = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    const int d = 1 + static_cast<int>(gen() % 3);
    const int b = 1 + static_cast<int>(gen() % 4);
    const auto parent = build_mcl(b, d);
    const auto subs = subloops_by_prefix(parent, child_prefix_length(b + 1, d));
    std::vector<ConcatRow> rows;
    for (std::size_t s = 0; s < subs.size(); ++s) rows.push_back({random_unimodal(3 * subs[s].loop.size(), gen), s});
    try {
      const auto child = construct_child(parent, rows);
      ++built;
      EXPECT_TRUE(oracle::bd_unimodal(packed_columns(child), b + 1, d));
      EXPECT_EQ(parent_loop(child, 1), parent);
    } catch (const std::invalid_argument& e) {
      EXPECT_STREQ(e.what(), "invalid concatenation");
    }
  }
  EXPECT_GT(built, 100);
}

TEST(MaxAdditionRow, IdenticalColumns) {
  const auto tripled = triple_columns(from_rows({"1"}, 1));
  EXPECT_EQ(max_addition_row(tripled, 2).bits, bits_of("010"));
}

TEST(MaxAdditionRow, FlipsInTheMiddleOfTriples) {
  const auto subs = subloops_by_prefix(test::example_l33(), 1);
  for (const auto& s : subs) {
    const auto row = max_addition_row(triple_columns(s.loop), 4);
    const auto f = flip_positions(row.bits);
    ASSERT_FALSE(f.infinite());
    EXPECT_EQ(*f.first % 3, 2u);
    EXPECT_EQ(*f.last % 3, 2u);
    EXPECT_NE(s.loop.column((*f.first - 1) / 3), s.loop.column((*f.last - 1) / 3));
  }
}

TEST(BuildMcl, BaseCase) {
  EXPECT_EQ(build_mcl(1, 1), from_rows({"10"}, 1));
  EXPECT_EQ(build_mcl(1, 5), from_rows({"01"}, 5));
  EXPECT_THROW(build_mcl(0, 1), std::invalid_argument);
  EXPECT_THROW(build_mcl(2, 0), std::invalid_argument);
}

TEST(BuildMcl, FourRowsDelayThree) {
  const auto loop = build_mcl(4, 3);
  EXPECT_EQ(loop.size(), 10u);
  EXPECT_EQ(loop.unique_count(), 10u);
  EXPECT_TRUE(oracle::bd_unimodal(packed_columns(loop), 4, 3));
  EXPECT_EQ(parent_loop(loop, 1), build_mcl(3, 3));
}

TEST(BuildMcl, SizesFollowTheGroupModel) {
  for (int d = 1; d <= 5; ++d) {
    for (int b = 1; b <= (d == 1 ? 9 : 12); ++b) {
      const auto loop = build_mcl(b, d);
      const auto expected = oracle::group_model(b, d);
      EXPECT_EQ(loop.size(), expected.columns) << b << "," << d;
      EXPECT_EQ(loop.unique_count(), expected.unique) << b << "," << d;
      EXPECT_TRUE(is_bd_unimodal(loop));
      EXPECT_EQ(mcl_cardinality(b, d), (MclCardinality{loop.size(), loop.unique_count()}));
    }
  }
}

TEST(Cardinality, KnownValues) {
  EXPECT_EQ(mcl_cardinality(4, 3), (MclCardinality{10, 10}));
  EXPECT_EQ(mcl_cardinality(3, 1), (MclCardinality{14, 8}));
  EXPECT_EQ(mcl_cardinality(5, 5), (MclCardinality{10, 10}));
  EXPECT_EQ(mcl_cardinality(1, 7), (MclCardinality{2, 2}));
  const std::uint64_t d3[] = {2, 4, 6, 10, 18, 30, 50, 86};
  for (int b = 1; b <= 8; ++b) EXPECT_EQ(mcl_cardinality(b, 3).unique_columns, d3[b - 1]);
  for (int b = 1; b <= 12; ++b) EXPECT_EQ(mcl_cardinality(b, 2).unique_columns, mcl_cardinality(b, 1).unique_columns);
}

TEST(Cardinality, MatchesGroupModelOnWideGrid) {
  for (int d = 1; d <= 10; ++d) {
    for (int b = 1; b <= 20; ++b) {
      const auto m = oracle::group_model(b, d);
      EXPECT_EQ(mcl_cardinality(b, d), (MclCardinality{m.columns, m.unique}));
    }
  }
}

TEST(Cardinality, RejectsOutOfRange) {
  EXPECT_THROW(mcl_cardinality(0, 1), std::invalid_argument);
  EXPECT_THROW(mcl_cardinality(3, 0), std::invalid_argument);
  EXPECT_THROW(mcl_cardinality(63, 1), std::overflow_error);
}

TEST(Maximality, NoSmallLoopBeatsTheConstruction) {
  for (auto [b, d] : {std::pair{1, 1}, {2, 1}, {2, 2}, {2, 3}, {3, 3}}) {
    const auto best = oracle::exhaustive_max_loop(b, d);
    const auto m = mcl_cardinality(b, d);
    EXPECT_EQ(best.columns, m.columns) << b << "," << d;
    EXPECT_EQ(best.unique, m.unique_columns) << b << "," << d;
  }
}

}  // namespace
}  // namespace beamloop
