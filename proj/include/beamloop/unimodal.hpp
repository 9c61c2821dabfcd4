#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "beamloop/loop.hpp"

namespace beamloop {

// Largest column count (N*) and unique-column count (M*) over all
// (b,d)-unimodal loops.
struct MclCardinality {
  std::uint64_t columns = 0;
  std::uint64_t unique_columns = 0;

  friend bool operator==(const MclCardinality&, const MclCardinality&) = default;
};

// Row appended to one sub-loop during child construction. `bits` covers the
// triple-repeated sub-loop, so its length is three times the sub-loop size.
struct ConcatRow {
  BinaryLoop bits;
  std::size_t target_subloop = 0;
};

// For every row i and every prefix of length max(i - d, 0), the i-th bits of
// the columns sharing that prefix form a unimodal loop; and no two cyclically
// adjacent columns are equal. A single-column loop has no adjacent pair.
bool is_bd_unimodal(const FeedbackLoop& loop);

// Prefix length used to split a parent into sub-loops when growing to
// `child_rows` rows.
std::size_t child_prefix_length(int child_rows, int delay);

// Repeats each column three times in place.
FeedbackLoop triple_columns(const FeedbackLoop& loop);

// Grows `parent` by one row. Sub-loops are formed by prefix, tripled, given
// one row each, recombined in parent order and stripped of consecutive
// repetitions. Throws if a row is not unimodal, has the wrong length, or the
// result is not (b,d)-unimodal.
FeedbackLoop construct_child(const FeedbackLoop& parent, const std::vector<ConcatRow>& rows);

// Row that adds the most columns and unique columns to a tripled sub-loop at
// slot `slot`. With identical columns the row is a single one at position 2.
// Otherwise both flips sit in the middle of a triple, on columns whose
// prefixes of length slot - d + 1 differ when possible, else on any two
// different columns; the smallest such pair of positions is taken.
ConcatRow max_addition_row(const FeedbackLoop& tripled, int slot, std::size_t target_subloop = 0);

// Max-cardinality (b,d)-unimodal loop, grown from [1, 0] one row at a time.
FeedbackLoop build_mcl(int rows, int delay);

MclCardinality mcl_cardinality(int rows, int delay);

}  // namespace beamloop
