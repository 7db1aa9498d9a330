#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gls/gls_spec.hpp"
#include "gls/rat.hpp"

namespace gls {

/// Counts overlapping occurrences of `block` at start positions
/// 0..n-r. The returned denominator stays n: the r-1 windows that would
/// overrun the prefix bias the frequency by at most (r-1)/n.
std::pair<std::uint64_t, std::uint64_t> count_block(std::span<const std::int64_t> digits,
                                                    const Block& block, bool parallel = true);

std::pair<std::uint64_t, std::uint64_t> count_block_serial(std::span<const std::int64_t> digits,
                                                           const Block& block);

/// Product of the branch lengths of the block's digits; equals the length
/// of the block's cylinder exactly.
Rat expected_measure(const GlsSpec& spec, const Block& block);

struct BlockStats {
    Block block;
    std::uint64_t occurrences = 0;
    std::uint64_t positions = 0; // denominator n
    Rat empirical;
    Rat expected;
    Rat deviation;
};

struct NormalityReport {
    std::vector<BlockStats> rows; // sorted by deviation, largest first
    std::vector<std::int64_t> alphabet;
    Rat alphabet_mass; // total branch measure of the restricted alphabet
    std::uint64_t n = 0;
    std::size_t max_r = 0;
};

/// Frequency statistics for every block of length 1..max_r over the
/// digit_cap most probable digits.
NormalityReport normality_report(std::span<const std::int64_t> digits, const GlsSpec& spec,
                                 std::size_t max_r, std::size_t digit_cap, bool parallel = true,
                                 std::size_t block_cap = 2'000'000);

} // namespace gls
