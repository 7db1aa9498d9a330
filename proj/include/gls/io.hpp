#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gls/constructor.hpp"
#include "gls/gls_spec.hpp"
#include "gls/normality.hpp"
#include "gls/rational_lueroth.hpp"
#include "gls/sequences.hpp"

namespace gls {

// Branch tables: one branch per line, "digit left right orientation" with
// exact fractions p/q and orientation inc|dec. '#' starts a comment.
std::vector<Branch> parse_branch_table(std::istream& in);
GlsSpec load_table_file(const std::string& path);
void write_branch_table(std::ostream& out, const GlsSpec& spec);

// Spec selectors: b-adic:B, lueroth-classic, lueroth-alternating, table:PATH.
GlsSpec parse_spec_id(const std::string& id);

// Sequence selectors: vdc:B, farey, kronecker:sqrt:M, kronecker:golden,
// list:PATH (a file of p/q fractions, one per line).
PointSeq parse_seq_id(const std::string& id);

// Schedule files: a header line, then one "level cutoff verified_to"
// triple per line.
void write_schedule(std::ostream& out, const CutoffSchedule& sched);
CutoffSchedule read_schedule(std::istream& in);

// Digit streams: text (space-separated) or varint (LEB128, length-prefixed).
void write_digits_text(std::ostream& out, std::span<const std::int64_t> digits);
std::vector<std::int64_t> read_digits_text(std::istream& in);
void write_digits_varint(std::ostream& out, std::span<const std::int64_t> digits);
std::vector<std::int64_t> read_digits_varint(std::istream& in);

// CSV / JSON reports. Fractions render as p/q; decimal columns are
// truncated to `decimals` digits.
void write_discrepancy_csv(std::ostream& out, std::span<const std::pair<std::uint64_t, Rat>> rows,
                           std::optional<std::size_t> decimals);
void write_normality_csv(std::ostream& out, const NormalityReport& rep, std::size_t decimals);
void write_normality_json(std::ostream& out, const NormalityReport& rep, std::size_t decimals);
void write_survey_csv(std::ostream& out, const Survey& sv);
void write_survey_summary_json(std::ostream& out, const Survey& sv);

std::string block_str(const Block& block); // digits joined with '-'

} // namespace gls
