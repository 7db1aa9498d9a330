#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gls/discrepancy.hpp"
#include "gls/gls_spec.hpp"
#include "gls/rat.hpp"
#include "gls/sequences.hpp"

namespace gls {

/// Strictly increasing cutoff indices c_0 = 0 < c_1 < ... < c_L. Columns
/// j in (c_{l-1}, c_l] contribute their first l expansion digits to the
/// constructed number. verified_to[l] records how far the defining
/// discrepancy condition was actually checked when c_l was chosen.
struct CutoffSchedule {
    std::vector<std::uint64_t> cutoffs;
    std::vector<std::uint64_t> verified_to;
    Rat horizon_factor = Rat(4);
    std::string spec_id;
    std::string seq_id;

    std::size_t levels() const { return cutoffs.empty() ? 0 : cutoffs.size() - 1; }

    /// Throws DomainError unless c_0 = 0, the cutoffs strictly increase,
    /// verified_to is aligned and horizon_factor >= 1.
    void check() const;
};

/// Trimming length of column j: the unique l with c_{l-1} < j <= c_l.
/// Always l(j) <= j. Throws ScheduleExhausted past the last cutoff.
std::uint64_t l_of(const CutoffSchedule& sched, std::uint64_t j);

/// Total number of digit cells covered by the schedule: sum of l(j).
std::uint64_t digit_capacity(const CutoffSchedule& sched);

struct Cell {
    std::uint64_t row = 0;    // expansion depth i, 0-based
    std::uint64_t column = 0; // sequence index j, 1-based

    friend bool operator==(const Cell&, const Cell&) = default;
};

/// Cell (i, j) holding digit position m of the constructed number, under
/// the concatenation order: digit m is the i-th expansion digit of the j-th
/// sequence member. Assumes every column contributes exactly l(j) digits;
/// streams over points with early-terminating expansions track their actual
/// cells separately (DigitStream::last_cell).
Cell position_to_cell(const CutoffSchedule& sched, std::uint64_t m);

/// Inverse of position_to_cell.
std::uint64_t cell_to_position(const CutoffSchedule& sched, const Cell& cell);

struct CutoffSearchOptions {
    Rat horizon_factor = Rat(4);
    std::uint64_t n_cap = 10'000'000; // column evaluations per level
    unsigned long max_bits = 4096;
    bool parallel = true;
};

/// Selects c_1 < ... < c_L: each c_{l+1} is the smallest index > c_l such
/// that for every n in [c_{l+1}, ceil(horizon_factor * c_{l+1})] and every
/// row i <= l, the extreme discrepancy of {T^i a_j : c_i < j <= n} stays
/// strictly below 1/(l+1). The window is a finite stand-in for the
/// unbounded quantifier; its extent is recorded in verified_to.
CutoffSchedule choose_cutoffs(const GlsSpec& spec, const PointSeq& seq, std::size_t levels,
                              const CutoffSearchOptions& opts = {});

/// Appends one more level to an existing schedule.
void extend_schedule(CutoffSchedule& sched, const GlsSpec& spec, const PointSeq& seq,
                     const CutoffSearchOptions& opts = {});

/// Replays the threshold checks over each level's recorded window.
/// Returns false and fills `diagnostic` on the first violation.
bool verify_schedule(const GlsSpec& spec, const PointSeq& seq, const CutoffSchedule& sched,
                     std::string* diagnostic = nullptr, bool parallel = true);

/// What to do when a column's expansion terminates before l(j) digits.
/// truncate_prefix emits the digits that exist; skip_column consumes the
/// column without emitting.
enum class ShortColumnPolicy { truncate_prefix, skip_column };

struct StreamOptions {
    ShortColumnPolicy policy = ShortColumnPolicy::truncate_prefix;
    bool extendable = false; // grow the schedule instead of exhausting it
    std::uint64_t n_cap = 10'000'000;
    unsigned long max_bits = 4096;
    bool parallel = true;
};

struct StreamStats {
    std::uint64_t digits_emitted = 0;
    std::uint64_t columns_consumed = 0;
    std::uint64_t short_columns = 0;  // expansions shorter than l(j)
    std::uint64_t digits_dropped = 0; // cells not emitted because of that
};

/// Streams the digits of the constructed number: for j = 1, 2, ... the
/// first l(j) expansion digits of sequence element j.
class DigitStream {
public:
    DigitStream(GlsSpec spec, PointSeq seq, CutoffSchedule sched, StreamOptions opts = {});

    /// Next digit; nullopt once a non-extendable schedule is exhausted.
    std::optional<std::int64_t> next();

    /// Cell of the most recently emitted digit.
    const Cell& last_cell() const { return last_; }

    const CutoffSchedule& schedule() const { return sched_; }
    const StreamStats& stats() const { return stats_; }

private:
    bool fill_column();

    GlsSpec spec_;
    PointSeq seq_;
    CutoffSchedule sched_;
    StreamOptions opts_;
    std::uint64_t j_ = 0;
    std::vector<std::int64_t> col_;
    std::size_t pos_ = 0;
    Cell last_;
    StreamStats stats_;
};

/// First `count` digits of the constructed number over a fixed schedule.
/// Throws ScheduleExhausted when the schedule cannot cover them.
std::vector<std::int64_t> z_digits(const GlsSpec& spec, const PointSeq& seq,
                                   const CutoffSchedule& sched, std::uint64_t count,
                                   ShortColumnPolicy policy = ShortColumnPolicy::truncate_prefix);

} // namespace gls
