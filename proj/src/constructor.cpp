#include "gls/constructor.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

namespace gls {

void CutoffSchedule::check() const {
    if (cutoffs.empty() || cutoffs[0] != 0)
        throw DomainError("schedule must start with c_0 = 0");
    for (std::size_t l = 1; l < cutoffs.size(); ++l)
        if (cutoffs[l] <= cutoffs[l - 1])
            throw DomainError("cutoffs must increase strictly: c_" + std::to_string(l - 1) + "=" +
                              std::to_string(cutoffs[l - 1]) + ", c_" + std::to_string(l) + "=" +
                              std::to_string(cutoffs[l]));
    if (verified_to.size() != cutoffs.size())
        throw DomainError("verified_to must have one entry per cutoff");
    for (std::size_t l = 1; l < cutoffs.size(); ++l)
        if (verified_to[l] < cutoffs[l])
            throw DomainError("verified_to[" + std::to_string(l) + "] precedes its cutoff");
    if (horizon_factor < Rat(1))
        throw DomainError("horizon_factor must be >= 1");
}

std::uint64_t l_of(const CutoffSchedule& sched, std::uint64_t j) {
    if (j < 1)
        throw DomainError("column indices start at 1");
    if (sched.cutoffs.empty() || j > sched.cutoffs.back())
        throw ScheduleExhausted("column " + std::to_string(j) +
                                " is beyond the last cutoff; the schedule needs extension");
    auto it = std::lower_bound(sched.cutoffs.begin(), sched.cutoffs.end(), j);
    return static_cast<std::uint64_t>(it - sched.cutoffs.begin());
}

std::uint64_t digit_capacity(const CutoffSchedule& sched) {
    std::uint64_t total = 0;
    for (std::size_t l = 1; l < sched.cutoffs.size(); ++l)
        total += static_cast<std::uint64_t>(l) * (sched.cutoffs[l] - sched.cutoffs[l - 1]);
    return total;
}

Cell position_to_cell(const CutoffSchedule& sched, std::uint64_t m) {
    std::uint64_t cum = 0;
    for (std::size_t l = 1; l < sched.cutoffs.size(); ++l) {
        std::uint64_t block = static_cast<std::uint64_t>(l) * (sched.cutoffs[l] - sched.cutoffs[l - 1]);
        if (m < cum + block) {
            std::uint64_t off = m - cum;
            return {off % l, sched.cutoffs[l - 1] + 1 + off / l};
        }
        cum += block;
    }
    throw DomainError("digit position " + std::to_string(m) + " beyond schedule capacity " +
                      std::to_string(cum));
}

std::uint64_t cell_to_position(const CutoffSchedule& sched, const Cell& cell) {
    std::uint64_t l = l_of(sched, cell.column);
    if (cell.row >= l)
        throw DomainError("row " + std::to_string(cell.row) + " exceeds trimming length " +
                          std::to_string(l) + " of column " + std::to_string(cell.column));
    std::uint64_t cum = 0;
    for (std::uint64_t k = 1; k < l; ++k)
        cum += k * (sched.cutoffs[k] - sched.cutoffs[k - 1]);
    return cum + (cell.column - sched.cutoffs[l - 1] - 1) * l + cell.row;
}

namespace {

std::uint64_t ceil_to_u64(const Rat& r) {
    mpz_class c = r.ceil();
    if (!c.fits_ulong_p())
        throw ResourceCapError("window bound overflows: " + r.str());
    return static_cast<std::uint64_t>(c.get_ui());
}

// One row of a level scan: the multiset {T^row a_j : j >= start} streamed
// column by column through a ThresholdScanner.
struct RowScan {
    std::uint64_t row = 0;
    std::uint64_t start = 1;
    std::uint64_t next_j = 1;
    std::uint64_t last_bad = 0;
    ThresholdScanner scanner;

    RowScan(std::uint64_t r, std::uint64_t s, Rat theta, bool exact)
        : row(r), start(s), next_j(s), scanner(std::move(theta), exact) {}

    void scan_to(const GlsSpec& spec, const PointSeq& seq, std::uint64_t n_hi,
                 std::uint64_t check_from, unsigned long max_bits) {
        for (; next_j <= n_hi; ++next_j) {
            auto p = orbit_point(spec, seq, next_j, row, max_bits);
            bool bad = scanner.feed_and_check(p);
            if (bad && next_j >= check_from)
                last_bad = next_j;
        }
    }
};

struct LevelResult {
    std::uint64_t cutoff = 0;
    std::uint64_t verified_to = 0;
};

LevelResult select_next_cutoff(const GlsSpec& spec, const PointSeq& seq,
                               const std::vector<std::uint64_t>& cuts, const Rat& horizon,
                               std::uint64_t n_cap, unsigned long max_bits, bool parallel) {
    std::size_t lev = cuts.size() - 1; // choosing c_{lev+1}
    Rat theta(1, static_cast<long>(lev) + 1);
    std::vector<RowScan> rows;
    rows.reserve(lev + 1);
    for (std::size_t i = 0; i <= lev; ++i)
        rows.emplace_back(i, cuts[i] + 1, theta, seq.exact());

    const std::uint64_t check_from = cuts[lev] + 1;
    std::uint64_t cand = check_from;
    std::uint64_t scanned = 0;

    while (true) {
        std::uint64_t n_hi = ceil_to_u64(horizon * Rat(static_cast<unsigned long long>(cand)));
        if (n_hi > n_cap) {
            std::ostringstream os;
            os << "cutoff search for level " << (lev + 1) << " exceeded n_cap=" << n_cap
               << " (candidate " << cand << "); best row deviations:";
            for (const RowScan& r : rows)
                os << " row" << r.row << "=" << r.scanner.last_exact().str();
            throw ResourceCapError(os.str());
        }
        if (n_hi > scanned) {
            std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
            for (long long i = 0; i < static_cast<long long>(rows.size()); ++i) {
                try {
                    rows[static_cast<std::size_t>(i)].scan_to(spec, seq, n_hi, check_from,
                                                              max_bits);
                } catch (...) {
#pragma omp critical
                    if (!err) err = std::current_exception();
                }
            }
            if (err) std::rethrow_exception(err);
            scanned = n_hi;
        }
        std::uint64_t last_bad = 0;
        for (const RowScan& r : rows)
            last_bad = std::max(last_bad, r.last_bad);
        if (last_bad >= cand)
            cand = last_bad + 1;
        else
            return {cand, scanned};
    }
}

} // namespace

CutoffSchedule choose_cutoffs(const GlsSpec& spec, const PointSeq& seq, std::size_t levels,
                              const CutoffSearchOptions& opts) {
    if (levels < 1)
        throw DomainError("at least one level is required");
    if (opts.horizon_factor < Rat(1))
        throw DomainError("horizon_factor must be >= 1");
    ValidationReport rep = validate(spec);
    if (!rep.ok)
        throw DomainError("invalid GLS spec " + spec.name() + ": " + rep.issues.front());

    CutoffSchedule sched;
    sched.cutoffs = {0};
    sched.verified_to = {0};
    sched.horizon_factor = opts.horizon_factor;
    sched.spec_id = spec.name();
    sched.seq_id = seq.id();
    for (std::size_t l = 0; l < levels; ++l) {
        LevelResult r = select_next_cutoff(spec, seq, sched.cutoffs, sched.horizon_factor,
                                           opts.n_cap, opts.max_bits, opts.parallel);
        sched.cutoffs.push_back(r.cutoff);
        sched.verified_to.push_back(r.verified_to);
    }
    sched.check();
    return sched;
}

void extend_schedule(CutoffSchedule& sched, const GlsSpec& spec, const PointSeq& seq,
                     const CutoffSearchOptions& opts) {
    sched.check();
    if (!sched.spec_id.empty() && sched.spec_id != spec.name())
        throw DomainError("schedule was built for spec " + sched.spec_id + ", not " + spec.name());
    if (!sched.seq_id.empty() && sched.seq_id != seq.id())
        throw DomainError("schedule was built for sequence " + sched.seq_id + ", not " + seq.id());
    LevelResult r = select_next_cutoff(spec, seq, sched.cutoffs, sched.horizon_factor, opts.n_cap,
                                       opts.max_bits, opts.parallel);
    sched.cutoffs.push_back(r.cutoff);
    sched.verified_to.push_back(r.verified_to);
}

bool verify_schedule(const GlsSpec& spec, const PointSeq& seq, const CutoffSchedule& sched,
                     std::string* diagnostic, bool parallel) {
    sched.check();
    for (std::size_t lev = 1; lev < sched.cutoffs.size(); ++lev) {
        Rat theta(1, static_cast<long>(lev));
        std::vector<RowScan> rows;
        for (std::size_t i = 0; i < lev; ++i)
            rows.emplace_back(i, sched.cutoffs[i] + 1, theta, seq.exact());
        const std::uint64_t from = sched.cutoffs[lev];
        const std::uint64_t to = sched.verified_to[lev];
        std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
        for (long long i = 0; i < static_cast<long long>(rows.size()); ++i) {
            try {
                rows[static_cast<std::size_t>(i)].scan_to(spec, seq, to, from, 4096);
            } catch (...) {
#pragma omp critical
                if (!err) err = std::current_exception();
            }
        }
        if (err) std::rethrow_exception(err);
        for (const RowScan& r : rows) {
            if (r.last_bad != 0) {
                if (diagnostic) {
                    std::ostringstream os;
                    os << "level " << lev << " row " << r.row << ": discrepancy >= 1/" << lev
                       << " at n=" << r.last_bad;
                    *diagnostic = os.str();
                }
                return false;
            }
        }
    }
    return true;
}

DigitStream::DigitStream(GlsSpec spec, PointSeq seq, CutoffSchedule sched, StreamOptions opts)
    : spec_(std::move(spec)), seq_(std::move(seq)), sched_(std::move(sched)), opts_(opts) {
    sched_.check();
    if (!sched_.spec_id.empty() && sched_.spec_id != spec_.name())
        throw DomainError("schedule was built for spec " + sched_.spec_id + ", not " +
                          spec_.name());
    if (!sched_.seq_id.empty() && sched_.seq_id != seq_.id())
        throw DomainError("schedule was built for sequence " + sched_.seq_id + ", not " +
                          seq_.id());
}

bool DigitStream::fill_column() {
    while (true) {
        std::uint64_t j = j_ + 1;
        if (sched_.cutoffs.empty() || j > sched_.cutoffs.back()) {
            if (!opts_.extendable)
                return false;
            CutoffSearchOptions ext;
            ext.horizon_factor = sched_.horizon_factor;
            ext.n_cap = opts_.n_cap;
            ext.max_bits = opts_.max_bits;
            ext.parallel = opts_.parallel;
            extend_schedule(sched_, spec_, seq_, ext);
        }
        j_ = j;
        std::uint64_t l = l_of(sched_, j_);
        Expansion e = expand_seq_point(spec_, seq_, j_, l, opts_.max_bits);
        ++stats_.columns_consumed;
        if (e.digits.size() < l) {
            ++stats_.short_columns;
            if (opts_.policy == ShortColumnPolicy::skip_column) {
                stats_.digits_dropped += l;
                continue;
            }
            stats_.digits_dropped += l - e.digits.size();
            if (e.digits.empty())
                continue;
        }
        col_ = std::move(e.digits);
        pos_ = 0;
        return true;
    }
}

std::optional<std::int64_t> DigitStream::next() {
    if (pos_ >= col_.size() && !fill_column())
        return std::nullopt;
    std::int64_t d = col_[pos_];
    last_ = {pos_, j_};
    ++pos_;
    ++stats_.digits_emitted;
    return d;
}

std::vector<std::int64_t> z_digits(const GlsSpec& spec, const PointSeq& seq,
                                   const CutoffSchedule& sched, std::uint64_t count,
                                   ShortColumnPolicy policy) {
    StreamOptions opts;
    opts.policy = policy;
    opts.extendable = false;
    DigitStream stream(spec, seq, sched, opts);
    std::vector<std::int64_t> out;
    out.reserve(count);
    while (out.size() < count) {
        auto d = stream.next();
        if (!d)
            throw ScheduleExhausted("schedule covers only " +
                                    std::to_string(stream.stats().digits_emitted) + " of " +
                                    std::to_string(count) + " requested digits");
        out.push_back(*d);
    }
    return out;
}

} // namespace gls
