#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gls/rat.hpp"
#include "gls/sequences.hpp"
#include "gls/unit_real.hpp"

namespace gls {

/// Finite multiset of exact points of [0,1].
struct PointSet {
    std::vector<Rat> points;

    std::uint64_t n() const { return points.size(); }
};

/// Extreme discrepancy: the maximum over all positive-length intervals with
/// endpoints in {0, 1} or the sample points, under every combination of
/// open/closed endpoints, of |count/n - length|. Exact rational result,
/// O(n log n).
Rat extreme_discrepancy(const PointSet& ps);

/// Independent O(n^2) oracle: enumerates every candidate interval and
/// closure combination directly. Must agree with extreme_discrepancy.
Rat brute_force_discrepancy(const PointSet& ps, std::size_t cap = 500);

/// Discrepancies of sequence prefixes at n = stride, 2*stride, ..., n_max
/// (the last row is clamped to n_max). Requires an exact sequence.
std::vector<std::pair<std::uint64_t, Rat>>
prefix_discrepancies(const PointSeq& seq, std::uint64_t n_max, std::uint64_t stride,
                     bool parallel = true);

std::vector<std::pair<std::uint64_t, Rat>>
prefix_discrepancies_serial(const PointSeq& seq, std::uint64_t n_max, std::uint64_t stride);

/// Certified enclosure of the all-interval supremum discrepancy (degenerate
/// intervals included) of a multiset of approximate points.
struct DiscBounds {
    Rat lo;
    Rat hi;
};
DiscBounds certified_discrepancy(std::span<const UnitReal> points);

/// Growing point multiset with O(distinct) exact evaluation.
class IncrementalDiscrepancy {
public:
    void insert(const Rat& x);
    std::uint64_t size() const { return n_; }
    std::uint64_t max_multiplicity() const { return max_mult_; }

    struct Eval {
        Rat d;     // candidate-interval extreme discrepancy
        Rat d_sup; // max(d, max multiplicity / n): supremum over all intervals
    };
    Eval evaluate() const;

private:
    std::map<Rat, std::uint64_t> hist_;
    std::uint64_t n_ = 0;
    std::uint64_t max_mult_ = 0;
};

/// Streams points and decides, for each prefix, whether its discrepancy is
/// below a fixed threshold. Between exact evaluations it certifies runs of
/// prefixes with the bound D_{n+m} <= (n*D_n + m)/(n+m), which holds for the
/// supremum discrepancy, so exact evaluations are only needed when the
/// certificate runs out.
class ThresholdScanner {
public:
    /// exact_mode compares the candidate-interval discrepancy against theta;
    /// otherwise the certified supremum bound (widened by point radii) is
    /// used, which can only over-report threshold violations.
    ThresholdScanner(Rat theta, bool exact_mode);

    /// Feeds one point (or a gap for a skipped point) and reports whether
    /// the current multiset violates the threshold.
    bool feed_and_check(const std::optional<UnitReal>& x);

    std::uint64_t size() const { return inc_.size(); }
    std::uint64_t exact_evaluations() const { return evals_; }
    const Rat& last_exact() const { return last_d_; }

private:
    IncrementalDiscrepancy inc_;
    Rat theta_;
    bool exact_mode_;
    Rat max_radius_;
    std::uint64_t clean_until_ = 0;
    std::uint64_t evals_ = 0;
    Rat last_d_;
};

} // namespace gls
