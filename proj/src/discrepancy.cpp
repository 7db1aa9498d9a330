#include "gls/discrepancy.hpp"

#include <algorithm>
#include <limits>

#include "gls/errors.hpp"

namespace gls {

namespace {

// Shared evaluation core over sorted distinct (value, count) endpoints.
// With A(e) = #{x <= e}, B(e) = #{x < e}, u(e) = A(e) - n*e and
// v(e) = B(e) - n*e, the maximum deviation over candidate intervals is
//   n*D = max( max_{a<b} u(b) - v(a),  max_{a<b} u(a) - v(b) ),
// since closing both endpoints maximizes the count of an overfilled
// interval and opening both minimizes it for an underfilled one.
Rat eval_endpoints(const std::vector<std::pair<Rat, std::uint64_t>>& vals, std::uint64_t n) {
    Rat best;                    // pair (0,1) always yields 0
    bool have_prev = false;
    Rat min_v, max_u;
    std::uint64_t acc = 0;
    Rat rn(static_cast<long long>(n));

    auto visit = [&](const Rat& e, std::uint64_t cnt) {
        Rat ne = rn * e;
        Rat v = Rat(static_cast<long long>(acc)) - ne;
        acc += cnt;
        Rat u = Rat(static_cast<long long>(acc)) - ne;
        if (have_prev) {
            Rat plus = u - min_v;
            if (plus > best) best = std::move(plus);
            Rat minus = max_u - v;
            if (minus > best) best = std::move(minus);
            if (v < min_v) min_v = std::move(v);
            if (u > max_u) max_u = std::move(u);
        } else {
            min_v = std::move(v);
            max_u = std::move(u);
            have_prev = true;
        }
    };

    if (vals.empty() || vals.front().first != Rat(0))
        visit(Rat(0), 0);
    for (const auto& [e, c] : vals)
        visit(e, c);
    if (vals.empty() || vals.back().first != Rat(1))
        visit(Rat(1), 0);

    return best / rn;
}

std::vector<std::pair<Rat, std::uint64_t>> compress(std::vector<Rat> pts) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::pair<Rat, std::uint64_t>> vals;
    for (auto& p : pts) {
        if (!vals.empty() && vals.back().first == p)
            ++vals.back().second;
        else
            vals.emplace_back(std::move(p), 1);
    }
    return vals;
}

void check_unit_range(const std::vector<Rat>& pts) {
    for (const Rat& p : pts)
        if (p.sign() < 0 || p > Rat(1))
            throw DomainError("point outside [0,1]: " + p.str());
}

} // namespace

Rat extreme_discrepancy(const PointSet& ps) {
    if (ps.points.empty())
        throw DomainError("discrepancy of an empty point set");
    check_unit_range(ps.points);
    return eval_endpoints(compress(ps.points), ps.n());
}

Rat brute_force_discrepancy(const PointSet& ps, std::size_t cap) {
    if (ps.points.empty())
        throw DomainError("discrepancy of an empty point set");
    if (ps.points.size() > cap)
        throw ResourceCapError("brute-force discrepancy limited to " + std::to_string(cap) +
                               " points, got " + std::to_string(ps.points.size()));
    check_unit_range(ps.points);

    auto vals = compress(ps.points);
    std::vector<Rat> E;
    std::vector<std::uint64_t> A, B; // counts <= e and < e
    std::uint64_t acc = 0;
    auto add = [&](const Rat& e, std::uint64_t c) {
        E.push_back(e);
        B.push_back(acc);
        acc += c;
        A.push_back(acc);
    };
    if (vals.empty() || vals.front().first != Rat(0))
        add(Rat(0), 0);
    for (const auto& [e, c] : vals)
        add(e, c);
    if (E.back() != Rat(1))
        add(Rat(1), 0);

    std::uint64_t n = ps.n();
    Rat rn(static_cast<long long>(n));
    Rat best;
    for (std::size_t i = 0; i + 1 < E.size(); ++i) {
        for (std::size_t j = i + 1; j < E.size(); ++j) {
            Rat nlen = rn * (E[j] - E[i]);
            // closed-closed, closed-open, open-closed, open-open
            const std::uint64_t counts[4] = {A[j] - B[i], B[j] - B[i], A[j] - A[i], B[j] - A[i]};
            for (std::uint64_t c : counts) {
                Rat dev = abs(Rat(static_cast<long long>(c)) - nlen);
                if (dev > best) best = std::move(dev);
            }
        }
    }
    return best / rn;
}

namespace {

std::vector<std::pair<std::uint64_t, Rat>>
prefix_impl(const PointSeq& seq, std::uint64_t n_max, std::uint64_t stride, bool parallel) {
    if (n_max < 1)
        throw DomainError("n_max must be >= 1");
    if (stride < 1)
        throw DomainError("stride must be >= 1");
    if (!seq.exact())
        throw DomainError("prefix discrepancies require an exact sequence; " + seq.id() +
                          " is approximate");

    std::vector<Rat> pts;
    pts.reserve(n_max);
    for (std::uint64_t j = 1; j <= n_max; ++j)
        pts.push_back(seq.at(j).value());

    std::uint64_t rows = (n_max + stride - 1) / stride;
    std::vector<std::pair<std::uint64_t, Rat>> out(rows);

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long long k = 0; k < static_cast<long long>(rows); ++k) {
        std::uint64_t n = std::min((static_cast<std::uint64_t>(k) + 1) * stride, n_max);
        std::vector<Rat> prefix(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(n));
        out[static_cast<std::size_t>(k)] = {n, eval_endpoints(compress(std::move(prefix)), n)};
    }
    return out;
}

} // namespace

std::vector<std::pair<std::uint64_t, Rat>>
prefix_discrepancies(const PointSeq& seq, std::uint64_t n_max, std::uint64_t stride,
                     bool parallel) {
    return prefix_impl(seq, n_max, stride, parallel);
}

std::vector<std::pair<std::uint64_t, Rat>>
prefix_discrepancies_serial(const PointSeq& seq, std::uint64_t n_max, std::uint64_t stride) {
    return prefix_impl(seq, n_max, stride, false);
}

DiscBounds certified_discrepancy(std::span<const UnitReal> points) {
    if (points.empty())
        throw DomainError("discrepancy of an empty point set");
    std::vector<Rat> mids;
    mids.reserve(points.size());
    Rat rmax;
    for (const UnitReal& p : points) {
        mids.push_back(p.value());
        if (p.radius() > rmax) rmax = p.radius();
    }
    auto vals = compress(std::move(mids));
    std::uint64_t n = points.size();
    std::uint64_t mult = 0;
    for (const auto& [e, c] : vals) mult = std::max(mult, c);
    Rat d = eval_endpoints(vals, n);
    Rat d_sup = std::max(d, Rat(static_cast<long long>(mult)) / Rat(static_cast<long long>(n)));
    Rat slack = Rat(2) * rmax;
    Rat lo = d_sup - slack;
    if (lo.sign() < 0) lo = Rat(0);
    return {lo, d_sup + slack};
}

void IncrementalDiscrepancy::insert(const Rat& x) {
    if (x.sign() < 0 || x > Rat(1))
        throw DomainError("point outside [0,1]: " + x.str());
    std::uint64_t c = ++hist_[x];
    ++n_;
    max_mult_ = std::max(max_mult_, c);
}

IncrementalDiscrepancy::Eval IncrementalDiscrepancy::evaluate() const {
    if (n_ == 0)
        throw DomainError("discrepancy of an empty point set");
    std::vector<std::pair<Rat, std::uint64_t>> vals;
    vals.reserve(hist_.size());
    for (const auto& [e, c] : hist_)
        vals.emplace_back(e, c);
    Rat d = eval_endpoints(vals, n_);
    Rat d_sup =
        std::max(d, Rat(static_cast<long long>(max_mult_)) / Rat(static_cast<long long>(n_)));
    return {std::move(d), std::move(d_sup)};
}

ThresholdScanner::ThresholdScanner(Rat theta, bool exact_mode)
    : theta_(std::move(theta)), exact_mode_(exact_mode) {
    if (theta_.sign() <= 0)
        throw DomainError("threshold must be positive");
}

bool ThresholdScanner::feed_and_check(const std::optional<UnitReal>& x) {
    if (x) {
        if (exact_mode_ && !x->exact())
            throw DomainError("approximate point fed to an exact threshold scan");
        inc_.insert(x->value());
        if (x->radius() > max_radius_) max_radius_ = x->radius();
    }
    std::uint64_t n = inc_.size();
    if (n == 0 || n <= clean_until_)
        return false;

    auto ev = inc_.evaluate();
    ++evals_;
    last_d_ = ev.d;
    Rat slack = exact_mode_ ? Rat(0) : Rat(2) * max_radius_;
    Rat checked = exact_mode_ ? ev.d : ev.d_sup + slack;
    if (checked >= theta_)
        return true;

    // certificate margin from the supremum bound
    Rat cert = ev.d_sup + slack;
    if (cert >= theta_) {
        clean_until_ = n; // no skip, but the exact check passed
        return false;
    }
    if (theta_ >= Rat(1)) {
        clean_until_ = std::numeric_limits<std::uint64_t>::max();
        return false;
    }
    Rat q = Rat(static_cast<long long>(n)) * (theta_ - cert) / (Rat(1) - theta_);
    mpz_class m = q.is_integer() ? q.num() - 1 : q.floor();
    std::uint64_t skip = 0;
    if (m > 0)
        skip = mpz_class(m).fits_ulong_p() ? static_cast<std::uint64_t>(m.get_ui())
                                           : std::numeric_limits<std::uint64_t>::max() / 2;
    clean_until_ = n + skip;
    return false;
}

} // namespace gls
