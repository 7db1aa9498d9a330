#include "gls/rational_lueroth.hpp"

#include <exception>
#include <unordered_map>

namespace gls {

std::vector<std::int64_t> ExpansionClass::replay(std::size_t count) const {
    std::vector<std::int64_t> out;
    if (kind == Kind::finite) {
        out.assign(digits.begin(), digits.begin() + std::min(count, digits.size()));
        return out;
    }
    out.reserve(count);
    for (std::size_t i = 0; i < count && i < preperiod.size(); ++i)
        out.push_back(preperiod[i]);
    for (std::size_t i = out.size(); i < count; ++i)
        out.push_back(period[(i - preperiod.size()) % period.size()]);
    return out;
}

namespace {

void minimize_period(std::vector<std::int64_t>& period) {
    const std::size_t p = period.size();
    for (std::size_t d = 1; d < p; ++d) {
        if (p % d != 0)
            continue;
        bool ok = true;
        for (std::size_t k = 0; k < p && ok; ++k)
            ok = period[k] == period[(k + d) % p];
        if (ok) {
            period.resize(d);
            return;
        }
    }
}

void shrink_preperiod(std::vector<std::int64_t>& pre, std::vector<std::int64_t>& period) {
    while (!pre.empty() && pre.back() == period.back()) {
        period.insert(period.begin(), period.back());
        period.pop_back();
        pre.pop_back();
    }
}

} // namespace

ExpansionClass classify(const GlsSpec& spec, const Rat& x, std::uint64_t max_steps) {
    if (x.sign() < 0 || x > Rat(1))
        throw DomainError("point outside [0,1]: " + x.str());

    std::unordered_map<Rat, std::uint64_t, RatHash> seen;
    std::vector<std::int64_t> digs;
    Rat state = x;
    for (std::uint64_t t = 0; t <= max_steps; ++t) {
        auto loc = spec.locate(state);
        if (loc.status == GlsSpec::Located::Status::terminal) {
            ExpansionClass c;
            c.kind = ExpansionClass::Kind::finite;
            c.digits = std::move(digs);
            return c;
        }
        if (loc.status == GlsSpec::Located::Status::uncovered)
            throw DomainError("orbit left the covered region at " + state.str());
        auto [it, fresh] = seen.emplace(state, t);
        if (!fresh) {
            std::uint64_t s = it->second;
            ExpansionClass c;
            c.kind = ExpansionClass::Kind::eventually_periodic;
            c.preperiod.assign(digs.begin(), digs.begin() + static_cast<std::ptrdiff_t>(s));
            c.period.assign(digs.begin() + static_cast<std::ptrdiff_t>(s), digs.end());
            minimize_period(c.period);
            shrink_preperiod(c.preperiod, c.period);
            return c;
        }
        Branch b = spec.branch_of(loc.digit);
        digs.push_back(loc.digit);
        Rat t1 = (state - b.left) / b.length();
        state = b.orientation == Orientation::increasing ? t1 : Rat(1) - t1;
    }
    throw ResourceCapError("orbit of " + x.str() + " exceeded " + std::to_string(max_steps) +
                           " steps without repeating");
}

Survey survey_family(const GlsSpec& spec, std::int64_t base, std::uint32_t k_max,
                     bool include_all_numerators, std::uint64_t cap, bool parallel) {
    if (base < 2)
        throw DomainError("family base must be >= 2");
    if (k_max < 1)
        throw DomainError("k_max must be >= 1");

    // canonical members of {a/base^k : k <= k_max} are exactly the
    // fractions with numerator coprime to base's radical; enumerating by
    // power and skipping reducible numerators covers each once
    std::uint64_t total = 0;
    std::uint64_t pk = 1;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        if (pk > cap / static_cast<std::uint64_t>(base))
            throw ResourceCapError("survey family larger than cap " + std::to_string(cap));
        pk *= static_cast<std::uint64_t>(base);
        total += pk - pk / static_cast<std::uint64_t>(base);
        if (total > cap)
            throw ResourceCapError("survey family larger than cap " + std::to_string(cap));
    }

    struct Item {
        std::uint64_t num;
        std::uint64_t den;
    };
    std::vector<Item> items;
    items.reserve(total);
    pk = 1;
    for (std::uint32_t k = 1; k <= k_max; ++k) {
        pk *= static_cast<std::uint64_t>(base);
        for (std::uint64_t a = 1; a < pk; ++a) {
            if (include_all_numerators) {
                Rat r(static_cast<unsigned long long>(a));
                Rat canonical = r / Rat(static_cast<unsigned long long>(pk));
                if (canonical.den() != Rat(static_cast<unsigned long long>(pk)).num())
                    continue; // reducible: already listed under a smaller k
            } else if (a % static_cast<std::uint64_t>(base) == 0) {
                continue;
            }
            items.push_back({a, pk});
        }
    }

    Survey sv;
    sv.base = base;
    sv.k_max = k_max;
    sv.rows.resize(items.size());

    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
    for (long long i = 0; i < static_cast<long long>(items.size()); ++i) {
        try {
            auto idx = static_cast<std::size_t>(i);
            Rat x = Rat(static_cast<unsigned long long>(items[idx].num)) /
                    Rat(static_cast<unsigned long long>(items[idx].den));
            sv.rows[idx] = {x, classify(spec, x)};
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    for (const SurveyRow& row : sv.rows) {
        if (row.cls.finite()) {
            ++sv.finite_count;
            sv.max_finite_length = std::max(sv.max_finite_length,
                                            static_cast<std::uint64_t>(row.cls.digits.size()));
        } else {
            ++sv.periodic_count;
            sv.periodic_exceptions.push_back(row.fraction);
        }
    }
    return sv;
}

} // namespace gls
