#pragma once

#include <cstdint>
#include <vector>

#include "gls/gls_spec.hpp"
#include "gls/rat.hpp"

namespace gls {

/// Classification of a rational's expansion: either finite (the orbit
/// reaches a terminal point) or eventually periodic, with the minimal
/// period.
struct ExpansionClass {
    enum class Kind { finite, eventually_periodic };

    Kind kind = Kind::finite;
    std::vector<std::int64_t> digits;    // finite case: the whole expansion
    std::vector<std::int64_t> preperiod; // periodic case
    std::vector<std::int64_t> period;    // periodic case, minimal

    bool finite() const { return kind == Kind::finite; }

    /// First `count` digits reproduced from the classification (fewer for
    /// a finite expansion shorter than count).
    std::vector<std::int64_t> replay(std::size_t count) const;
};

/// Exact orbit iteration with cycle detection. Rationals under the builtin
/// families keep their denominator (integer branch slopes), so the orbit
/// state space is finite; general tables may grow denominators, which the
/// step cap turns into an error instead of an endless search.
ExpansionClass classify(const GlsSpec& spec, const Rat& x, std::uint64_t max_steps = 4'000'000);

struct SurveyRow {
    Rat fraction;
    ExpansionClass cls;
};

struct Survey {
    std::int64_t base = 0;
    std::uint32_t k_max = 0;
    std::vector<SurveyRow> rows; // ordered by (k, numerator)
    std::uint64_t finite_count = 0;
    std::uint64_t periodic_count = 0;
    std::uint64_t max_finite_length = 0;
    std::vector<Rat> periodic_exceptions;
};

/// Classifies every fraction a/base^k with 1 <= a < base^k for k <= k_max,
/// deduplicated by canonical form. include_all_numerators chooses the
/// enumeration route (all numerators with reducible ones skipped, vs.
/// coprime numerators directly); the resulting set is identical.
Survey survey_family(const GlsSpec& spec, std::int64_t base, std::uint32_t k_max,
                     bool include_all_numerators = true, std::uint64_t cap = 1'000'000,
                     bool parallel = true);

} // namespace gls
