#include "gls/normality.hpp"

#include <algorithm>
#include <unordered_map>

namespace gls {

namespace {

std::pair<std::uint64_t, std::uint64_t> count_impl(std::span<const std::int64_t> digits,
                                                   const Block& block, bool parallel) {
    if (block.empty())
        throw DomainError("empty block");
    const std::uint64_t n = digits.size();
    const std::uint64_t r = block.size();
    if (n < r)
        throw DomainError("prefix of " + std::to_string(n) + " digits is shorter than block of " +
                          std::to_string(r));
    const long long starts = static_cast<long long>(n - r + 1);
    std::uint64_t occ = 0;
#pragma omp parallel for reduction(+ : occ) if (parallel)
    for (long long s = 0; s < starts; ++s) {
        bool match = true;
        for (std::uint64_t i = 0; i < r && match; ++i)
            match = digits[static_cast<std::size_t>(s) + i] == block[i];
        occ += match ? 1 : 0;
    }
    return {occ, n};
}

} // namespace

std::pair<std::uint64_t, std::uint64_t> count_block(std::span<const std::int64_t> digits,
                                                    const Block& block, bool parallel) {
    return count_impl(digits, block, parallel);
}

std::pair<std::uint64_t, std::uint64_t> count_block_serial(std::span<const std::int64_t> digits,
                                                           const Block& block) {
    return count_impl(digits, block, false);
}

Rat expected_measure(const GlsSpec& spec, const Block& block) {
    check_block(spec, block);
    Rat m(1);
    for (std::int64_t d : block)
        m *= spec.branch_of(d).length();
    return m;
}

NormalityReport normality_report(std::span<const std::int64_t> digits, const GlsSpec& spec,
                                 std::size_t max_r, std::size_t digit_cap, bool parallel,
                                 std::size_t block_cap) {
    if (max_r < 1)
        throw DomainError("max_r must be >= 1");
    if (digits.size() < max_r)
        throw DomainError("prefix of " + std::to_string(digits.size()) +
                          " digits is shorter than max_r=" + std::to_string(max_r));
    if (digit_cap < 1)
        throw DomainError("digit_cap must be >= 1");

    NormalityReport rep;
    rep.n = digits.size();
    rep.max_r = max_r;
    rep.alphabet = spec.principal_digits(digit_cap);
    for (std::int64_t d : rep.alphabet)
        rep.alphabet_mass += spec.branch_of(d).length();

    const std::size_t k = rep.alphabet.size();
    std::size_t total_blocks = 0;
    std::size_t pw = 1;
    for (std::size_t r = 1; r <= max_r; ++r) {
        if (pw > block_cap / k)
            throw ResourceCapError("block enumeration exceeds cap of " +
                                   std::to_string(block_cap));
        pw *= k;
        total_blocks += pw;
        if (total_blocks > block_cap)
            throw ResourceCapError("block enumeration exceeds cap of " +
                                   std::to_string(block_cap));
    }
    rep.rows.reserve(total_blocks);

    // digit value -> alphabet index; -1 marks digits outside the alphabet
    std::unordered_map<std::int64_t, std::size_t> aidx;
    for (std::size_t i = 0; i < k; ++i)
        aidx.emplace(rep.alphabet[i], i);
    std::vector<long> enc(digits.size());
    for (std::size_t i = 0; i < digits.size(); ++i) {
        auto it = aidx.find(digits[i]);
        enc[i] = it == aidx.end() ? -1 : static_cast<long>(it->second);
    }

    std::vector<Rat> lengths(k);
    for (std::size_t i = 0; i < k; ++i)
        lengths[i] = spec.branch_of(rep.alphabet[i]).length();

    const std::uint64_t n = digits.size();
    for (std::size_t r = 1; r <= max_r; ++r) {
        std::size_t codes = 1;
        for (std::size_t i = 0; i < r; ++i) codes *= k;
        std::vector<std::uint64_t> counts(codes, 0);
        const long long starts = static_cast<long long>(n - r + 1);

#pragma omp parallel if (parallel)
        {
            std::vector<std::uint64_t> local(codes, 0);
#pragma omp for nowait
            for (long long s = 0; s < starts; ++s) {
                std::size_t code = 0;
                bool ok = true;
                for (std::size_t i = 0; i < r && ok; ++i) {
                    long e = enc[static_cast<std::size_t>(s) + i];
                    if (e < 0)
                        ok = false;
                    else
                        code = code * k + static_cast<std::size_t>(e);
                }
                if (ok)
                    ++local[code];
            }
#pragma omp critical
            for (std::size_t c = 0; c < codes; ++c)
                counts[c] += local[c];
        }

        for (std::size_t code = 0; code < codes; ++code) {
            BlockStats st;
            st.block.resize(r);
            std::size_t c = code;
            for (std::size_t i = r; i-- > 0;) {
                st.block[i] = rep.alphabet[c % k];
                c /= k;
            }
            st.occurrences = counts[code];
            st.positions = n;
            st.empirical = Rat(static_cast<long long>(st.occurrences)) /
                           Rat(static_cast<long long>(n));
            st.expected = Rat(1);
            c = code;
            for (std::size_t i = 0; i < r; ++i) {
                st.expected *= lengths[c % k];
                c /= k;
            }
            st.deviation = abs(st.empirical - st.expected);
            rep.rows.push_back(std::move(st));
        }
    }

    std::stable_sort(rep.rows.begin(), rep.rows.end(), [](const BlockStats& a, const BlockStats& b) {
        if (a.deviation != b.deviation)
            return a.deviation > b.deviation;
        if (a.block.size() != b.block.size())
            return a.block.size() < b.block.size();
        return a.block < b.block;
    });
    return rep;
}

} // namespace gls
