#include "gls/sequences.hpp"

#include <cmath>

namespace gls {

PointSeq PointSeq::van_der_corput(std::int64_t base) {
    if (base < 2)
        throw DomainError("van der Corput base must be >= 2, got " + std::to_string(base));
    PointSeq s;
    s.kind_ = Kind::vdc;
    s.base_ = base;
    s.id_ = "vdc:" + std::to_string(base);
    return s;
}

PointSeq PointSeq::farey() {
    PointSeq s;
    s.kind_ = Kind::farey;
    s.id_ = "farey";
    return s;
}

PointSeq PointSeq::kronecker_sqrt(std::int64_t m) {
    if (m < 1)
        throw DomainError("sqrt argument must be positive");
    mpz_class z(static_cast<long>(m));
    if (mpz_perfect_square_p(z.get_mpz_t()))
        throw DomainError("sqrt(" + std::to_string(m) + ") is rational; kronecker sequences " +
                          "require an irrational constant");
    PointSeq s;
    s.kind_ = Kind::kronecker;
    s.beta_ = Beta::sqrt_m;
    s.base_ = m;
    s.id_ = "kronecker:sqrt:" + std::to_string(m);
    return s;
}

PointSeq PointSeq::kronecker_golden() {
    PointSeq s;
    s.kind_ = Kind::kronecker;
    s.beta_ = Beta::golden;
    s.id_ = "kronecker:golden";
    return s;
}

PointSeq PointSeq::kronecker_oracle(std::string name, std::function<Rat(unsigned long)> oracle) {
    if (!oracle)
        throw DomainError("precision oracle must be callable");
    PointSeq s;
    s.kind_ = Kind::kronecker;
    s.beta_ = Beta::oracle;
    s.oracle_ = std::move(oracle);
    s.id_ = "kronecker:" + name;
    return s;
}

PointSeq PointSeq::custom_list(std::vector<Rat> points, std::string label) {
    for (const Rat& p : points)
        if (p.sign() < 0 || p > Rat(1))
            throw DomainError("custom list point outside [0,1]: " + p.str());
    PointSeq s;
    s.kind_ = Kind::custom;
    s.list_ = std::move(points);
    s.id_ = "list:" + label;
    return s;
}

std::optional<std::uint64_t> PointSeq::size() const {
    if (kind_ != Kind::custom)
        return std::nullopt;
    std::uint64_t skip = offset_ - 1;
    return list_.size() > skip ? list_.size() - skip : 0;
}

Rat PointSeq::beta_approx(unsigned long bits) const {
    // floor representations: 0 <= beta - approx < 2^-bits
    if (beta_ == Beta::oracle)
        return oracle_(bits);
    if (beta_ == Beta::sqrt_m) {
        mpz_class t(static_cast<long>(base_));
        t <<= 2 * bits;
        mpz_class s;
        mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
        mpz_class den = 1;
        den <<= bits;
        return Rat(s, den);
    }
    mpz_class t(5);
    t <<= 2 * bits;
    mpz_class s;
    mpz_sqrt(s.get_mpz_t(), t.get_mpz_t());
    mpz_class num = 1;
    num <<= bits;
    num += s;
    mpz_class den = 1;
    den <<= bits + 1;
    return Rat(num, den);
}

UnitReal PointSeq::at(std::uint64_t j) const {
    if (kind_ == Kind::kronecker)
        return at(j, Rat::pow2(-64));
    return at(j, Rat(0));
}

UnitReal PointSeq::at(std::uint64_t j, const Rat& radius) const {
    if (j < 1)
        throw DomainError("sequence indices start at 1");
    std::uint64_t jj = offset_ + j - 1;
    switch (kind_) {
    case Kind::vdc: {
        mpz_class num = 0, den = 1;
        for (std::uint64_t t = jj; t > 0; t /= static_cast<std::uint64_t>(base_)) {
            num = num * base_ + static_cast<long>(t % static_cast<std::uint64_t>(base_));
            den *= base_;
        }
        return UnitReal(Rat(num, den));
    }
    case Kind::farey: {
        // smallest q with q(q-1)/2 >= jj, then numerator jj - (q-1)(q-2)/2
        auto tri = [](std::uint64_t q) { return q * (q - 1) / 2; };
        std::uint64_t q =
            static_cast<std::uint64_t>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(jj))) / 2.0);
        if (q < 2) q = 2;
        while (tri(q) < jj) ++q;
        while (q > 2 && tri(q - 1) >= jj) --q;
        std::uint64_t a = jj - tri(q - 1);
        return UnitReal(Rat(static_cast<unsigned long long>(a)) /
                        Rat(static_cast<unsigned long long>(q)));
    }
    case Kind::custom: {
        if (jj > list_.size())
            throw DomainError("custom list has " + std::to_string(list_.size()) +
                              " points; index " + std::to_string(jj) + " requested");
        return UnitReal(list_[jj - 1]);
    }
    case Kind::kronecker:
        break;
    }

    if (radius.sign() <= 0)
        throw DomainError("approximate sequence requires a positive radius");
    // pick bits with jj * 2^-bits <= radius, then refine past integers
    unsigned long bits = 8;
    Rat jr((unsigned long long)jj);
    while (jr * Rat::pow2(-static_cast<long>(bits)) > radius)
        bits += 32;
    for (; bits <= (1u << 22); bits += 64) {
        Rat err = jr * Rat::pow2(-static_cast<long>(bits));
        if (err > radius)
            continue;
        Rat v = jr * beta_approx(bits);
        Rat f = v - Rat(v.floor(), mpz_class(1));
        if ((f - err).sign() > 0 && f + err < Rat(1))
            return UnitReal(f, err);
    }
    throw ResourceCapError("kronecker point did not separate from an integer at 2^22 bits");
}

PointSeq PointSeq::shifted(std::uint64_t k) const {
    if (k < 1)
        throw DomainError("shift index must be >= 1");
    PointSeq s = *this;
    s.offset_ = offset_ + k - 1;
    if (k > 1)
        s.id_ = id_ + "@" + std::to_string(s.offset_);
    return s;
}

std::optional<UnitReal> orbit_point(const GlsSpec& spec, const PointSeq& seq, std::uint64_t j,
                                    std::uint64_t depth, unsigned long max_bits) {
    if (seq.exact()) {
        UnitReal x = seq.at(j);
        for (std::uint64_t i = 0; i < depth; ++i) {
            DigitResult r = try_digit(spec, x);
            if (r.status == DigitResult::Status::terminal)
                return std::nullopt;
            x = step(spec, x);
        }
        return x;
    }
    for (unsigned long bits = 64; bits <= max_bits; bits *= 2) {
        UnitReal x = seq.at(j, Rat::pow2(-static_cast<long>(bits)));
        bool ambiguous = false;
        for (std::uint64_t i = 0; i < depth && !ambiguous; ++i) {
            DigitResult r = try_digit(spec, x);
            switch (r.status) {
            case DigitResult::Status::terminal:
                return std::nullopt;
            case DigitResult::Status::ambiguous:
                ambiguous = true;
                break;
            case DigitResult::Status::ok:
                x = step(spec, x);
                break;
            }
        }
        if (!ambiguous)
            return x;
    }
    throw ResourceCapError("precision cap reached while iterating sequence element " +
                           std::to_string(j));
}

Expansion expand_seq_point(const GlsSpec& spec, const PointSeq& seq, std::uint64_t j,
                           std::size_t count, unsigned long max_bits) {
    if (seq.exact())
        return expand(spec, seq.at(j), count);
    for (unsigned long bits = 64; bits <= max_bits; bits *= 2) {
        Expansion e = expand(spec, seq.at(j, Rat::pow2(-static_cast<long>(bits))), count);
        if (!e.precision_exhausted)
            return e;
    }
    throw ResourceCapError("precision cap reached while expanding sequence element " +
                           std::to_string(j));
}

} // namespace gls
