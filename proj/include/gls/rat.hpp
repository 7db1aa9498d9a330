#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "gls/errors.hpp"

namespace gls {

/// Exact rational number, always kept canonical: denominator > 0 and
/// gcd(|numerator|, denominator) = 1.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(int n) : q_(n) {}
    Rat(long n) : q_(n) {}
    Rat(long long n);
    Rat(unsigned long long n);
    Rat(long num, long den);
    Rat(const mpz_class& num, const mpz_class& den);
    explicit Rat(mpq_class q);

    /// 2^e for any integer e (negative exponents give unit fractions).
    static Rat pow2(long e);

    /// Parses "p", "-p", "p/q". Returns nullopt on malformed input.
    static std::optional<Rat> parse(std::string_view s);

    const mpz_class& num() const { return q_.get_num(); }
    const mpz_class& den() const { return q_.get_den(); }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sign() == 0; }

    mpz_class floor() const;
    mpz_class ceil() const;

    double to_double() const { return q_.get_d(); }

    /// "p/q", or just "p" for integers.
    std::string str() const;

    /// Decimal rendering truncated toward zero to `digits` fractional digits.
    std::string decimal(std::size_t digits) const;

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
    friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
    friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
    friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }
    friend Rat operator-(Rat a) { a.q_ = -a.q_; return a; }

    friend bool operator==(const Rat& a, const Rat& b) {
        return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
    }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
        return c <=> 0;
    }

    friend Rat abs(Rat a) { a.q_ = ::abs(a.q_); return a; }

    std::size_t hash() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

struct RatHash {
    std::size_t operator()(const Rat& r) const { return r.hash(); }
};

} // namespace gls

template <>
struct std::hash<gls::Rat> {
    std::size_t operator()(const gls::Rat& r) const { return r.hash(); }
};
