#include "gls/rat.hpp"

#include <cctype>
#include <ostream>

namespace gls {

namespace {

mpz_class from_ll(long long n) {
    if (n >= std::numeric_limits<long>::min() && n <= std::numeric_limits<long>::max())
        return mpz_class(static_cast<long>(n));
    mpz_class hi(static_cast<long>(n >> 32));
    mpz_class lo(static_cast<unsigned long>(n & 0xffffffffULL));
    return (hi << 32) + lo;
}

mpz_class from_ull(unsigned long long n) {
    mpz_class hi(static_cast<unsigned long>(n >> 32));
    mpz_class lo(static_cast<unsigned long>(n & 0xffffffffULL));
    return (hi << 32) + lo;
}

} // namespace

Rat::Rat(long long n) : q_(from_ll(n)) {}

Rat::Rat(unsigned long long n) : q_(from_ull(n)) {}

Rat::Rat(long num, long den) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat::Rat(mpq_class q) : q_(std::move(q)) {
    if (q_.get_den() == 0)
        throw DomainError("rational with zero denominator");
    q_.canonicalize();
}

Rat Rat::pow2(long e) {
    mpz_class p = 1;
    if (e >= 0) {
        p <<= e;
        return Rat(p, mpz_class(1));
    }
    p <<= -e;
    return Rat(mpz_class(1), p);
}

std::optional<Rat> Rat::parse(std::string_view s) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    s = trim(s);
    if (s.empty())
        return std::nullopt;
    auto is_int = [](std::string_view v) {
        if (!v.empty() && (v.front() == '-' || v.front() == '+')) v.remove_prefix(1);
        if (v.empty()) return false;
        for (char c : v)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    std::size_t slash = s.find('/');
    std::string_view num_s = s.substr(0, slash);
    num_s = trim(num_s);
    if (!is_int(num_s))
        return std::nullopt;
    mpz_class num(std::string(num_s), 10);
    if (slash == std::string_view::npos)
        return Rat(num, mpz_class(1));
    std::string_view den_s = trim(s.substr(slash + 1));
    if (!is_int(den_s) || den_s.front() == '-')
        return std::nullopt;
    mpz_class den(std::string(den_s), 10);
    if (den == 0)
        return std::nullopt;
    return Rat(num, den);
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero())
        throw DomainError("division by zero rational");
    q_ /= o.q_;
    return *this;
}

mpz_class Rat::floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

mpz_class Rat::ceil() const {
    mpz_class r;
    mpz_cdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
}

std::string Rat::str() const {
    if (is_integer())
        return num().get_str();
    return num().get_str() + "/" + den().get_str();
}

std::string Rat::decimal(std::size_t digits) const {
    mpz_class n = ::abs(num());
    const mpz_class& d = den();
    mpz_class ipart = n / d;
    mpz_class rem = n % d;
    std::string out = sign() < 0 ? "-" : "";
    out += ipart.get_str();
    if (digits == 0)
        return out;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class frac = rem * scale / d;
    std::string fs = frac.get_str();
    out += ".";
    out += std::string(digits - fs.size(), '0');
    out += fs;
    return out;
}

std::size_t Rat::hash() const {
    auto mix = [](std::size_t h, std::size_t v) {
        return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
    };
    auto hash_mpz = [&](const mpz_class& z) {
        std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()));
        for (std::size_t i = 0, e = mpz_size(z.get_mpz_t()); i < e; ++i)
            h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
        return h;
    };
    return mix(hash_mpz(num()), hash_mpz(den()));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

} // namespace gls
