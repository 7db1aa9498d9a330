#pragma once

#include "gls/rat.hpp"

namespace gls {

/// A point of [0,1]: either an exact rational (radius 0) or a certified
/// enclosure value ± radius. The true point always lies in [lo(), hi()].
class UnitReal {
public:
    UnitReal() = default;

    UnitReal(Rat value) : value_(std::move(value)) { // NOLINT: implicit by design
        if (value_.sign() < 0 || value_ > Rat(1))
            throw DomainError("exact unit value outside [0,1]: " + value_.str());
    }

    UnitReal(Rat value, Rat radius) : value_(std::move(value)), radius_(std::move(radius)) {
        if (radius_.sign() < 0)
            throw DomainError("negative radius");
        if (value_.sign() < 0 || value_ > Rat(1))
            throw DomainError("unit value outside [0,1]: " + value_.str());
    }

    bool exact() const { return radius_.is_zero(); }
    const Rat& value() const { return value_; }
    const Rat& radius() const { return radius_; }

    Rat lo() const { return value_ - radius_; }
    Rat hi() const { return value_ + radius_; }

private:
    Rat value_;
    Rat radius_;
};

} // namespace gls
