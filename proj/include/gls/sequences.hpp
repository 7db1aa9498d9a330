#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gls/gls_spec.hpp"
#include "gls/rat.hpp"
#include "gls/unit_real.hpp"

namespace gls {

/// A deterministic equidistributed sequence in [0,1], indexed from 1.
/// Generators are stateless: element j is a pure function of (parameters, j),
/// so concurrent indexed access needs no synchronization.
class PointSeq {
public:
    /// Radical-inverse sequence in the given base; exact rationals.
    static PointSeq van_der_corput(std::int64_t base);

    /// 1/2, 1/3, 2/3, 1/4, 2/4, 3/4, ...: denominators in increasing order,
    /// all numerators, unreduced for ordering but returned canonical.
    static PointSeq farey();

    /// (j*sqrt(m) mod 1); m must not be a perfect square.
    static PointSeq kronecker_sqrt(std::int64_t m);

    /// (j*phi mod 1) for the golden ratio phi = (1+sqrt(5))/2.
    static PointSeq kronecker_golden();

    /// (j*beta mod 1) for a user constant given by a precision oracle:
    /// oracle(bits) must satisfy 0 <= beta - oracle(bits) <= 2^-bits.
    /// The caller declares beta irrational; a rational constant would make
    /// some points sit on an integer and the refinement loop fail its cap.
    static PointSeq kronecker_oracle(std::string name,
                                     std::function<Rat(unsigned long)> oracle);

    /// Fixed list of exact points.
    static PointSeq custom_list(std::vector<Rat> points, std::string label = "list");

    const std::string& id() const { return id_; }
    bool exact() const { return kind_ != Kind::kronecker; }

    /// Number of available elements; nullopt when unbounded.
    std::optional<std::uint64_t> size() const;

    /// Element j (j >= 1). Approximate sequences use a 2^-64 default radius.
    UnitReal at(std::uint64_t j) const;

    /// Element j with |value - true point| <= radius (approximate sequences
    /// refine internally until the enclosure stays inside (0,1)).
    UnitReal at(std::uint64_t j, const Rat& radius) const;

    /// The sequence (a_k, a_{k+1}, ...); k >= 1.
    PointSeq shifted(std::uint64_t k) const;

private:
    enum class Kind { vdc, farey, kronecker, custom };
    enum class Beta { sqrt_m, golden, oracle };

    PointSeq() = default;
    Rat beta_approx(unsigned long bits) const;

    Kind kind_ = Kind::vdc;
    std::int64_t base_ = 2;     // vdc base or sqrt argument
    Beta beta_ = Beta::sqrt_m;
    std::function<Rat(unsigned long)> oracle_;
    std::vector<Rat> list_;
    std::uint64_t offset_ = 1;  // element j maps to underlying index offset_+j-1
    std::string id_;
};

/// T^depth applied to sequence element j, refining approximate points as
/// needed. nullopt when the orbit terminates before `depth` steps.
std::optional<UnitReal> orbit_point(const GlsSpec& spec, const PointSeq& seq, std::uint64_t j,
                                    std::uint64_t depth, unsigned long max_bits = 4096);

/// expand() applied to sequence element j with automatic precision
/// refinement up to max_bits. Never returns precision_exhausted; throws
/// ResourceCapError when the cap is reached instead.
Expansion expand_seq_point(const GlsSpec& spec, const PointSeq& seq, std::uint64_t j,
                           std::size_t count, unsigned long max_bits = 4096);

} // namespace gls
