#include "doctest.h"

#include "gls/gls_spec.hpp"
#include "test_util.hpp"

using gls::Block;
using gls::Branch;
using gls::GlsSpec;
using gls::Interval;
using gls::Orientation;
using gls::Rat;
using gls::UnitReal;

TEST_CASE("builtin specs") {
    GlsSpec bin = GlsSpec::b_adic(2);
    REQUIRE(bin.branches().size() == 2);
    CHECK(bin.branches()[0].digit == 1);
    CHECK(bin.branches()[0].left == Rat(0));
    CHECK(bin.branches()[0].right == Rat(1, 2));
    CHECK(bin.branches()[1].digit == 2);
    CHECK(bin.branches()[1].left == Rat(1, 2));
    CHECK(bin.branches()[1].right == Rat(1));

    GlsSpec lu = GlsSpec::lueroth_classic();
    Branch b2 = lu.branch_of(2);
    CHECK(b2.left == Rat(1, 3));
    CHECK(b2.right == Rat(1, 2));
    CHECK(b2.length() == Rat(1, 6));
    // T_2 carries the interval endpoints onto 0 and 1
    CHECK((b2.left - b2.left) / b2.length() == Rat(0));
    CHECK((b2.right - b2.left) / b2.length() == Rat(1));

    CHECK_THROWS_AS(GlsSpec::b_adic(1), gls::DomainError);
    CHECK_THROWS_AS(GlsSpec::builtin("nonsense"), gls::DomainError);
    CHECK_THROWS_AS(GlsSpec::builtin("b-adic"), gls::DomainError);
    CHECK(GlsSpec::builtin("b-adic", 10).branches().size() == 10);
    CHECK(GlsSpec::builtin("lueroth-alternating").branch_of(3).orientation ==
          Orientation::decreasing);
    CHECK_THROWS_AS(lu.branch_of(0), gls::DomainError);
    CHECK_THROWS_AS(bin.branch_of(3), gls::DomainError);
}

TEST_CASE("validation") {
    CHECK(gls::validate(GlsSpec::b_adic(2)).ok);
    CHECK(gls::validate(GlsSpec::b_adic(10)).ok);

    SUBCASE("overlap") {
        auto spec = GlsSpec::from_table(
            {{1, Rat(0), Rat(3, 5), Orientation::increasing},
             {2, Rat(1, 2), Rat(1), Orientation::increasing}});
        auto rep = gls::validate(spec);
        CHECK(!rep.ok);
        bool mentions_overlap = false;
        for (const auto& s : rep.issues)
            mentions_overlap |= s.find("overlap") != std::string::npos;
        CHECK(mentions_overlap);
    }

    SUBCASE("gap") {
        auto rep = gls::validate(GlsSpec::from_table(
            {{1, Rat(0), Rat(1, 3), Orientation::increasing},
             {2, Rat(1, 2), Rat(1), Orientation::increasing}}));
        CHECK(!rep.ok);
    }

    SUBCASE("zero-length branch rejected") {
        auto rep = gls::validate(GlsSpec::from_table(
            {{1, Rat(0), Rat(1, 2), Orientation::increasing},
             {2, Rat(1, 2), Rat(1, 2), Orientation::increasing},
             {3, Rat(1, 2), Rat(1), Orientation::increasing}}));
        CHECK(!rep.ok);
    }

    SUBCASE("duplicate digit") {
        auto rep = gls::validate(GlsSpec::from_table(
            {{1, Rat(0), Rat(1, 2), Orientation::increasing},
             {1, Rat(1, 2), Rat(1), Orientation::increasing}}));
        CHECK(!rep.ok);
    }

    SUBCASE("lueroth symbolic certificate") {
        auto rep = gls::validate(GlsSpec::lueroth_classic());
        CHECK(rep.ok);
        CHECK(!rep.notes.empty());
        CHECK(gls::validate(GlsSpec::lueroth_alternating()).ok);
    }
}

TEST_CASE("digit_of") {
    GlsSpec bin = GlsSpec::b_adic(2);
    GlsSpec lu = GlsSpec::lueroth_classic();

    CHECK(gls::digit_of(bin, UnitReal(Rat(3, 10))) == 1);
    // exact comparison 1/5 <= 2/9 < 1/4 puts 2/9 in branch 4
    CHECK(Rat(1, 5) <= Rat(2, 9));
    CHECK(Rat(2, 9) < Rat(1, 4));
    CHECK(gls::digit_of(lu, UnitReal(Rat(2, 9))) == 4);
    // half-open convention
    CHECK(gls::digit_of(bin, UnitReal(Rat(1, 2))) == 2);
    CHECK(gls::digit_of(bin, UnitReal(Rat(1))) == 2);
    CHECK(gls::digit_of(lu, UnitReal(Rat(1))) == 1);

    auto r = gls::try_digit(lu, UnitReal(Rat(0)));
    CHECK(r.status == gls::DigitResult::Status::terminal);
    CHECK_THROWS_AS(gls::digit_of(lu, UnitReal(Rat(0))), gls::DomainError);
    // 0 is covered by finite tables
    CHECK(gls::digit_of(bin, UnitReal(Rat(0))) == 1);

    SUBCASE("approximate points") {
        UnitReal inside(Rat(3, 10), Rat(1, 100));
        CHECK(gls::digit_of(bin, inside) == 1);
        UnitReal straddling(Rat(1, 2), Rat(1, 100));
        CHECK(gls::try_digit(bin, straddling).status == gls::DigitResult::Status::ambiguous);
        CHECK_THROWS_AS(gls::digit_of(bin, straddling), gls::AmbiguousPoint);
    }

    SUBCASE("uncovered point of an invalid table") {
        auto gappy = GlsSpec::from_table({{1, Rat(0), Rat(1, 3), Orientation::increasing},
                                          {2, Rat(1, 2), Rat(1), Orientation::increasing}});
        CHECK_THROWS_AS(gls::digit_of(gappy, UnitReal(Rat(2, 5))), gls::DomainError);
    }
}

TEST_CASE("step") {
    GlsSpec bin = GlsSpec::b_adic(2);
    GlsSpec lu = GlsSpec::lueroth_classic();

    CHECK(gls::step(bin, UnitReal(Rat(3, 10))).value() == Rat(3, 5));
    // T(2/9) = 4*5*(2/9) - 4
    CHECK(gls::step(lu, UnitReal(Rat(2, 9))).value() == Rat(4, 9));
    CHECK(Rat(20) * Rat(2, 9) - Rat(4) == Rat(4, 9));
    // 2/5 is the fixed point of T_2: 6*(2/5) - 2 = 2/5
    CHECK(gls::step(lu, UnitReal(Rat(2, 5))).value() == Rat(2, 5));
    CHECK(Rat(6) * Rat(2, 5) - Rat(2) == Rat(2, 5));

    // decreasing branches reverse the image
    GlsSpec alt = GlsSpec::lueroth_alternating();
    CHECK(gls::step(alt, UnitReal(Rat(2, 9))).value() == Rat(1) - Rat(4, 9));

    // exact in, exact out; approximate radius scales by the slope
    UnitReal ax(Rat(3, 10), Rat(1, 100));
    UnitReal ay = gls::step(bin, ax);
    CHECK(ay.radius() == Rat(1, 50));
    CHECK(ay.value() == Rat(3, 5));
}

TEST_CASE("expand") {
    GlsSpec bin = GlsSpec::b_adic(2);
    GlsSpec lu = GlsSpec::lueroth_classic();

    SUBCASE("doubling orbit of 1/3") {
        // oracle: exact orbit 1/3 -> 2/3 -> 1/3 -> ...
        auto e = gls::expand(bin, UnitReal(Rat(1, 3)), 4);
        CHECK(e.digits == std::vector<std::int64_t>{1, 2, 1, 2});
        CHECK(!e.terminated);
        UnitReal x(Rat(1, 3));
        for (std::int64_t expected : {1, 2, 1, 2}) {
            CHECK(gls::digit_of(bin, x) == expected);
            x = gls::step(bin, x);
        }
        CHECK(x.value() == Rat(1, 3));
    }

    SUBCASE("terminating Lueroth orbit of 2/9") {
        // oracle: exact orbit 2/9 -> 4/9 -> 2/3 -> 1/3 -> 0
        UnitReal x(Rat(2, 9));
        std::vector<Rat> orbit{Rat(2, 9), Rat(4, 9), Rat(2, 3), Rat(1, 3), Rat(0)};
        for (std::size_t i = 0; i + 1 < orbit.size(); ++i) {
            CHECK(x.value() == orbit[i]);
            x = gls::step(lu, x);
        }
        CHECK(x.value() == Rat(0));

        auto e = gls::expand(lu, UnitReal(Rat(2, 9)), 8);
        CHECK(e.digits == std::vector<std::int64_t>{4, 2, 1, 2});
        CHECK(e.terminated);
    }

    SUBCASE("zero length") {
        auto e = gls::expand(bin, UnitReal(Rat(1, 3)), 0);
        CHECK(e.digits.empty());
        CHECK(!e.terminated);
    }

    SUBCASE("precision exhaustion is reported") {
        UnitReal coarse(Rat(1, 3), Rat(1, 1000));
        auto e = gls::expand(bin, coarse, 20);
        CHECK(e.precision_exhausted);
        CHECK(e.digits.size() < 20);
        CHECK(!e.digits.empty());
    }
}

TEST_CASE("cylinder") {
    GlsSpec bin = GlsSpec::b_adic(2);
    GlsSpec lu = GlsSpec::lueroth_classic();

    Interval c1 = gls::cylinder(bin, Block{1});
    CHECK(c1.left == Rat(0));
    CHECK(c1.right == Rat(1, 2));
    CHECK(c1.left_closed);
    CHECK(!c1.right_closed);

    SUBCASE("block (2,1) against the dyadic brute-force oracle") {
        Interval c = gls::cylinder(bin, Block{2, 1});
        CHECK(c.left == Rat(1, 2));
        CHECK(c.right == Rat(3, 4));
        for (long k = 0; k <= 1024; ++k) {
            Rat x(k, 1024);
            auto e = gls::expand(bin, UnitReal(x), 2);
            bool starts = e.digits == std::vector<std::int64_t>{2, 1};
            CHECK(starts == c.contains(x));
        }
    }

    SUBCASE("lueroth (2,2): product formula vs inverse composition") {
        Interval c = gls::cylinder(lu, Block{2, 2});
        CHECK(c.length() == Rat(1, 36));
        CHECK(c.length() == lu.branch_of(2).length() * lu.branch_of(2).length());
    }

    SUBCASE("point 1 lies in the all-(right endpoint) cylinder") {
        CHECK(gls::cylinder(bin, Block{2, 2, 2}).contains(Rat(1)));
        CHECK(!gls::cylinder(bin, Block{2, 2, 1}).contains(Rat(1)));
    }

    CHECK_THROWS_AS(gls::cylinder(bin, Block{3}), gls::DomainError);
    CHECK_THROWS_AS(gls::cylinder(bin, Block{}), gls::DomainError);
}

TEST_CASE("partition exactness and measure preservation for random tables") {
    testutil::SplitMix64 rng(0x5eed0001);
    for (int t = 0; t < 25; ++t) {
        auto branches = testutil::random_partition(rng, 2 + rng.below(6));
        GlsSpec spec = GlsSpec::from_table(branches);
        auto rep = gls::validate(spec);
        REQUIRE(rep.ok);

        Rat sum;
        for (const Branch& b : spec.branches())
            sum += b.length();
        CHECK(sum == Rat(1));

        // measure preservation: the preimage of a rational interval under T,
        // computed branch by branch with the inverse affine maps, has the
        // same total length
        for (int i = 0; i < 20; ++i) {
            Rat a = testutil::random_unit_rat(rng, 400);
            Rat b = testutil::random_unit_rat(rng, 400);
            if (b < a)
                std::swap(a, b);
            Rat expected = b - a;
            Rat total;
            for (const Branch& br : spec.branches()) {
                Rat len = br.length();
                Rat lo, hi;
                if (br.orientation == Orientation::increasing) {
                    lo = br.left + len * a;
                    hi = br.left + len * b;
                } else {
                    lo = br.left + len * (Rat(1) - b);
                    hi = br.left + len * (Rat(1) - a);
                }
                // clip against the branch interval
                if (lo < br.left) lo = br.left;
                if (hi > br.right) hi = br.right;
                if (hi > lo)
                    total += hi - lo;
            }
            CHECK(total == expected);
        }
    }
}

TEST_CASE("expansion/cylinder duality on small specs") {
    testutil::SplitMix64 rng(0x5eed0002);
    GlsSpec bin = GlsSpec::b_adic(2);
    GlsSpec lu = GlsSpec::lueroth_classic();

    for (long q = 1; q <= 60; ++q) {
        for (long p = 0; p <= q; ++p) {
            Rat x(p, q);
            for (const GlsSpec& spec : {bin, lu}) {
                auto e = gls::expand(spec, UnitReal(x), 5);
                if (e.digits.size() < 5)
                    continue; // terminated early
                Block b = e.digits;
                Interval c = gls::cylinder(spec, b);
                CHECK(c.contains(x));
                // a sibling block differing in the last digit excludes x
                Block sib = b;
                sib.back() = sib.back() == 1 ? 2 : 1;
                CHECK(!gls::cylinder(spec, sib).contains(x));
            }
        }
    }
}

TEST_CASE("cylinder length is the product of branch lengths, mixed orientations") {
    testutil::SplitMix64 rng(0x5eed0003);
    for (int t = 0; t < 10; ++t) {
        auto spec = GlsSpec::from_table(testutil::random_partition(rng, 2 + rng.below(5)));
        REQUIRE(gls::validate(spec).ok);
        std::size_t digits = spec.branches().size();
        for (int i = 0; i < 30; ++i) {
            Block b;
            std::size_t r = 1 + rng.below(4);
            Rat expected(1);
            for (std::size_t k = 0; k < r; ++k) {
                std::int64_t d = static_cast<std::int64_t>(1 + rng.below(digits));
                b.push_back(d);
                expected *= spec.branch_of(d).length();
            }
            CHECK(gls::cylinder(spec, b).length() == expected);
        }
    }
    // alternating Lueroth mixes decreasing branches over an infinite family
    GlsSpec alt = GlsSpec::lueroth_alternating();
    CHECK(gls::cylinder(alt, Block{2, 3, 1}).length() ==
          Rat(1, 6) * Rat(1, 12) * Rat(1, 2));
}

TEST_CASE("step/expand consistency") {
    testutil::SplitMix64 rng(0x5eed0004);
    GlsSpec lu = GlsSpec::lueroth_classic();
    GlsSpec bin = GlsSpec::b_adic(3);
    for (int t = 0; t < 200; ++t) {
        Rat x = testutil::random_unit_rat(rng, 500);
        for (const GlsSpec& spec : {bin, lu}) {
            auto full = gls::expand(spec, UnitReal(x), 6);
            if (full.digits.empty())
                continue;
            auto tail = gls::expand(spec, gls::step(spec, UnitReal(x)), 5);
            std::vector<std::int64_t> expected(full.digits.begin() + 1, full.digits.end());
            std::vector<std::int64_t> got(tail.digits.begin(),
                                          tail.digits.begin() +
                                              std::min(tail.digits.size(), expected.size()));
            CHECK(got == expected);
        }
    }
}
