#include "doctest.h"

#include "gls/rational_lueroth.hpp"
#include "test_util.hpp"

using gls::ExpansionClass;
using gls::GlsSpec;
using gls::Rat;

TEST_CASE("classify worked examples") {
    GlsSpec lu = GlsSpec::lueroth_classic();

    SUBCASE("2/9 is finite with digits 4,2,1,2") {
        auto c = gls::classify(lu, Rat(2, 9));
        CHECK(c.finite());
        CHECK(c.digits == std::vector<std::int64_t>{4, 2, 1, 2});
    }

    SUBCASE("2/5 is purely periodic with period (2)") {
        auto c = gls::classify(lu, Rat(2, 5));
        CHECK(!c.finite());
        CHECK(c.preperiod.empty());
        CHECK(c.period == std::vector<std::int64_t>{2});
    }

    SUBCASE("1/2 is finite with a single digit") {
        auto c = gls::classify(lu, Rat(1, 2));
        CHECK(c.finite());
        CHECK(c.digits == std::vector<std::int64_t>{1});
    }

    SUBCASE("b-adic rationals are eventually periodic") {
        GlsSpec bin = GlsSpec::b_adic(2);
        auto third = gls::classify(bin, Rat(1, 3));
        CHECK(!third.finite());
        CHECK(third.preperiod.empty());
        CHECK(third.period == std::vector<std::int64_t>{1, 2});

        // 1/2 -> digit 2, then the fixed point 0 repeats digit 1
        auto half = gls::classify(bin, Rat(1, 2));
        CHECK(!half.finite());
        CHECK(half.preperiod == std::vector<std::int64_t>{2});
        CHECK(half.period == std::vector<std::int64_t>{1});
    }

    CHECK_THROWS_AS(gls::classify(lu, Rat(3, 2)), gls::DomainError);
}

TEST_CASE("replay reproduces expand output") {
    testutil::SplitMix64 rng(0x5eedc1a5);
    GlsSpec lu = GlsSpec::lueroth_classic();
    GlsSpec alt = GlsSpec::lueroth_alternating();
    GlsSpec bin = GlsSpec::b_adic(2);
    for (int t = 0; t < 200; ++t) {
        Rat x = testutil::random_unit_rat(rng, 400);
        for (const GlsSpec& spec : {lu, alt, bin}) {
            auto cls = gls::classify(spec, x);
            std::size_t want = cls.finite()
                                   ? cls.digits.size()
                                   : cls.preperiod.size() + 3 * cls.period.size();
            auto e = gls::expand(spec, gls::UnitReal(x), want + 2);
            auto replayed = cls.replay(want + 2);
            std::vector<std::int64_t> expect(e.digits.begin(), e.digits.end());
            CHECK(replayed.size() == (cls.finite() ? cls.digits.size() : want + 2));
            CHECK(std::equal(expect.begin(), expect.end(), replayed.begin()));
            if (cls.finite())
                CHECK(e.terminated);
        }
    }
}

TEST_CASE("orbit denominators never grow under the builtin families") {
    GlsSpec lu = GlsSpec::lueroth_classic();
    GlsSpec bin = GlsSpec::b_adic(3);
    for (const GlsSpec& spec : {lu, bin}) {
        Rat x(17, 90);
        for (int i = 0; i < 60; ++i) {
            auto loc = spec.locate(x);
            if (loc.status != GlsSpec::Located::Status::ok)
                break;
            x = gls::step(spec, gls::UnitReal(x)).value();
            CHECK(mpz_class(90) % x.den() == 0);
        }
    }
}

TEST_CASE("reported periods are minimal") {
    testutil::SplitMix64 rng(0x5eedc1a6);
    GlsSpec lu = GlsSpec::lueroth_classic();
    for (int t = 0; t < 150; ++t) {
        Rat x = testutil::random_unit_rat(rng, 300);
        auto cls = gls::classify(lu, x);
        if (cls.finite())
            continue;
        const auto& p = cls.period;
        REQUIRE(!p.empty());
        for (std::size_t d = 1; d < p.size(); ++d) {
            if (p.size() % d != 0)
                continue;
            bool rotation_equal = true;
            for (std::size_t k = 0; k < p.size() && rotation_equal; ++k)
                rotation_equal = p[k] == p[(k + d) % p.size()];
            CHECK(!rotation_equal);
        }
    }
}

TEST_CASE("classify halts with a cap on pathological tables") {
    // slopes with non-integer factors can grow denominators without bound
    auto spec = GlsSpec::from_table({{1, Rat(0), Rat(2, 7), gls::Orientation::increasing},
                                     {2, Rat(2, 7), Rat(1), gls::Orientation::increasing}});
    REQUIRE(gls::validate(spec).ok);
    CHECK_THROWS_AS(gls::classify(spec, Rat(1, 3), 3000), gls::ResourceCapError);
}

TEST_CASE("survey of dyadic fractions") {
    GlsSpec lu = GlsSpec::lueroth_classic();

    SUBCASE("k_max = 1 is the single orbit of 1/2") {
        auto sv = gls::survey_family(lu, 2, 1);
        REQUIRE(sv.rows.size() == 1);
        CHECK(sv.rows[0].fraction == Rat(1, 2));
        CHECK(sv.rows[0].cls.finite());
        CHECK(sv.finite_count == 1);
    }

    SUBCASE("k_max = 6: every dyadic is finite") {
        auto sv = gls::survey_family(lu, 2, 6);
        CHECK(sv.rows.size() == 63); // 2^6 - 1 canonical fractions
        CHECK(sv.finite_count == 63);
        CHECK(sv.periodic_count == 0);
        CHECK(sv.periodic_exceptions.empty());
        CHECK(sv.max_finite_length > 0);
    }

    SUBCASE("triadic survey is complete and replay-correct") {
        auto sv = gls::survey_family(lu, 3, 5);
        CHECK(sv.rows.size() == 242); // 3^5 - 1
        CHECK(sv.finite_count + sv.periodic_count == sv.rows.size());
        for (const auto& row : sv.rows) {
            auto e = gls::expand(lu, gls::UnitReal(row.fraction), 12);
            auto replayed = row.cls.replay(12);
            std::vector<std::int64_t> expect(e.digits.begin(), e.digits.end());
            CHECK(std::equal(expect.begin(), expect.end(), replayed.begin()));
        }
    }

    SUBCASE("rows are ordered by (k, numerator) and deduplicated") {
        auto sv = gls::survey_family(lu, 2, 3);
        // 1/2; 1/4, 3/4; 1/8, 3/8, 5/8, 7/8
        REQUIRE(sv.rows.size() == 7);
        CHECK(sv.rows[0].fraction == Rat(1, 2));
        CHECK(sv.rows[1].fraction == Rat(1, 4));
        CHECK(sv.rows[2].fraction == Rat(3, 4));
        CHECK(sv.rows[3].fraction == Rat(1, 8));
        for (const auto& row : sv.rows)
            CHECK(row.fraction.den() % 2 == 0);
    }

    SUBCASE("enumeration routes agree") {
        auto all = gls::survey_family(lu, 3, 4, true);
        auto coprime = gls::survey_family(lu, 3, 4, false);
        REQUIRE(all.rows.size() == coprime.rows.size());
        for (std::size_t i = 0; i < all.rows.size(); ++i)
            CHECK(all.rows[i].fraction == coprime.rows[i].fraction);
    }

    SUBCASE("parallel matches serial") {
        auto par = gls::survey_family(lu, 3, 4, true, 1'000'000, true);
        auto ser = gls::survey_family(lu, 3, 4, true, 1'000'000, false);
        REQUIRE(par.rows.size() == ser.rows.size());
        for (std::size_t i = 0; i < par.rows.size(); ++i) {
            CHECK(par.rows[i].fraction == ser.rows[i].fraction);
            CHECK(par.rows[i].cls.finite() == ser.rows[i].cls.finite());
        }
        CHECK(par.max_finite_length == ser.max_finite_length);
    }

    SUBCASE("caps and argument checks") {
        CHECK_THROWS_AS(gls::survey_family(lu, 2, 25, true, 1'000'000), gls::ResourceCapError);
        CHECK_THROWS_AS(gls::survey_family(lu, 1, 3), gls::DomainError);
        CHECK_THROWS_AS(gls::survey_family(lu, 2, 0), gls::DomainError);
    }
}
