#include "cantorqc/errors.hpp"
#include "cantorqc/gap_sequence.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cantorqc;

TEST_CASE("constant sequence values and bounds") {
    auto s = GapSequence::constant(1.0 / 3);
    CHECK(s.at(1) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(s.at(1000) == s.at(1));
    CHECK(*s.lower_bound() == doctest::Approx(1.0 / 3));
    CHECK(*s.upper_bound() == doctest::Approx(2.0 / 3));
    CHECK_THROWS_AS(GapSequence::constant(0.0), invalid_sequence_error);
    CHECK_THROWS_AS(GapSequence::constant(1.0), invalid_sequence_error);
}

TEST_CASE("geometric and shifted geometric") {
    auto g = GapSequence::geometric(0.5);
    CHECK(g.at(3) == doctest::Approx(0.125));
    CHECK_FALSE(g.lower_bound().has_value());
    auto gl = GapSequence::shifted_geometric(0.5, 3);
    CHECK(gl.at(1) == doctest::Approx(std::pow(0.5, 4)));
    CHECK(gl.at(2) == doctest::Approx(std::pow(0.5, 5)));
}

TEST_CASE("approach-one closed forms survive double rounding") {
    auto s = GapSequence::approach_one(2.0);
    CHECK(s.at(10) == doctest::Approx(1.0 - std::ldexp(1.0, -10)));
    // 1 - 2^-n rounds to 1.0 in double for n >= 54; at() must refuse while
    // the closed forms keep going.
    CHECK_THROWS_AS(s.at(60), invalid_sequence_error);
    CHECK(s.one_minus(100) == std::ldexp(1.0, -100));
    CHECK(s.log_one_minus(100) == doctest::Approx(-100.0 * std::log(2.0)));
    CHECK(*s.lower_bound() == doctest::Approx(0.5));
}

TEST_CASE("double exponential closed forms") {
    auto s = GapSequence::double_exponential();
    CHECK(s.at(2) == doctest::Approx(1.0 - std::pow(2.0, -4.0)));
    CHECK(s.log_one_minus(20) ==
          doctest::Approx(-std::ldexp(1.0, 20) * std::log(2.0)));
    CHECK(*s.lower_bound() == doctest::Approx(0.75));
}

TEST_CASE("plus inverse square stays in (0,1)") {
    auto s = GapSequence::plus_inverse_square(1.0 / 3);
    CHECK(s.at(1) == doctest::Approx(1.0 / 3 + 0.25));
    CHECK(s.at(10) == doctest::Approx(1.0 / 3 + 1.0 / 121.0));
    CHECK(*s.lower_bound() == doctest::Approx(1.0 / 3));
}

TEST_CASE("explicit list exhaustion and declared bounds") {
    auto s = GapSequence::explicit_list({0.2, 0.4, 0.3});
    CHECK(s.at(2) == doctest::Approx(0.4));
    CHECK_THROWS_AS(s.at(4), invalid_sequence_error);
    CHECK(*s.lower_bound() == doctest::Approx(0.2));
    s.set_declared_delta(0.25);
    CHECK_THROWS_AS(s.at(1), invalid_sequence_error);
}

TEST_CASE("seeded uniform is deterministic and in range") {
    auto a = GapSequence::seeded_uniform(0.2, 0.8, 12345);
    auto b = GapSequence::seeded_uniform(0.2, 0.8, 12345);
    auto c = GapSequence::seeded_uniform(0.2, 0.8, 54321);
    bool differs = false;
    for (int n = 1; n <= 200; ++n) {
        CHECK(a.at(n) == b.at(n));
        CHECK(a.at(n) >= 0.2);
        CHECK(a.at(n) <= 0.8);
        differs |= a.at(n) != c.at(n);
    }
    CHECK(differs);
    CHECK(*a.lower_bound() == doctest::Approx(0.2));
}

TEST_CASE("distance matches the paper example") {
    auto a = GapSequence::constant(1.0 / 3);
    auto b = GapSequence::constant(0.5);
    auto d = sequence_distance(a, b, 50);
    // max{|log((1/2)/(2/3))|, 1/6} = log(4/3)
    CHECK(d.value == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
    CHECK(d.flag == DistanceFlag::Exact);
    CHECK(sequence_distance(a, a, 50).value == 0.0);
}

TEST_CASE("distance brute-force oracle, symmetry, triangle") {
    const int horizon = 64;
    auto brute = [&](const GapSequence& a, const GapSequence& b) {
        double sup = 0.0;
        for (int n = 1; n <= horizon; ++n) {
            double t1 = std::fabs(b.log_one_minus(n) - a.log_one_minus(n));
            double t2 = std::fabs(b.at(n) - a.at(n));
            sup = std::max(sup, std::max(t1, t2));
        }
        return sup;
    };
    std::vector<GapSequence> seqs;
    for (std::uint64_t s = 1; s <= 6; ++s)
        seqs.push_back(GapSequence::seeded_uniform(0.1, 0.9, s));
    for (const auto& a : seqs)
        for (const auto& b : seqs) {
            double d = sequence_distance(a, b, horizon).value;
            CHECK(d == doctest::Approx(brute(a, b)).epsilon(1e-14));
            CHECK(d ==
                  doctest::Approx(sequence_distance(b, a, horizon).value));
        }
    for (const auto& a : seqs)
        for (const auto& b : seqs)
            for (const auto& c : seqs) {
                double ab = sequence_distance(a, b, horizon).value;
                double bc = sequence_distance(b, c, horizon).value;
                double ac = sequence_distance(a, c, horizon).value;
                CHECK(ac <= ab + bc + 1e-12);
            }
}

TEST_CASE("effective delta") {
    auto a = GapSequence::constant(1.0 / 3);
    auto b = GapSequence::constant(0.5);
    CHECK(effective_delta(a, b) == doctest::Approx(1.0 / 3));
    auto g = GapSequence::geometric(0.5);
    CHECK_THROWS_AS(effective_delta(a, g), no_lower_bound_error);
}

TEST_CASE("spec grammar round trip") {
    CHECK(parse_rational("1/3") == doctest::Approx(1.0 / 3).epsilon(1e-16));
    CHECK(parse_rational("0.25") == 0.25);
    CHECK(parse_sequence_spec("const:1/3").at(7) == doctest::Approx(1.0 / 3));
    CHECK(parse_sequence_spec("geom:0.5").at(2) == doctest::Approx(0.25));
    CHECK(parse_sequence_spec("geomL:0.5:3").at(1) ==
          doctest::Approx(std::pow(0.5, 4)));
    CHECK(parse_sequence_spec("one-minus:4").at(2) ==
          doctest::Approx(1.0 - 1.0 / 16.0));
    CHECK(parse_sequence_spec("list:0.2,0.4,0.3").at(3) ==
          doctest::Approx(0.3));
    auto r = parse_sequence_spec("rand:0.2:0.8:12345");
    CHECK(r.at(5) == GapSequence::seeded_uniform(0.2, 0.8, 12345).at(5));
    CHECK(parse_sequence_spec("dblexp").at(1) == doctest::Approx(0.75));
    CHECK(parse_sequence_spec("invsq:1/3").at(1) ==
          doctest::Approx(1.0 / 3 + 0.25));
    CHECK_THROWS_AS(parse_sequence_spec("bogus:1"), invalid_sequence_error);
    for (const char* spec :
         {"const:1/3", "geom:0.5", "geomL:0.5:3", "one-minus:4",
          "list:0.2,0.4,0.3", "rand:0.2:0.8:12345", "dblexp", "invsq:1/3"}) {
        auto s = parse_sequence_spec(spec);
        auto rt = parse_sequence_spec(s.describe());
        CHECK(rt.at(1) == doctest::Approx(s.at(1)).epsilon(1e-6));
        CHECK(rt.same_generator(s));
    }
}
