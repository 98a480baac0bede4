#include "cantorqc/errors.hpp"
#include "cantorqc/qc_map.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cantorqc;

TEST_CASE("annulus map endpoints, inverse and dilatation") {
    AnnulusMap m(Cpx(0.0), 1.0, std::exp(1.0), Cpx(0.0), 1.0,
                 std::exp(2.0));
    CHECK(m.stretch_ratio() == doctest::Approx(2.0));
    CHECK(m.log_dilatation() == doctest::Approx(std::log(2.0)));
    CHECK(m.dilatation() == doctest::Approx(2.0));
    // Inner boundary fixed, outer boundary onto outer boundary.
    CHECK(std::abs(m.eval(Cpx(0.0, 1.0))) == doctest::Approx(1.0));
    CHECK(std::abs(m.eval(Cpx(std::exp(1.0), 0.0))) ==
          doctest::Approx(std::exp(2.0)));
    // Argument preserved.
    Cpx z = std::polar(1.7, 0.9);
    CHECK(std::arg(m.eval(z)) == doctest::Approx(0.9));
    // Closed-form inverse: |w| = r2 (|z|/r1)^rho.
    CHECK(std::abs(m.eval(z)) == doctest::Approx(std::pow(1.7, 2.0)));
    auto inv = m.inverse();
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ur(1.0, std::exp(1.0)),
        ua(0.0, 6.28);
    for (int i = 0; i < 100; ++i) {
        Cpx p = std::polar(ur(rng), ua(rng));
        CHECK(std::abs(inv.eval(m.eval(p)) - p) < 1e-12);
    }
    CHECK_THROWS_AS(m.eval(Cpx(20.0, 0.0)), std::domain_error);
}

TEST_CASE("level map identity for equal pants") {
    auto p = normalize_pants(GapSequence::constant(0.4), 0.3, 0);
    auto m = LevelMap::build(p, p);
    CHECK(m.is_identity());
    CHECK(m.d_phi() == 0.0);
    CHECK(m.d_psi() == 0.0);
    Cpx z(0.5, 0.2);
    CHECK(m.eval(z) == z);
}

TEST_CASE("level map round trip and boundary behavior") {
    auto big = normalize_pants(GapSequence::constant(0.5), 1.0 / 3, 0);
    auto small = normalize_pants(GapSequence::constant(1.0 / 3), 1.0 / 3, 0);
    auto m = LevelMap::build(big, small);
    CHECK_FALSE(m.swapped());

    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ux(-1.4, 1.4);
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 500; ++i) {
        Cpx z(ux(rng), ux(rng));
        if (std::abs(z) > big.outer_radius) continue;
        if (std::abs(z - Cpx(big.x)) < big.r) continue;
        if (std::abs(z + Cpx(big.x)) < big.r) continue;
        ++tested;
        Cpx w = m.eval(z);
        CHECK(std::abs(m.eval_inverse(w) - z) < 1e-10);
    }
    CHECK(tested == 500);

    // Outer circle maps onto the target outer circle, children onto
    // children.
    for (int i = 0; i < 32; ++i) {
        double th = 2.0 * 3.14159265358979 * i / 32;
        Cpx z = std::polar(big.outer_radius, th);
        CHECK(std::abs(m.eval(z)) ==
              doctest::Approx(small.outer_radius).epsilon(1e-12));
        Cpx zc = Cpx(big.x) + std::polar(big.r, th);
        Cpx wc = m.eval(zc);
        CHECK(std::abs(wc - Cpx(small.x)) ==
              doctest::Approx(small.r).epsilon(1e-12));
    }
}

TEST_CASE("swapped orientation evaluates the inverse construction") {
    auto big = normalize_pants(GapSequence::constant(0.5), 1.0 / 3, 0);
    auto small = normalize_pants(GapSequence::constant(1.0 / 3), 1.0 / 3, 0);
    auto fwd = LevelMap::build(big, small);
    auto rev = LevelMap::build(small, big);
    CHECK(rev.swapped());
    CHECK(rev.d_phi() == doctest::Approx(fwd.d_phi()));
    CHECK(rev.d_psi() == doctest::Approx(fwd.d_psi()));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ux(-1.2, 1.2);
    int tested = 0;
    for (int i = 0; i < 2000 && tested < 200; ++i) {
        Cpx z(ux(rng), ux(rng));
        if (std::abs(z) > small.outer_radius) continue;
        if (std::abs(z - Cpx(small.x)) < small.r) continue;
        if (std::abs(z + Cpx(small.x)) < small.r) continue;
        ++tested;
        CHECK(std::abs(fwd.eval(rev.eval(z)) - z) < 1e-10);
    }
    CHECK(tested == 200);
}

TEST_CASE("exact sub-map dilatations match the modulus lemma ratios") {
    auto big = normalize_pants(GapSequence::constant(0.5), 1.0 / 3, 0);
    auto small = normalize_pants(GapSequence::constant(1.0 / 3), 1.0 / 3, 0);
    auto m = LevelMap::build(big, small);
    double lr = std::log(m.r()), lrh = std::log(m.r_hat()),
           lRt = std::log(m.tangent_radius());
    CHECK(m.d_phi() ==
          doctest::Approx(std::fabs(std::log((lRt - lr) / (lRt - lrh)))));
    double lxr = std::log(m.x() + m.r());
    CHECK(m.d_psi() == doctest::Approx(std::fabs(std::log(
                           (std::log(m.outer()) - lxr) /
                           (std::log(m.outer_scaled()) - lxr)))));
}

TEST_CASE("measured dilatation stays under the exact log budget") {
    auto big = normalize_pants(GapSequence::constant(0.5), 1.0 / 3, 0);
    auto small = normalize_pants(GapSequence::constant(1.0 / 3), 1.0 / 3, 0);
    auto m = LevelMap::build(big, small);
    auto stats = measure_level_dilatation(m, big.outer_radius, 48);
    CHECK(stats.samples > 500);
    CHECK(stats.max_k <= std::exp(m.d_total()) * 1.01);
    CHECK(stats.max_k >= 1.0);
}

TEST_CASE("glued map: identity outside, gluing seams, inverse composition") {
    auto a = GapSequence::constant(0.5);
    auto b = GapSequence::constant(1.0 / 3);
    double delta = 1.0 / 3;
    auto map = PiecewiseQCMap::build(a, b, delta, 4);
    auto rmap = PiecewiseQCMap::build(b, a, delta, 4);

    Cpx far(3.0, 2.0);
    CHECK(map.eval(far) == far);

    // Boundary circles evaluated from both adjacent pants agree.
    for (int k = 1; k <= 4; ++k)
        for (int i = 1; i <= (1 << k); i += std::max(1, (1 << k) / 4)) {
            const auto& c = map.source_circle(k, i);
            for (int j = 0; j < 256; ++j) {
                double th = 2.0 * 3.14159265358979 * j / 256;
                Cpx z = Cpx(c.center) + std::polar(c.radius, th);
                Cpx from_parent = map.eval_via(k - 1, (i + 1) / 2, z);
                Cpx from_child = map.eval_via(k, i, z);
                CHECK(std::abs(from_parent - from_child) < 1e-9);
            }
        }

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(-0.3, 1.3), uy(-0.8, 0.8);
    for (int i = 0; i < 500; ++i) {
        Cpx z(ux(rng), uy(rng));
        Cpx w = map.eval(z);
        CHECK(std::abs(rmap.eval(w) - z) < 1e-8);
    }
}

TEST_CASE("piece signatures differ across seams") {
    auto a = GapSequence::constant(0.5);
    auto b = GapSequence::constant(1.0 / 3);
    auto map = PiecewiseQCMap::build(a, b, 1.0 / 3, 3);
    CHECK(map.piece(Cpx(5.0, 0.0)) == 0);
    CHECK(map.piece(Cpx(0.5, 0.01)) != map.piece(Cpx(5.0, 0.0)));
}
