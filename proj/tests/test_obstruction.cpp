#include "cantorqc/obstruction.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cantorqc;

TEST_CASE("core length closed forms") {
    double pi = std::numbers::pi;
    CHECK(annulus_core_length(1.0, std::exp(2.0 * pi)) ==
          doctest::Approx(pi));
    CHECK(annulus_core_length(1.0, std::exp(4.0 * pi)) ==
          doctest::Approx(pi / 2.0));
    CHECK_THROWS(annulus_core_length(2.0, 1.0));
    CHECK_THROWS(annulus_core_length(1.0, 1.0));
    // Thin annulus diverges.
    CHECK(annulus_core_length(1.0, 1.0 + 1e-12) > 1e10);
}

TEST_CASE("core length against hyperbolic density integration") {
    // Round annulus r < |z| < R carries the density
    // (pi / log(R/r)) / (|z| sin(pi log(|z|/r) / log(R/r))); integrating it
    // along the core circle |z| = sqrt(rR) recovers the geodesic length.
    auto integrate = [](double r, double R) {
        double mod = std::log(R / r);
        double rho = std::sqrt(r * R);
        int n = 200000;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            double density = (std::numbers::pi / mod) /
                             (rho * std::sin(std::numbers::pi *
                                             std::log(rho / r) / mod));
            sum += density * (2.0 * std::numbers::pi * rho / n);
        }
        return sum;
    };
    for (auto [r, R] : {std::pair{1.0, 20.0}, {0.3, 2.0}, {1e-3, 1.0}}) {
        CHECK(annulus_core_length(r, R) ==
              doctest::Approx(integrate(r, R)).epsilon(1e-9));
    }
}

TEST_CASE("wolpert threshold") {
    CHECK(wolpert_threshold(1.0, 3.0) == 3.0);
    CHECK(wolpert_threshold(4.0, 2.0) == doctest::Approx(0.5));
    double prev = 1e9;
    for (double k = 1.0; k <= 20.0; k += 0.5) {
        double t = wolpert_threshold(k, 1.0);
        CHECK(t < prev);
        prev = t;
    }
    CHECK_THROWS(wolpert_threshold(0.5, 1.0));
}

TEST_CASE("default systole is the central-gap annulus length") {
    CHECK(default_systole() ==
          doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi /
                          std::log(3.0)));
}

TEST_CASE("no witness for bounded sequences") {
    auto third = GapSequence::constant(1.0 / 3);
    for (double k : {1.0, 2.0, 5.0, 10.0})
        CHECK_FALSE(find_obstruction(third, k, 1.0, 200).has_value());
    // Upper-bounded random sequences: none up to K = 100, horizon 1000.
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto seq = GapSequence::seeded_uniform(0.2, 0.8, s);
        CHECK_FALSE(find_obstruction(seq, 100.0, 1.0, 1000).has_value());
    }
}

TEST_CASE("witness for the approach-one sequence") {
    auto seq = GapSequence::approach_one(2.0);
    auto w = find_obstruction(seq, 2.0, 1.0, 60);
    REQUIRE(w.has_value());
    CHECK(w->core_length < 0.5);
    CHECK(w->core_length < w->threshold);
    CHECK(w->log_r < w->log_R);
    // Minimality: the closed-form lengths at every earlier level stay at
    // or above the threshold.
    for (int n = 1; n < w->level; ++n) {
        double eps = seq.one_minus(n);
        double l = annulus_core_length(eps / 4.0, (2.0 - eps) / 4.0);
        CHECK(l >= w->threshold);
    }
    // The witness length matches the scale-free closed form
    // 2 pi^2 / log((2 - eps)/eps).
    double eps = w->eps;
    CHECK(w->core_length ==
          doctest::Approx(2.0 * std::numbers::pi * std::numbers::pi /
                          std::log((2.0 - eps) / eps))
              .epsilon(1e-12));
}

TEST_CASE("witness level is nondecreasing in K") {
    // Obstructing a K-qc map needs core length below threshold/K, and the
    // core lengths here shrink with the level, so larger K pushes the first
    // witness deeper.
    auto seq = GapSequence::approach_one(2.0);
    int prev_level = 0;
    for (double k = 1.0; k <= 8.0; k += 0.5) {
        auto w = find_obstruction(seq, k, 1.0, 400);
        REQUIRE(w.has_value());
        CHECK(w->level >= prev_level);
        prev_level = w->level;
    }
    // A horizon short of the needed level reports no witness.
    CHECK_FALSE(find_obstruction(seq, 8.0, 1.0, 60).has_value());
}
