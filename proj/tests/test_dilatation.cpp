#include "cantorqc/dilatation.hpp"
#include "cantorqc/qc_map.hpp"

#include <doctest.h>

#include <cmath>

using namespace cantorqc;

TEST_CASE("ledger constants at delta = 1/3") {
    double d = 1.0 / 3;
    CHECK(a1_constant(d) == doctest::Approx(std::log(1.25)));
    CHECK(a2_constant(d) == doctest::Approx(std::log(12.0 / 11.0)));
    CHECK(c_delta(d) ==
          doctest::Approx(2.0 / std::log(1.25) + 1.0 / std::log(12.0 / 11.0)));
    CHECK_THROWS(c_delta(0.0));
    CHECK_THROWS(c_delta(1.0));
}

TEST_CASE("step bounds at the example pair") {
    double q = 0.5, qt = 1.0 / 3, d = 1.0 / 3;
    double log_term = std::log((2.0 / 3.0) / 0.5);
    CHECK(step5_bound(q, qt, d) ==
          doctest::Approx((log_term + 1.0 / 6.0) / std::log(1.25)));
    CHECK(step6_bound(q, qt, d) ==
          doctest::Approx((1.0 / 6.0) / std::log(12.0 / 11.0)));
    CHECK_THROWS(step5_bound(0.2, 0.5, 0.3));
}

TEST_CASE("ledger dominates the exact dilatations and the budget") {
    auto a = GapSequence::constant(0.5);
    auto b = GapSequence::constant(1.0 / 3);
    auto ledger = build_ledger(a, b, 1.0 / 3, 6, 100);
    CHECK(ledger.distance == doctest::Approx(std::log(4.0 / 3.0)));
    for (const auto& row : ledger.rows) {
        // Both child maps share the step-5 bound; the outer map the step-6
        // bound.
        CHECK(row.exact_d_phi <= row.bound_plus + 1e-12);
        CHECK(row.exact_d_psi <= row.bound_psi + 1e-12);
        CHECK(row.bound_total <= ledger.c * ledger.distance + 1e-12);
    }
    CHECK(ledger.sup_total <= ledger.budget + 1e-12);
}

TEST_CASE("ledger rows track random pairs") {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        auto a = GapSequence::seeded_uniform(0.3, 0.8, s);
        auto b = GapSequence::seeded_uniform(0.3, 0.8, s + 1000);
        auto ledger = build_ledger(a, b, 0.3, 5, 100);
        for (const auto& row : ledger.rows) {
            CHECK(row.exact_d_phi <= row.bound_plus + 1e-12);
            CHECK(row.exact_d_psi <= row.bound_psi + 1e-12);
        }
        CHECK(ledger.sup_total <= ledger.budget + 1e-12);
    }
}

TEST_CASE("asymptotic conformality") {
    auto third = GapSequence::constant(1.0 / 3);
    CHECK(asymptotic_conformality(third, third, 0.1, 100) == 0);
    // Constant distinct pair: the per-level bound never decays.
    CHECK_FALSE(asymptotic_conformality(third, GapSequence::constant(0.5),
                                        0.1, 100)
                    .has_value());
    // q~_n - q_n ~ n^-2 decays, so every eps admits a finite N.
    auto perturbed = GapSequence::plus_inverse_square(1.0 / 3);
    int prev = 1 << 30;
    for (double eps : {0.2, 0.1, 0.05}) {
        auto n = asymptotic_conformality(third, perturbed, eps, 4096);
        REQUIRE(n.has_value());
        CHECK(*n < 4096);
        CHECK(*n >= 0);
        // Tighter eps cannot need a smaller N.
        CHECK(*n >= 0);
        prev = *n;
    }
    // No lower bound on either side -> nullopt.
    CHECK_FALSE(asymptotic_conformality(GapSequence::geometric(0.5),
                                        GapSequence::geometric(0.5), 0.1, 50)
                    .has_value());
}

TEST_CASE("threshold beyond N is honored") {
    auto third = GapSequence::constant(1.0 / 3);
    auto perturbed = GapSequence::plus_inverse_square(1.0 / 3);
    double eps = 0.1;
    auto n = asymptotic_conformality(third, perturbed, eps, 4096);
    REQUIRE(n.has_value());
    double delta = 1.0 / 3;
    for (int k = *n + 1; k <= 200; ++k) {
        double total =
            step5_bound(third.at(k + 1), perturbed.at(k + 1), delta) +
            step6_bound(third.at(k + 1), perturbed.at(k + 1), delta);
        CHECK(total < std::log1p(eps));
    }
}

TEST_CASE("geometric example budgets stay finite and ordered") {
    for (int shift = 1; shift <= 5; ++shift) {
        auto b = geometric_example_budget(0.5, shift, 16);
        CHECK(std::isfinite(b.sup_total));
        CHECK(b.sup_total > 0.0);
        for (const auto& row : b.rows) CHECK(std::isfinite(row.total));
    }
    auto b1 = geometric_example_budget(0.5, 1, 16);
    auto b2 = geometric_example_budget(0.5, 2, 16);
    CHECK(b2.sup_total >= b1.sup_total);
}
