#ifndef CANTORQC_DILATATION_HPP
#define CANTORQC_DILATATION_HPP

#include "cantorqc/gap_sequence.hpp"

#include <optional>
#include <vector>

namespace cantorqc {

/// A1(delta) = log((1+delta^2)/(1-delta^2)): the denominator constant of
/// the child-annulus estimate.
double a1_constant(double delta);
/// A2(delta) = log((1+delta)/(1+delta(1-delta))): the outer-annulus
/// estimate's constant.
double a2_constant(double delta);

/// Analytic bound for the child-circle maps at one level:
/// A1^-1 (|log((1-q~)/(1-q))| + |q - q~|).
double step5_bound(double q, double q_t, double delta);
/// Analytic bound for the outer-circle map: A2^-1 |q - q~|.
double step6_bound(double q, double q_t, double delta);

/// C(delta) = 2/A1 + 1/A2, the smallest constant the chain of estimates
/// certifies. Diverges as delta -> 0; throws for delta outside (0,1).
double c_delta(double delta);

struct LedgerRow {
    int level = 0;
    double q = 0.0, q_t = 0.0;
    double bound_plus = 0.0;  // step-5 bound, covers phi_{k,+} and phi_{k,-}
    double bound_psi = 0.0;   // step-6 bound
    double bound_total = 0.0; // their sum
    double exact_d_phi = 0.0; // modulus-lemma dilatation of the built maps
    double exact_d_psi = 0.0;
};

struct DilatationLedger {
    double delta = 0.0;
    double a1 = 0.0, a2 = 0.0, c = 0.0;
    double distance = 0.0; // d(omega, omega~) over the horizon used
    double budget = 0.0;   // C(delta) * distance
    std::vector<LedgerRow> rows;
    double sup_total = 0.0;
};

/// Per-level analytic bounds and exact sub-map dilatations for levels
/// 0..k_max-1. The step-5 summands are individually clamped by the
/// distance before summation, mirroring the budget derivation.
DilatationLedger build_ledger(const GapSequence& omega,
                              const GapSequence& omega_t, double delta,
                              int k_max, int distance_horizon);

/// Least N <= horizon such that the per-level total bound stays below
/// log(1+eps) for every level index k in (N, horizon]; nullopt when no
/// such N exists within the horizon.
std::optional<int> asymptotic_conformality(const GapSequence& omega,
                                           const GapSequence& omega_t,
                                           double eps, int horizon);

struct GeometricBudgetRow {
    int level = 0;
    double d_phi = 0.0;
    double d_psi = 0.0;
    double total = 0.0;
};

struct GeometricBudget {
    double a = 0.0;
    int shift = 0;
    std::vector<GeometricBudgetRow> rows;
    double sup_total = 0.0;
};

/// The a^n vs a^(n+L) example: exact per-level sub-map dilatations with
/// the geometric-mode radii, and their sup over k <= k_max.
GeometricBudget geometric_example_budget(double a, int shift, int k_max);

} // namespace cantorqc

#endif
