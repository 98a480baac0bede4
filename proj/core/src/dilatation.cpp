#include "cantorqc/dilatation.hpp"

#include "cantorqc/qc_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cantorqc {

namespace {

void require_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("delta must lie in (0,1)");
}

void require_pair(double q, double q_t, double delta) {
    require_delta(delta);
    if (!(q > 0.0 && q < 1.0 && q_t > 0.0 && q_t < 1.0))
        throw std::invalid_argument("gap fractions must lie in (0,1)");
    if (q < delta || q_t < delta)
        throw std::invalid_argument("delta exceeds a gap fraction");
}

} // namespace

double a1_constant(double delta) {
    require_delta(delta);
    return std::log((1.0 + delta * delta) / (1.0 - delta * delta));
}

double a2_constant(double delta) {
    require_delta(delta);
    return std::log((1.0 + delta) / (1.0 + delta * (1.0 - delta)));
}

double step5_bound(double q, double q_t, double delta) {
    require_pair(q, q_t, delta);
    double log_term = std::fabs(std::log((1.0 - q_t) / (1.0 - q)));
    return (log_term + std::fabs(q - q_t)) / a1_constant(delta);
}

double step6_bound(double q, double q_t, double delta) {
    require_pair(q, q_t, delta);
    return std::fabs(q - q_t) / a2_constant(delta);
}

double c_delta(double delta) {
    require_delta(delta);
    return 2.0 / a1_constant(delta) + 1.0 / a2_constant(delta);
}

DilatationLedger build_ledger(const GapSequence& omega,
                              const GapSequence& omega_t, double delta,
                              int k_max, int distance_horizon) {
    require_delta(delta);
    DilatationLedger ledger;
    ledger.delta = delta;
    ledger.a1 = a1_constant(delta);
    ledger.a2 = a2_constant(delta);
    ledger.c = c_delta(delta);
    ledger.distance =
        sequence_distance(omega, omega_t, distance_horizon).value;
    ledger.budget = ledger.c * ledger.distance;
    ledger.rows.reserve(k_max);
    for (int k = 0; k < k_max; ++k) {
        LedgerRow row;
        row.level = k;
        row.q = omega.at(k + 1);
        row.q_t = omega_t.at(k + 1);
        double log_term =
            std::fabs(omega_t.log_one_minus(k + 1) - omega.log_one_minus(k + 1));
        double abs_term = std::fabs(row.q - row.q_t);
        // Clamp each summand by the distance before summation; the budget
        // derivation bounds the summands separately.
        row.bound_plus = (std::min(log_term, ledger.distance) +
                          std::min(abs_term, ledger.distance)) /
                         ledger.a1;
        row.bound_psi = std::min(abs_term, ledger.distance) / ledger.a2;
        row.bound_total = row.bound_plus + row.bound_psi;

        LevelMap m = build_pants_map(omega, omega_t, delta, k);
        row.exact_d_phi = m.d_phi();
        row.exact_d_psi = m.d_psi();

        ledger.sup_total = std::max(ledger.sup_total, row.bound_total);
        ledger.rows.push_back(row);
    }
    return ledger;
}

std::optional<int> asymptotic_conformality(const GapSequence& omega,
                                           const GapSequence& omega_t,
                                           double eps, int horizon) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    double threshold = std::log1p(eps);

    auto la = omega.lower_bound();
    auto lb = omega_t.lower_bound();
    if (!la || !lb) return std::nullopt;
    double delta = std::min(*la, *lb);

    // Scan from the far end: N is the last level whose total is not below
    // the threshold.
    int last_bad = 0;
    for (int k = 1; k <= horizon; ++k) {
        double total = step5_bound(omega.at(k + 1), omega_t.at(k + 1), delta) +
                       step6_bound(omega.at(k + 1), omega_t.at(k + 1), delta);
        if (total >= threshold) last_bad = k;
    }
    if (last_bad == horizon) return std::nullopt;
    return last_bad;
}

GeometricBudget geometric_example_budget(double a, int shift, int k_max) {
    if (!(a > 0.0 && a < 1.0)) throw std::invalid_argument("a must be in (0,1)");
    if (shift < 0) throw std::invalid_argument("shift must be >= 0");
    GeometricBudget out;
    out.a = a;
    out.shift = shift;
    out.rows.reserve(k_max);
    for (int k = 0; k < k_max; ++k) {
        LevelMap m = LevelMap::build(normalize_pants_geometric(a, 0, k),
                                     normalize_pants_geometric(a, shift, k));
        GeometricBudgetRow row;
        row.level = k;
        row.d_phi = m.d_phi();
        row.d_psi = m.d_psi();
        row.total = row.d_phi + row.d_psi;
        out.sup_total = std::max(out.sup_total, row.total);
        out.rows.push_back(row);
    }
    return out;
}

} // namespace cantorqc
