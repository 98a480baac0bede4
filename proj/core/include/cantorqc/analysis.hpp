#ifndef CANTORQC_ANALYSIS_HPP
#define CANTORQC_ANALYSIS_HPP

#include "cantorqc/cantor_levels.hpp"
#include "cantorqc/gap_sequence.hpp"

#include <string>
#include <vector>

namespace cantorqc {

enum class CapacityVerdict { ZeroCapacity, PositiveCapacity, Undecided };

/// The product criterion: E(omega) has capacity zero iff
/// prod (1-q_n)^(2^-n) = 0, i.e. iff S = sum 2^-n log(1-q_n) diverges.
struct CapacityReport {
    std::vector<double> partial_sums; // S_1..S_N
    CapacityVerdict verdict = CapacityVerdict::Undecided;
    std::string certificate; // names the closed-form tail argument used
};

/// Verdicts require a generator-level certificate; partial sums alone
/// never decide.
CapacityReport capacity_classify(const GapSequence& seq, int n_terms);

struct DimensionEstimate {
    std::vector<double> log_inv_scale; // -log eps_k over the fitted range
    std::vector<double> log_count;     // log N(eps_k)
    double slope = 0.0;
    double band = 0.0; // least-squares confidence half-width
    bool degenerate = false;
};

/// Box-counting estimate at the construction's natural scales
/// eps_k = |I_k^1| with N(eps_k) = 2^k, fitted over the deepest half of
/// the levels. Needs depth >= 6.
DimensionEstimate box_dimension(const CantorLevels& levels);

/// Astala's distortion bound 2 K dim / (2 + (K-1) dim).
double astala_bound(double k_qc, double dim);

enum class EqualityVerdict { Equal, Distinct, Inapplicable };

struct DimensionEqualityReport {
    EqualityVerdict verdict = EqualityVerdict::Inapplicable;
    double dim_a = 0.0, dim_b = 0.0;
    double tolerance = 0.0;
    std::vector<double> eps_tested;
    bool astala_sandwich_ok = false;
};

/// Checks the dimension-equality claim for an asymptotically conformal
/// pair: both box dimensions agree within the combined bands, and each is
/// below the Astala bound of the other at K = 1 + eps for the swept eps.
DimensionEqualityReport dimension_equality_check(const GapSequence& omega,
                                                 const GapSequence& omega_t,
                                                 int depth);

} // namespace cantorqc

#endif
