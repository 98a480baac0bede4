#ifndef CANTORQC_OBSTRUCTION_HPP
#define CANTORQC_OBSTRUCTION_HPP

#include "cantorqc/gap_sequence.hpp"

#include <optional>

namespace cantorqc {

/// Hyperbolic length 2 pi^2 / log(R/r) of the core geodesic of the round
/// annulus r < |z| < R. Throws std::invalid_argument unless 0 < r < R.
/// Accepts log radii directly via the _log variant for deep levels.
double annulus_core_length(double r, double R);
double annulus_core_length_log(double log_r, double log_R);

/// d / K: the shortest length any closed curve can reach on the image of a
/// surface with systole d under a K-quasiconformal map (Wolpert).
double wolpert_threshold(double k_qc, double d);

/// Systole lower bound for the reference middle-thirds complement: the
/// core length of the largest round annulus around the central gap,
/// r = |J|/2 = 1/6 and R = 1/2, giving 2 pi^2 / log 3.
double default_systole();

struct ObstructionWitness {
    int level = 0;      // the n with a short annulus around I_n^1
    double eps = 0.0;   // 1 - q_n
    double log_r = 0.0; // log(eps/4) + log|I_{n-1}^1|
    double log_R = 0.0; // log((2-eps)/4) + log|I_{n-1}^1|
    double core_length = 0.0;
    double threshold = 0.0; // d / K
};

/// Scans n <= horizon for an annulus around I_n^1 whose core geodesic is
/// shorter than d/K; radii are (eps/4)|I_{n-1}^1| and ((2-eps)/4)|I_{n-1}^1|
/// with eps = 1 - q_n, worked in log space.
std::optional<ObstructionWitness> find_obstruction(const GapSequence& omega,
                                                   double k_qc, double d,
                                                   int horizon);

} // namespace cantorqc

#endif
