#ifndef CANTORQC_JULIA_HPP
#define CANTORQC_JULIA_HPP

#include <complex>
#include <cstdint>
#include <vector>

namespace cantorqc {

using Cpx = std::complex<double>;

/// Forward-invariant escape radius for f_c(z) = z^2 + c: max(2,|c|) + 1.
double escape_radius(Cpx c);

enum class JuliaVerdict { CantorHyperbolic, ConnectedOrUndecided };

struct QuadraticVerdict {
    Cpx c;
    JuliaVerdict verdict = JuliaVerdict::ConnectedOrUndecided;
    int escape_iteration = -1; // first n with |f^n(0)| > radius, -1 if none
    double radius = 0.0;
};

/// Escape test on the critical orbit of 0.
QuadraticVerdict classify_quadratic(Cpx c, int max_iter, double radius);

struct HyperbolicityCertificate {
    bool applicable = false; // classify_quadratic gave cantor-hyperbolic
    bool pass = false;       // min |(f^m)'| > 1 over the samples
    int m = 0;
    double min_derivative = 0.0;
    int samples = 0;
};

/// Samples Julia points by seeded inverse iteration (random branch of the
/// two square-root preimages, depth >= 30) and evaluates |(f^m)'| by the
/// chain rule along the forward orbit.
HyperbolicityCertificate hyperbolicity_certificate(Cpx c, int m, int samples,
                                                   std::uint64_t seed);

struct CensusLevel {
    int k = 0;
    int sublevel_components = 0; // components of {|f^k| <= R0}
    int shell_components = 0;    // components of {|f^k| <= R0 < |f^{k+1}|}
    std::vector<int> boundary_curves; // per shell component, 1 + holes
    bool stable = false; // counts unchanged under grid doubling
};

struct ExhaustionCensus {
    Cpx c;
    double r0 = 0.0;
    int base_grid = 0;
    std::vector<CensusLevel> levels; // k = 0..k_max
};

/// Rasterizes the sublevel sets S_k = {|f_c^k| <= R0} with per-component
/// zoom rasters (each component of S_k is re-rasterized inside its own
/// bounding box, so deep levels keep full resolution), flood-fills with
/// 4-connectivity, and counts shell boundary curves as 1 + holes with
/// 8-connected complements. Every level is recomputed at twice the grid
/// and marked stable only when all of its counts agree.
ExhaustionCensus fatou_exhaustion_census(Cpx c, int k_max, int grid,
                                         double r0);

struct MatchingPlan {
    int n0 = 0; // largest with 2^n0 + 1 <= l
    int l0 = 0; // l - 2^n0 - 1
    std::vector<int> l1;          // per j, largest with 2^l1 <= L(j)
    std::vector<int> partial_row; // per j, L(j) - 2^l1(j)
};

/// The combinatorial schedule of the exhaustion matching; throws
/// std::invalid_argument for l < 3 or any L(j) < 2.
MatchingPlan plan_matching(int l, const std::vector<int>& big_l);

} // namespace cantorqc

#endif
